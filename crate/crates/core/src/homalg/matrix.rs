use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{FpMatrix, Ring};

/// Dense row-major matrix of arbitrary-precision integers. A matrix with
/// `r` rows and `c` columns represents a map `ℤ^c → ℤ^r` acting on column
/// vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn scalar(n: usize, value: i64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::from(value);
        }
        m
    }

    /// From a row-major slice; panics if the length is not `rows * cols`.
    pub fn from_i64(rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols, "expected {rows}×{cols} entries");
        IntMatrix { rows, cols, data: values.iter().map(|&v| BigInt::from(v)).collect() }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::from_i64(rows.len(), cols, &flat)
    }

    pub fn from_bigints(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols);
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn scaled(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * &k).collect() }
    }

    /// Adds `coeff · block` into the window starting at `(row0, col0)`.
    pub fn add_block(&mut self, row0: usize, col0: usize, block: &IntMatrix, coeff: i64) {
        assert!(row0 + block.rows <= self.rows && col0 + block.cols <= self.cols, "block out of bounds");
        for r in 0..block.rows {
            for c in 0..block.cols {
                let v = block.get(r, c);
                if !v.is_zero() {
                    let dst = &mut self.data[(row0 + r) * self.cols + col0 + c];
                    *dst += v * coeff;
                }
            }
        }
    }

    /// Adds `coeff` times the identity into the square window at `(row0, col0)`.
    pub fn add_identity_block(&mut self, row0: usize, col0: usize, n: usize, coeff: i64) {
        for i in 0..n {
            self.data[(row0 + i) * self.cols + col0 + i] += coeff;
        }
    }

    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.data[r * cols + c] = self.get(row0 + r, col0 + c).clone();
            }
        }
        out
    }

    /// Entries reduced to canonical representatives of `ring`.
    pub fn reduced(&self, ring: Ring) -> Self {
        match ring {
            Ring::Integers => self.clone(),
            Ring::Prime(_) => IntMatrix {
                rows: self.rows,
                cols: self.cols,
                data: self.data.iter().map(|x| ring.normalize(x)).collect(),
            },
        }
    }

    pub fn eq_over(&self, other: &IntMatrix, ring: Ring) -> bool {
        self.shape() == other.shape()
            && self.data.iter().zip(&other.data).all(|(a, b)| ring.is_zero(&(a - b)))
    }

    pub fn is_zero_over(&self, ring: Ring) -> bool {
        self.data.iter().all(|x| ring.is_zero(x))
    }

    pub fn to_fp(&self, p: u64) -> FpMatrix {
        let pb = BigInt::from(p);
        let data = self
            .data
            .iter()
            .map(|x| {
                if x.is_zero() {
                    0
                } else {
                    (((x % &pb) + &pb) % &pb).to_u64().expect("residue fits in u64")
                }
            })
            .collect();
        FpMatrix::from_vec(p, self.rows, self.cols, data)
    }

    /// Row-major entries as `i64`, if they all fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.data.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch {:?} * {:?}", self.shape(), rhs.shape());
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}×{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(&a * &b, IntMatrix::from_rows(&[vec![2, 1], vec![4, 3]]));
        assert_eq!(a.transpose(), IntMatrix::from_rows(&[vec![1, 3], vec![2, 4]]));
    }

    #[test]
    fn empty_shapes_multiply() {
        let a = IntMatrix::zeros(3, 0);
        let b = IntMatrix::zeros(0, 2);
        assert_eq!(&a * &b, IntMatrix::zeros(3, 2));
    }

    #[test]
    fn mod_p_equality() {
        let a = IntMatrix::from_rows(&[vec![2]]);
        assert!(a.eq_over(&IntMatrix::zeros(1, 1), Ring::Prime(2)));
        assert!(!a.eq_over(&IntMatrix::zeros(1, 1), Ring::Integers));
        assert_eq!(IntMatrix::from_rows(&[vec![-1]]).to_fp(3).get(0, 0), 2);
    }
}
