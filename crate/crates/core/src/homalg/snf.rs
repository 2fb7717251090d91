use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `U · M · V = S` with `U`, `V` unimodular and `S` diagonal,
/// `S_ii | S_{i+1,i+1}`, all diagonal entries non-negative.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Non-zero diagonal entries of `S`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.get(i, i).clone())
            .filter(|d| !d.is_zero())
            .collect()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    // stored transposed so column operations become row operations
    vt: Option<Vec<Vec<BigInt>>>,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn axpy(dst: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

impl Work {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(vt) = &mut self.vt {
            vt.swap(i, j);
        }
    }

    /// row_i -= q · row_t
    fn sub_row(&mut self, i: usize, t: usize, q: &BigInt) {
        let (lo, hi) = (i.min(t), i.max(t));
        let (head, tail) = self.a.split_at_mut(hi);
        let (dst, src) = if i < t { (&mut head[lo], &tail[0]) } else { (&mut tail[0], &head[lo]) };
        axpy(dst, src, q);
        if let Some(u) = &mut self.u {
            let (head, tail) = u.split_at_mut(hi);
            let (dst, src) = if i < t { (&mut head[lo], &tail[0]) } else { (&mut tail[0], &head[lo]) };
            axpy(dst, src, q);
        }
    }

    /// col_j -= q · col_t
    fn sub_col(&mut self, j: usize, t: usize, q: &BigInt) {
        for row in &mut self.a {
            let delta = q * &row[t];
            if !delta.is_zero() {
                row[j] -= delta;
            }
        }
        if let Some(vt) = &mut self.vt {
            let (lo, hi) = (j.min(t), j.max(t));
            let (head, tail) = vt.split_at_mut(hi);
            let (dst, src) = if j < t { (&mut head[lo], &tail[0]) } else { (&mut tail[0], &head[lo]) };
            axpy(dst, src, q);
        }
    }

    fn negate_row(&mut self, t: usize) {
        for x in &mut self.a[t] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[t] {
                *x = -&*x;
            }
        }
    }

    /// Position of a minimal-|·| non-zero entry in the lower-right block.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|b| ax < b.2) {
                    let unit = ax.is_one();
                    best = Some((i, j, ax));
                    if unit {
                        return best.map(|b| (b.0, b.1));
                    }
                }
            }
        }
        best.map(|b| (b.0, b.1))
    }

    fn run(&mut self) {
        let n = self.rows().min(self.cols());
        for t in 0..n {
            loop {
                let Some((pi, pj)) = self.min_pivot(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let pivot = self.a[t][t].clone();
                let mut clean = true;
                for i in t + 1..self.rows() {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&pivot);
                    self.sub_row(i, t, &q);
                    clean &= self.a[i][t].is_zero();
                }
                for j in t + 1..self.cols() {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&pivot);
                    self.sub_col(j, t, &q);
                    clean &= self.a[t][j].is_zero();
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..self.rows())
                    .find(|&i| (t + 1..self.cols()).any(|j| !self.a[i][j].mod_floor(&pivot).is_zero()));
                match offender {
                    Some(i) => self.sub_row(t, i, &BigInt::from(-1)),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

fn from_rows(rows: usize, cols: usize, data: Vec<Vec<BigInt>>) -> IntMatrix {
    IntMatrix::from_bigints(rows, cols, data.into_iter().flatten().collect())
}

/// Smith normal form with minimal-absolute-value pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = m.shape();
    let mut w = Work { a: to_rows(m), u: Some(identity_rows(r)), vt: Some(identity_rows(c)) };
    if r > 0 && c > 0 {
        w.run();
    }
    let s = from_rows(r, c, w.a);
    let u = from_rows(r, r, w.u.unwrap());
    let v = from_rows(c, c, w.vt.unwrap()).transpose();
    SmithForm { u, s, v }
}

/// Non-zero Smith invariants of `m`, without tracking the transforms.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return Vec::new();
    }
    let mut w = Work { a: to_rows(m), u: None, vt: None };
    w.run();
    (0..r.min(c)).map(|i| w.a[i][i].clone()).filter(|d| !d.is_zero()).collect()
}
