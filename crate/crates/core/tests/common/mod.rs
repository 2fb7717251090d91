//! Oracles shared by the integration tests. Nothing here calls into the
//! library's linear algebra.

#![allow(dead_code)]

use std::collections::HashSet;

use catcoh::homalg::{smith_normal_form, CochainComplex, IntMatrix, Ring};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    assert_eq!(n, m.cols());
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Vectors over 𝔽₂ as bit masks; `cols[j]` is the image of basis vector `j`.
fn apply(cols: &[u32], v: u32) -> u32 {
    cols.iter().enumerate().filter(|(j, _)| v >> j & 1 == 1).fold(0, |acc, (_, &c)| acc ^ c)
}

fn columns_mod2(m: &IntMatrix) -> Vec<u32> {
    (0..m.cols())
        .map(|j| {
            (0..m.rows()).fold(0u32, |acc, i| {
                let odd = (m.get(i, j) % BigInt::from(2)) != BigInt::zero();
                acc | (u32::from(odd) << i)
            })
        })
        .collect()
}

/// `dim H^n` over 𝔽₂ by listing every cochain.
pub fn brute_force_f2_dim(ranks: &[usize], diffs: &[IntMatrix], n: usize) -> usize {
    let kernel = if n < diffs.len() {
        let cols = columns_mod2(&diffs[n]);
        (0..1u32 << ranks[n]).filter(|&v| apply(&cols, v) == 0).count()
    } else {
        1 << ranks[n]
    };
    let image: HashSet<u32> = if n == 0 {
        [0].into_iter().collect()
    } else {
        let cols = columns_mod2(&diffs[n - 1]);
        (0..1u32 << ranks[n - 1]).map(|v| apply(&cols, v)).collect()
    };
    (kernel / image.len()).trailing_zeros() as usize
}

/// Random invertible integer matrix as a product of elementary operations.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let k: i64 = rng.gen_range(-2..=2);
        let mut e = IntMatrix::identity(n);
        e.set(i, j, k.into());
        m = &e * &m;
    }
    m
}

/// Inverse of a matrix from [`random_unimodular`], via its adjugate.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let det = determinant(m);
    let mut inv = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor_rows: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| i64::try_from(m.get(r, c)).unwrap()).collect())
                .collect();
            let minor = if n == 1 { BigInt::one() } else { determinant(&IntMatrix::from_rows(&minor_rows)) };
            let sign = if (i + j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            inv.set(i, j, sign * minor * &det);
        }
    }
    inv
}

/// A random cochain complex with `d² = 0`: a direct sum of pieces
/// `ℤ --c--> ℤ` and single copies of `ℤ`, conjugated degreewise by random
/// unimodular matrices. Returns ranks and differentials.
pub fn random_complex(rng: &mut impl Rng, max_degree: usize, max_total: usize) -> (Vec<usize>, Vec<IntMatrix>) {
    let mut ranks = vec![0usize; max_degree + 1];
    // (degree, coefficient) for pieces ℤ → ℤ starting in that degree
    let mut pieces = Vec::new();
    let mut singles = Vec::new();
    let mut total = 0;
    while total + 2 <= max_total && rng.gen_bool(0.8) {
        if max_degree > 0 && rng.gen_bool(0.6) {
            let d = rng.gen_range(0..max_degree);
            let c: i64 = *[1, 2, 3, 4, -1, 6].get(rng.gen_range(0..6)).unwrap();
            pieces.push((d, c));
            total += 2;
        } else {
            singles.push(rng.gen_range(0..=max_degree));
            total += 1;
        }
    }
    // (piece, end of the piece it spans, coefficient); singles have no piece
    type Slot = (usize, Option<(usize, i64)>);
    let mut basis: Vec<Vec<Slot>> = vec![Vec::new(); max_degree + 1];
    for (p, &(d, c)) in pieces.iter().enumerate() {
        basis[d].push((p, Some((0, c))));
        basis[d + 1].push((p, Some((1, c))));
    }
    for &d in &singles {
        basis[d].push((usize::MAX, None));
    }
    for d in 0..=max_degree {
        ranks[d] = basis[d].len();
    }
    let change: Vec<IntMatrix> = ranks.iter().map(|&r| random_unimodular(rng, r)).collect();
    let diffs = (0..max_degree)
        .map(|d| {
            let mut m = IntMatrix::zeros(ranks[d + 1], ranks[d]);
            for (j, &(p, role)) in basis[d].iter().enumerate() {
                if let Some((0, c)) = role {
                    let i = basis[d + 1].iter().position(|&(q, r)| q == p && matches!(r, Some((1, _)))).unwrap();
                    m.set(i, j, c.into());
                }
            }
            &(&change[d + 1] * &m) * &unimodular_inverse(&change[d])
        })
        .collect();
    (ranks, diffs)
}

pub fn complex(ring: Ring, ranks: &[usize], diffs: &[IntMatrix]) -> CochainComplex {
    CochainComplex::new(ring, ranks.to_vec(), diffs.to_vec()).expect("generated complexes square to zero")
}

/// Prints the acceptance line and returns the verdict.
pub fn verdict(criterion: &str, ok: bool, detail: impl std::fmt::Display) -> bool {
    println!("criterion {criterion}: {} ({detail})", if ok { "pass" } else { "fail" });
    ok
}

/// Checks `U·M·V = S`, unimodularity, diagonal shape, signs, the
/// divisibility chain and, for square input, `∏ S_ii = |det M|`.
pub fn snf_postconditions(m: &IntMatrix) -> Result<(), String> {
    let f = smith_normal_form(m);
    if &(&f.u * m) * &f.v != f.s {
        return Err("U M V != S".into());
    }
    for (name, w) in [("U", &f.u), ("V", &f.v)] {
        if determinant(w).abs() != BigInt::one() {
            return Err(format!("{name} not unimodular"));
        }
    }
    let diag: Vec<BigInt> = (0..m.rows().min(m.cols())).map(|i| f.s.get(i, i).clone()).collect();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if r != c && !f.s.get(r, c).is_zero() {
                return Err("S not diagonal".into());
            }
        }
    }
    if diag.iter().any(|d| d.is_negative()) {
        return Err("negative diagonal".into());
    }
    for w in diag.windows(2) {
        let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
        if !divides {
            return Err(format!("{} does not divide {}", w[0], w[1]));
        }
    }
    if m.is_square() {
        let product = diag.iter().fold(BigInt::one(), |acc, d| acc * d);
        if product != determinant(m).abs() {
            return Err("product of the diagonal differs from |det|".into());
        }
    }
    Ok(())
}

