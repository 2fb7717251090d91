use num_traits::One;

use super::{invariant_factors, AbInvariants, FpMatrix, IntMatrix, Ring};
use crate::error::{Error, Result};

/// Cochain complex of free modules `C^0 → C^1 → ⋯ → C^N` over a ring.
///
/// Only degrees `0..N` carry trustworthy cohomology: the kernel of the
/// missing `d_N` is unknown, so `trusted_degree() = N − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    ring: Ring,
    ranks: Vec<usize>,
    diffs: Vec<IntMatrix>,
}

impl CochainComplex {
    /// `diffs[n]` is `d_n: C^n → C^{n+1}` with shape `ranks[n+1] × ranks[n]`;
    /// there must be exactly `ranks.len() − 1` of them.
    pub fn new(ring: Ring, ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self> {
        if ranks.is_empty() || diffs.len() + 1 != ranks.len() {
            return Err(Error::Dimension(format!("{} ranks but {} differentials", ranks.len(), diffs.len())));
        }
        for (n, d) in diffs.iter().enumerate() {
            if d.shape() != (ranks[n + 1], ranks[n]) {
                return Err(Error::Dimension(format!(
                    "d_{n} has shape {:?}, expected {:?}",
                    d.shape(),
                    (ranks[n + 1], ranks[n])
                )));
            }
        }
        Ok(CochainComplex { ring, ranks, diffs })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn max_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn trusted_degree(&self) -> isize {
        self.max_degree() as isize - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differential(&self, n: usize) -> &IntMatrix {
        &self.diffs[n]
    }

    pub fn differentials(&self) -> &[IntMatrix] {
        &self.diffs
    }

    /// Degrees `n` at which `d_{n+1} d_n ≠ 0` over the ring.
    pub fn d_squared_failures(&self) -> Vec<usize> {
        (0..self.diffs.len().saturating_sub(1))
            .filter(|&n| !(&self.diffs[n + 1] * &self.diffs[n]).is_zero_over(self.ring))
            .collect()
    }

    pub fn is_complex(&self) -> bool {
        self.d_squared_failures().is_empty()
    }

    /// Same differentials read over another ring (`cx ⊗ 𝔽_p` from a complex over ℤ).
    pub fn over(&self, ring: Ring) -> CochainComplex {
        CochainComplex { ring, ranks: self.ranks.clone(), diffs: self.diffs.iter().map(|d| d.reduced(ring)).collect() }
    }

    /// `H^n`; errors past the trusted degree.
    pub fn cohomology_at(&self, n: usize) -> Result<AbInvariants> {
        if n as isize > self.trusted_degree() {
            return Err(Error::DegreeBeyondTrusted { degree: n, trusted: self.trusted_degree() });
        }
        let out = DiffData::of(&self.diffs[n], self.ring);
        let inc = if n == 0 { DiffData::zero() } else { DiffData::of(&self.diffs[n - 1], self.ring) };
        Ok(assemble(self.ranks[n], &out, &inc))
    }

    /// `H^n` for every trusted degree.
    pub fn cohomology(&self) -> Vec<AbInvariants> {
        let data: Vec<DiffData> = self.diffs.iter().map(|d| DiffData::of(d, self.ring)).collect();
        (0..self.diffs.len())
            .map(|n| {
                let zero = DiffData::zero();
                let inc = if n == 0 { &zero } else { &data[n - 1] };
                assemble(self.ranks[n], &data[n], inc)
            })
            .collect()
    }
}

struct DiffData {
    rank: usize,
    torsion: Vec<num_bigint::BigInt>,
}

impl DiffData {
    fn zero() -> Self {
        DiffData { rank: 0, torsion: Vec::new() }
    }

    fn of(d: &IntMatrix, ring: Ring) -> Self {
        match ring {
            Ring::Prime(p) => DiffData { rank: d.to_fp(p).rank(), torsion: Vec::new() },
            Ring::Integers => {
                let f = invariant_factors(d);
                DiffData { rank: f.len(), torsion: f.into_iter().filter(|x| !x.is_one()).collect() }
            }
        }
    }
}

fn assemble(dim: usize, out: &DiffData, inc: &DiffData) -> AbInvariants {
    AbInvariants { free_rank: dim - out.rank - inc.rank, torsion: inc.torsion.clone() }
}

/// Degreewise components `f_n: A^n → B^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainMap {
    pub components: Vec<IntMatrix>,
}

impl CochainMap {
    /// Checks shapes and `f_{n+1} d_A = d_B f_n` for every stored degree.
    pub fn check(&self, src: &CochainComplex, tgt: &CochainComplex) -> Result<()> {
        let ring = src.ring();
        let top = src.max_degree().min(tgt.max_degree());
        if self.components.len() < top + 1 {
            return Err(Error::NotAChainMap(format!("{} components for degrees 0..={top}", self.components.len())));
        }
        for n in 0..=top {
            if self.components[n].shape() != (tgt.rank(n), src.rank(n)) {
                return Err(Error::NotAChainMap(format!("component {n} has the wrong shape")));
            }
        }
        for n in 0..top {
            let lhs = &self.components[n + 1] * src.differential(n);
            let rhs = tgt.differential(n) * &self.components[n];
            if !lhs.eq_over(&rhs, ring) {
                return Err(Error::NotAChainMap(format!("does not commute with differentials in degree {n}")));
            }
        }
        Ok(())
    }
}

/// Acyclicity of the mapping cone, per degree `n` of the cone (starting
/// at `−1`, which detects injectivity of `H^0(f)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeReport {
    pub degrees: Vec<(isize, bool)>,
}

impl ConeReport {
    pub fn all_acyclic(&self) -> bool {
        self.degrees.iter().all(|d| d.1)
    }

    /// Largest cone degree that was checked.
    pub fn trusted_degree(&self) -> isize {
        self.degrees.last().map_or(-2, |d| d.0)
    }
}

/// Cone of `f: A → B` with `cone^n = A^{n+1} ⊕ B^n` and
/// `d(a, b) = (−d a, f a + d b)`, reported in its trusted degrees.
pub fn cone_acyclic(src: &CochainComplex, tgt: &CochainComplex, f: &CochainMap) -> Result<ConeReport> {
    f.check(src, tgt)?;
    let ring = src.ring();
    let top = src.max_degree().min(tgt.max_degree());
    // shifted degree m = n + 1: C^m = A^m ⊕ B^{m−1}
    let b_rank = |m: usize| if m == 0 { 0 } else { tgt.rank(m - 1) };
    let ranks: Vec<usize> = (0..=top).map(|m| src.rank(m) + b_rank(m)).collect();
    let mut diffs = Vec::with_capacity(top);
    for m in 0..top {
        let (a0, b0) = (src.rank(m), b_rank(m));
        let (a1, b1) = (src.rank(m + 1), b_rank(m + 1));
        let mut d = IntMatrix::zeros(a1 + b1, a0 + b0);
        d.add_block(0, 0, src.differential(m), -1);
        d.add_block(a1, 0, &f.components[m], 1);
        if m > 0 {
            d.add_block(a1, a0, tgt.differential(m - 1), 1);
        }
        diffs.push(d);
    }
    let cone = CochainComplex::new(ring, ranks, diffs)?;
    let degrees = cone
        .cohomology()
        .into_iter()
        .enumerate()
        .map(|(m, h)| (m as isize - 1, h.is_zero()))
        .collect();
    Ok(ConeReport { degrees })
}

/// Cocycle representatives of `H^n` over a field together with a way to
/// read off coordinates of any cocycle.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    p: u64,
    /// Columns: coboundary basis followed by class representatives.
    frame: FpMatrix,
    n_boundaries: usize,
}

impl CohomologyBasis {
    pub fn new(cx: &CochainComplex, n: usize) -> Result<Self> {
        let Ring::Prime(p) = cx.ring() else {
            return Err(Error::NotAField(cx.ring()));
        };
        if n as isize > cx.trusted_degree() {
            return Err(Error::DegreeBeyondTrusted { degree: n, trusted: cx.trusted_degree() });
        }
        let cycles = cx.differential(n).to_fp(p).kernel();
        let boundaries = if n == 0 {
            FpMatrix::zeros(p, cx.rank(0), 0)
        } else {
            cx.differential(n - 1).to_fp(p).column_basis()
        };
        // greedy extension of the coboundary basis by cycle columns
        let both = boundaries.hstack(&cycles);
        let pivots = both.clone().rref_in_place();
        debug_assert!(pivots[..boundaries.cols()].iter().enumerate().all(|(i, &c)| i == c));
        let frame = both.select_cols(&pivots);
        Ok(CohomologyBasis { p, frame, n_boundaries: boundaries.cols() })
    }

    pub fn dim(&self) -> usize {
        self.frame.cols() - self.n_boundaries
    }

    /// Representatives as columns.
    pub fn representatives(&self) -> FpMatrix {
        let cols: Vec<usize> = (self.n_boundaries..self.frame.cols()).collect();
        self.frame.select_cols(&cols)
    }

    /// Class coordinates of the cocycle columns of `z`; `None` if some
    /// column is not a cocycle.
    pub fn coordinates(&self, z: &FpMatrix) -> Option<FpMatrix> {
        let x = self.frame.solve(z)?;
        let rows: Vec<usize> = (self.n_boundaries..self.frame.cols()).collect();
        Some(x.select_rows(&rows))
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn times_two() -> CochainComplex {
        // 0 → ℤ --2--> ℤ → 0, stored with a zero d_1 so H^1 is trusted
        CochainComplex::new(
            Ring::Integers,
            vec![1, 1, 0],
            vec![IntMatrix::from_rows(&[vec![2]]), IntMatrix::zeros(0, 1)],
        )
        .unwrap()
    }

    #[test]
    fn multiplication_by_two() {
        let cx = times_two();
        assert_eq!(cx.cohomology_at(0).unwrap(), AbInvariants::zero());
        assert_eq!(cx.cohomology_at(1).unwrap(), AbInvariants::cyclic(2));
        let f2 = cx.over(Ring::Prime(2));
        assert_eq!(f2.cohomology(), vec![AbInvariants::free(1), AbInvariants::free(1)]);
    }

    #[test]
    fn zero_differential() {
        let cx = CochainComplex::new(
            Ring::Integers,
            vec![1, 1, 0],
            vec![IntMatrix::zeros(1, 1), IntMatrix::zeros(0, 1)],
        )
        .unwrap();
        assert_eq!(cx.cohomology(), vec![AbInvariants::free(1), AbInvariants::free(1)]);
    }

    #[test]
    fn truncation_fringe() {
        let cx = times_two();
        assert!(matches!(cx.cohomology_at(2), Err(Error::DegreeBeyondTrusted { .. })));
    }

    #[test]
    fn identity_cone_is_acyclic() {
        let cx = times_two();
        let id = CochainMap { components: vec![IntMatrix::identity(1), IntMatrix::identity(1), IntMatrix::zeros(0, 0)] };
        assert!(cone_acyclic(&cx, &cx, &id).unwrap().all_acyclic());
    }

    #[test]
    fn zero_map_cone_is_not_acyclic() {
        let z = CochainComplex::new(Ring::Integers, vec![1, 0], vec![IntMatrix::zeros(0, 1)]).unwrap();
        let f = CochainMap { components: vec![IntMatrix::zeros(1, 1), IntMatrix::zeros(0, 0)] };
        let report = cone_acyclic(&z, &z, &f).unwrap();
        assert!(!report.all_acyclic());
    }

    #[test]
    fn non_chain_map_is_rejected() {
        let cx = times_two();
        let f = CochainMap { components: vec![IntMatrix::identity(1), IntMatrix::zeros(1, 1), IntMatrix::zeros(0, 0)] };
        assert!(matches!(cone_acyclic(&cx, &cx, &f), Err(Error::NotAChainMap(_))));
    }

    #[test]
    fn cohomology_basis_coordinates() {
        // ℤ/3: 0 → F3 --0--> F3² --[1 1]--> F3 → 0
        let cx = CochainComplex::new(
            Ring::Prime(3),
            vec![1, 2, 1],
            vec![IntMatrix::zeros(2, 1), IntMatrix::from_rows(&[vec![1, 1]])],
        )
        .unwrap();
        let b = CohomologyBasis::new(&cx, 1).unwrap();
        assert_eq!(b.dim(), 1);
        let z = IntMatrix::from_bigints(2, 1, vec![BigInt::from(2), BigInt::from(1)]).to_fp(3);
        let c = b.coordinates(&z).unwrap();
        assert_eq!(c.rows(), 1);
        assert_ne!(c.get(0, 0), 0);
        let not_cycle = IntMatrix::from_rows(&[vec![1], vec![0]]).to_fp(3);
        assert!(b.coordinates(&not_cycle).is_none());
    }
}
