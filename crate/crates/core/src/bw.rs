//! The Baues-Wirsching cochain complex `F^*(C, D)`.
//!
//! `F^n(C, D)` is the sum over composable strings `c₀ ←α₁ c₁ ← ⋯ ←αₙ cₙ` of
//! `D(α₁∘⋯∘αₙ)`, with degree 0 indexed by objects (`D(id_c)`). Strings are
//! stored in lexicographic order of morphism indices and include identities.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FiniteCategory};
use crate::homalg::{AbInvariants, CochainComplex, CochainMap, IntMatrix, Ring};
use crate::natsys::{build_category_atm, natsys_constant, natsys_lemma44, NatSysMap, NaturalSystem, SetPresheaf};
use crate::report::{CheckReport, Status};

/// Default cap on the total rank `Σ_n rank F^n`.
pub const DEFAULT_BUDGET: usize = 200_000;

/// Composable strings of a category by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveStrings {
    /// `flat[n]` holds the degree-`n` strings back to back (objects for `n = 0`).
    flat: Vec<Vec<usize>>,
    /// Composite of each string; `id_c` in degree 0.
    composites: Vec<Vec<usize>>,
}

impl NerveStrings {
    /// Enumerates strings up to degree `n_max`, stopping once `weight`
    /// summed over composites exceeds `budget`.
    pub fn enumerate(
        cat: &FiniteCategory,
        n_max: usize,
        budget: usize,
        weight: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        let mut flat = vec![(0..cat.n_objects()).collect::<Vec<_>>()];
        let mut composites = vec![(0..cat.n_objects()).map(|x| cat.identity(x)).collect::<Vec<_>>()];
        let mut total: usize = composites[0].iter().map(|&c| weight(c)).sum();
        if total > budget {
            return Err(Error::RankOverflowBudget { needed: total, budget });
        }
        for n in 1..=n_max {
            let mut next = Vec::new();
            let mut next_comp = Vec::new();
            if n == 1 {
                for f in 0..cat.n_morphisms() {
                    next.push(f);
                    next_comp.push(f);
                }
            } else {
                let prev = &flat[n - 1];
                for (i, s) in prev.chunks_exact(n - 1).enumerate() {
                    let last = s[n - 2];
                    for &f in cat.incoming(cat.src(last)) {
                        next.extend_from_slice(s);
                        next.push(f);
                        next_comp.push(cat.comp(composites[n - 1][i], f));
                    }
                }
            }
            total += next_comp.iter().map(|&c| weight(c)).sum::<usize>();
            if total > budget {
                return Err(Error::RankOverflowBudget { needed: total, budget });
            }
            flat.push(next);
            composites.push(next_comp);
        }
        Ok(NerveStrings { flat, composites })
    }

    pub fn max_degree(&self) -> usize {
        self.flat.len() - 1
    }

    pub fn len(&self, n: usize) -> usize {
        self.composites[n].len()
    }

    pub fn is_empty(&self, n: usize) -> bool {
        self.len(n) == 0
    }

    /// The `i`-th string of degree `n`; a one-element slice `[c]` in degree 0.
    pub fn string(&self, n: usize, i: usize) -> &[usize] {
        let w = n.max(1);
        &self.flat[n][i * w..(i + 1) * w]
    }

    pub fn composite(&self, n: usize, i: usize) -> usize {
        self.composites[n][i]
    }

    pub fn iter(&self, n: usize) -> impl Iterator<Item = &[usize]> + '_ {
        self.flat[n].chunks_exact(n.max(1))
    }

    /// Position of a string of degree `n` (an object for `n = 0`).
    pub fn index_of(&self, n: usize, s: &[usize]) -> Option<usize> {
        let w = n.max(1);
        let len = self.len(n);
        let (mut lo, mut hi) = (0, len);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.flat[n][mid * w..(mid + 1) * w].cmp(s) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// `F^*(C, D)` truncated at degree `N`, with the string/block index.
#[derive(Clone, Debug)]
pub struct BWComplex {
    pub complex: CochainComplex,
    pub strings: NerveStrings,
    /// `offsets[n][i]` is where string `i` of degree `n` starts in `F^n`;
    /// one trailing entry holds the total rank.
    pub offsets: Vec<Vec<usize>>,
}

impl BWComplex {
    pub fn block(&self, n: usize, i: usize) -> (usize, usize) {
        (self.offsets[n][i], self.offsets[n][i + 1] - self.offsets[n][i])
    }

    pub fn trusted_degree(&self) -> isize {
        self.complex.trusted_degree()
    }
}

pub fn bw_cochain(sys: &NaturalSystem, n_max: usize) -> Result<BWComplex> {
    bw_cochain_with_budget(sys, n_max, DEFAULT_BUDGET)
}

pub fn bw_cochain_with_budget(sys: &NaturalSystem, n_max: usize, budget: usize) -> Result<BWComplex> {
    if n_max == 0 {
        return Err(Error::Dimension("the truncation degree must be at least 1".into()));
    }
    let cat = sys.base().clone();
    let strings = NerveStrings::enumerate(&cat, n_max, budget, |c| sys.rank(c))?;
    let offsets: Vec<Vec<usize>> = (0..=n_max)
        .map(|n| {
            let mut acc = vec![0];
            for i in 0..strings.len(n) {
                acc.push(acc[i] + sys.rank(strings.composite(n, i)));
            }
            acc
        })
        .collect();
    let ranks: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();
    let mut diffs = Vec::with_capacity(n_max);
    for n in 0..n_max {
        diffs.push(coboundary(&cat, sys, &strings, &offsets, n));
    }
    let complex = CochainComplex::new(sys.ring(), ranks, diffs)?;
    let failures = complex.d_squared_failures();
    if !failures.is_empty() {
        return Err(Error::NotAComplex(format!("d∘d ≠ 0 starting in degrees {failures:?}")));
    }
    Ok(BWComplex { complex, strings, offsets })
}

fn coboundary(
    cat: &FiniteCategory,
    sys: &NaturalSystem,
    strings: &NerveStrings,
    offsets: &[Vec<usize>],
    n: usize,
) -> IntMatrix {
    let rows = *offsets[n + 1].last().unwrap();
    let cols = *offsets[n].last().unwrap();
    let mut d = IntMatrix::zeros(rows, cols);
    let col = |s: &[usize]| -> usize {
        let i = strings.index_of(n, s).expect("face is a string");
        offsets[n][i]
    };
    let mut face = Vec::with_capacity(n + 1);
    for (j, s) in strings.iter(n + 1).enumerate() {
        let row = offsets[n + 1][j];
        if n == 0 {
            let a = s[0];
            let (c, e) = (cat.src(a), cat.tgt(a));
            d.add_block(row, col(&[c]), sys.post(a, cat.identity(c)), 1);
            d.add_block(row, col(&[e]), sys.pre(a, cat.identity(e)), -1);
            continue;
        }
        let head = &s[1..];
        let head_comp = cat.compose_string(head).expect("string is composable");
        d.add_block(row, col(head), sys.post(s[0], head_comp), 1);
        let rank = offsets[n + 1][j + 1] - row;
        for i in 0..n {
            face.clear();
            face.extend_from_slice(&s[..i]);
            face.push(cat.comp(s[i], s[i + 1]));
            face.extend_from_slice(&s[i + 2..]);
            let sign = if i % 2 == 0 { -1 } else { 1 };
            d.add_identity_block(row, col(&face), rank, sign);
        }
        let tail = &s[..n];
        let tail_comp = cat.compose_string(tail).expect("string is composable");
        let sign = if n.is_multiple_of(2) { -1 } else { 1 };
        d.add_block(row, col(tail), sys.pre(s[n], tail_comp), sign);
    }
    d
}

/// `H^n(C, D)` for `n ≤ N − 1`.
pub fn bw_cohomology(sys: &NaturalSystem, n_max: usize) -> Result<Vec<AbInvariants>> {
    Ok(bw_cochain(sys, n_max)?.complex.cohomology())
}

pub fn bw_cohomology_with_budget(sys: &NaturalSystem, n_max: usize, budget: usize) -> Result<Vec<AbInvariants>> {
    Ok(bw_cochain_with_budget(sys, n_max, budget)?.complex.cohomology())
}

/// Cochain map `F^*(B, D) → F^*(A, E)` induced by `F: A → B` and maps
/// `component(α): D(Fα) → E(α)`, sending `f` to `(α₁..αₙ) ↦ component(α₁⋯αₙ) f(Fα₁..Fαₙ)`.
pub fn induced_cochain_map(
    f: &CatFunctor,
    src: &BWComplex,
    tgt: &BWComplex,
    component: impl Fn(usize) -> IntMatrix,
) -> CochainMap {
    let top = src.complex.max_degree().min(tgt.complex.max_degree());
    let mut image = Vec::new();
    let components = (0..=top)
        .map(|n| {
            let mut m = IntMatrix::zeros(tgt.complex.rank(n), src.complex.rank(n));
            for (i, s) in tgt.strings.iter(n).enumerate() {
                image.clear();
                if n == 0 {
                    image.push(f.obj(s[0]));
                } else {
                    image.extend(s.iter().map(|&a| f.mor(a)));
                }
                let j = src.strings.index_of(n, &image).expect("image string exists");
                let block = component(tgt.strings.composite(n, i));
                m.add_block(tgt.offsets[n][i], src.offsets[n][j], &block, 1);
            }
            m
        })
        .collect();
    CochainMap { components }
}

/// `F^*: F^*(B, D) → F^*(A, F^*D)`.
pub fn pullback_cochain_map(f: &CatFunctor, src: &BWComplex, tgt: &BWComplex, tgt_sys: &NaturalSystem) -> CochainMap {
    induced_cochain_map(f, src, tgt, |a| IntMatrix::identity(tgt_sys.rank(a)))
}

/// Cochain map induced by a map of natural systems on one category.
pub fn natsys_cochain_map(cat: &Arc<FiniteCategory>, map: &NatSysMap, src: &BWComplex, tgt: &BWComplex) -> CochainMap {
    induced_cochain_map(&CatFunctor::identity(cat.clone()), src, tgt, |a| map.components[a].clone())
}

/// Expected value of a free module of rank `r` in a cohomology table.
fn free(rank: usize) -> AbInvariants {
    AbInvariants::free(rank)
}

/// With an initial object and constant coefficients `R^r`, cohomology is
/// `R^r` in degree 0 and vanishes above.
pub fn check_lemma_trivial(cat: Arc<FiniteCategory>, ring: Ring, rank: usize, n_max: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("trivial", n_max as isize - 1);
    if cat.initial_objects().is_empty() {
        report.status = Status::HypothesisFails;
        report.note("category has no initial object");
        return Ok(report);
    }
    let h = bw_cohomology(&natsys_constant(cat, ring, rank), n_max)?;
    for (n, hn) in h.iter().enumerate() {
        let expected = if n == 0 { free(rank) } else { AbInvariants::zero() };
        report.require(*hn == expected, format!("H^{n} = {hn}, expected {expected}"));
    }
    report.note(format!("H^* = {}", table(&h)));
    Ok(report)
}

/// `H^*(C, D_{a,T,m,A})` is `A` in degree 0 and vanishes above; the complex
/// has the ranks of `F^*(C_{a,T,m}, A)` and the same cohomology.
pub fn check_lemma_4vanish(
    cat: Arc<FiniteCategory>,
    t: &SetPresheaf,
    a: usize,
    m: usize,
    a_rank: usize,
    ring: Ring,
    n_max: usize,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("4vanish", n_max as isize - 1);
    let d = natsys_lemma44(cat.clone(), t, a, m, a_rank, ring)?;
    let lhs = bw_cochain(&d, n_max)?;
    let elements = build_category_atm(&cat, t, a, m)?;
    let rhs = bw_cochain(&natsys_constant(Arc::new(elements.category), ring, a_rank), n_max)?;
    report.require(
        lhs.complex.ranks() == rhs.complex.ranks(),
        format!("ranks {:?} vs {:?}", lhs.complex.ranks(), rhs.complex.ranks()),
    );
    let h = lhs.complex.cohomology();
    let h_elements = rhs.complex.cohomology();
    for (n, hn) in h.iter().enumerate() {
        let expected = if n == 0 { free(a_rank) } else { AbInvariants::zero() };
        report.require(*hn == expected, format!("H^{n} = {hn}, expected {expected}"));
    }
    report.require(h == h_elements, format!("{} vs {} on the category of elements", table(&h), table(&h_elements)));
    report.note(format!("H^* = {}", table(&h)));
    Ok(report)
}

pub(crate) fn table(h: &[AbInvariants]) -> String {
    let parts: Vec<String> = h.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}
