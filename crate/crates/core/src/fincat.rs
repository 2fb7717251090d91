//! Finite categories stored as flat composition tables, functors between
//! them, and adjunctions checked by enumeration.
//!
//! Morphisms are numbered `0..n_morphisms`. Composition is a dense
//! `n_morphisms × n_morphisms` table indexed by `(g, f)` holding `g∘f`, with
//! a sentinel wherever `tgt(f) != src(g)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

const UNDEFINED: u32 = u32::MAX;

/// Accumulated constraint violations. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, violation: impl Into<String>) {
        self.violations.push(violation.into());
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: ValidationReport) {
        for v in other.violations {
            self.violations.push(format!("{prefix}: {v}"));
        }
    }

    /// Stop collecting after this many entries; exhaustive checks on a
    /// badly broken table would otherwise produce millions of lines.
    fn full(&self) -> bool {
        self.violations.len() >= 64
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "  - {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    n_objects: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    identity: Vec<usize>,
    comp: Vec<u32>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
}

impl FiniteCategory {
    /// Builds the table from a composition rule without validating it.
    /// `compose(g, f)` is only queried on composable pairs.
    pub fn build_unchecked(
        n_objects: usize,
        morphisms: &[(usize, usize)],
        identity: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> usize,
    ) -> Self {
        let m = morphisms.len();
        let mut comp = vec![UNDEFINED; m * m];
        for g in 0..m {
            for f in 0..m {
                if morphisms[f].1 == morphisms[g].0 {
                    comp[g * m + f] = compose(g, f) as u32;
                }
            }
        }
        Self::from_raw(n_objects, morphisms, identity, comp)
    }

    fn from_raw(n_objects: usize, morphisms: &[(usize, usize)], identity: Vec<usize>, comp: Vec<u32>) -> Self {
        let mut outgoing = vec![Vec::new(); n_objects];
        let mut incoming = vec![Vec::new(); n_objects];
        for (i, &(s, t)) in morphisms.iter().enumerate() {
            if s < n_objects {
                outgoing[s].push(i);
            }
            if t < n_objects {
                incoming[t].push(i);
            }
        }
        FiniteCategory {
            n_objects,
            src: morphisms.iter().map(|p| p.0).collect(),
            tgt: morphisms.iter().map(|p| p.1).collect(),
            identity,
            comp,
            outgoing,
            incoming,
        }
    }

    /// Builds a category from explicit composition triples `(g, f, g∘f)`
    /// and validates it.
    pub fn from_triples(
        n_objects: usize,
        morphisms: &[(usize, usize)],
        identity: Vec<usize>,
        triples: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let cat = Self::from_triples_unchecked(n_objects, morphisms, identity, triples)?;
        let report = cat.validate();
        if report.is_valid() {
            Ok(cat)
        } else {
            Err(Error::InvalidCategory(report))
        }
    }

    /// Like [`from_triples`](Self::from_triples) but leaves validation to the
    /// caller. Triples on non-composable pairs are kept so that
    /// [`validate`](Self::validate) can report them.
    pub fn from_triples_unchecked(
        n_objects: usize,
        morphisms: &[(usize, usize)],
        identity: Vec<usize>,
        triples: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let m = morphisms.len();
        let mut comp = vec![UNDEFINED; m * m];
        for &(g, f, h) in triples {
            if g >= m || f >= m || h >= m {
                return Err(Error::Parse(format!("composition triple ({g}, {f}, {h}) references a missing morphism")));
            }
            if comp[g * m + f] != UNDEFINED && comp[g * m + f] != h as u32 {
                return Err(Error::Parse(format!("composite of ({g}, {f}) given twice with different values")));
            }
            comp[g * m + f] = h as u32;
        }
        Ok(Self::from_raw(n_objects, morphisms, identity, comp))
    }

    pub fn terminal() -> Self {
        Self::build_unchecked(1, &[(0, 0)], vec![0], |_, _| 0)
    }

    pub fn discrete(n: usize) -> Self {
        let morphisms: Vec<_> = (0..n).map(|x| (x, x)).collect();
        Self::build_unchecked(n, &morphisms, (0..n).collect(), |g, _| g)
    }

    /// Poset category with one arrow `x → y` whenever `x ≤ y`. The relation
    /// must already be reflexive, antisymmetric and transitive. Morphisms are
    /// numbered in lexicographic order of `(x, y)`.
    pub fn poset(n: usize, relation: &BTreeSet<(usize, usize)>) -> Result<Self> {
        for &(x, y) in relation {
            if x >= n || y >= n {
                return Err(Error::RelationNotPartialOrder(format!("pair ({x}, {y}) out of range")));
            }
        }
        for x in 0..n {
            if !relation.contains(&(x, x)) {
                return Err(Error::RelationNotPartialOrder(format!("not reflexive at {x}")));
            }
        }
        for &(x, y) in relation {
            if x != y && relation.contains(&(y, x)) {
                return Err(Error::RelationNotPartialOrder(format!("{x} ≤ {y} ≤ {x}")));
            }
            for &(y2, z) in relation.range((y, 0)..(y + 1, 0)) {
                debug_assert_eq!(y2, y);
                if !relation.contains(&(x, z)) {
                    return Err(Error::RelationNotPartialOrder(format!("not transitive: {x} ≤ {y} ≤ {z}")));
                }
            }
        }
        let morphisms: Vec<(usize, usize)> = relation.iter().copied().collect();
        let index: HashMap<(usize, usize), usize> = morphisms.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let identity = (0..n).map(|x| index[&(x, x)]).collect();
        Ok(Self::build_unchecked(n, &morphisms, identity, |g, f| {
            index[&(morphisms[f].0, morphisms[g].1)]
        }))
    }

    /// Poset category from the reflexive-transitive closure of `covers`.
    pub fn poset_from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut le = vec![vec![false; n]; n];
        for (x, row) in le.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(x, y) in covers {
            if x >= n || y >= n {
                return Err(Error::RelationNotPartialOrder(format!("pair ({x}, {y}) out of range")));
            }
            le[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        let relation = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| le[x][y])
            .collect();
        Self::poset(n, &relation)
    }

    /// One-object category from a monoid multiplication table, where
    /// `table[a][b] = a·b` and composition is `g∘f = g·f`.
    pub fn monoid(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAMonoid("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAMonoid(format!("row {a} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::NotAMonoid(format!("entry {bad} out of range in row {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAMonoid(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::NotAMonoid("no two-sided unit".into()))?;
        let morphisms = vec![(0, 0); n];
        Ok(Self::build_unchecked(1, &morphisms, vec![unit], |g, f| table[g][f]))
    }

    /// The cyclic group of order `n` as a one-object category; morphism `i`
    /// is the `i`-th power of the generator.
    pub fn cyclic_group(n: usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::monoid(&table).expect("cyclic group table is a monoid")
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.tgt[f]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.src[f] == self.tgt[f] && self.identity[self.src[f]] == f
    }

    /// `g∘f` if `tgt(f) = src(g)`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let v = self.comp[g * self.n_morphisms() + f];
        (v != UNDEFINED).then_some(v as usize)
    }

    /// `g∘f`; panics on a non-composable pair.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        match self.compose(g, f) {
            Some(h) => h,
            None => panic!("morphisms {g} and {f} are not composable"),
        }
    }

    /// Composite `f_1 ∘ f_2 ∘ ⋯ ∘ f_n` of a composable string; the empty
    /// string has no composite.
    pub fn compose_string(&self, string: &[usize]) -> Option<usize> {
        let (&last, rest) = string.split_last()?;
        rest.iter().rev().try_fold(last, |acc, &g| self.compose(g, acc))
    }

    pub fn outgoing(&self, x: usize) -> &[usize] {
        &self.outgoing[x]
    }

    pub fn incoming(&self, x: usize) -> &[usize] {
        &self.incoming[x]
    }

    pub fn hom(&self, x: usize, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.outgoing[x].iter().copied().filter(move |&f| self.tgt[f] == y)
    }

    /// Two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (x, y) = (self.src[f], self.tgt[f]);
        self.hom(y, x)
            .find(|&g| self.comp(g, f) == self.identity[x] && self.comp(f, g) == self.identity[y])
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.n_morphisms()).all(|f| self.inverse(f).is_some())
    }

    /// Objects with exactly one morphism to every object.
    pub fn initial_objects(&self) -> Vec<usize> {
        (0..self.n_objects)
            .filter(|&x| {
                let mut counts = vec![0usize; self.n_objects];
                for &f in &self.outgoing[x] {
                    counts[self.tgt[f]] += 1;
                }
                counts.iter().all(|&c| c == 1)
            })
            .collect()
    }

    pub fn composition_triples(&self) -> Vec<(usize, usize, usize)> {
        let m = self.n_morphisms();
        let mut out = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = self.compose(g, f) {
                    out.push((g, f, h));
                }
            }
        }
        out
    }

    pub fn morphism_pairs(&self) -> Vec<(usize, usize)> {
        self.src.iter().copied().zip(self.tgt.iter().copied()).collect()
    }

    /// Exhaustive check of ranges, identity laws, composability and
    /// associativity.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let m = self.n_morphisms();
        let n = self.n_objects;
        for f in 0..m {
            if self.src[f] >= n || self.tgt[f] >= n {
                report.push(format!("morphism {f} has endpoints ({}, {}) out of range", self.src[f], self.tgt[f]));
            }
        }
        if self.identity.len() != n {
            report.push(format!("{} identities for {} objects", self.identity.len(), n));
        }
        if !report.is_valid() {
            return report;
        }
        for (x, &i) in self.identity.iter().enumerate() {
            if i >= m || self.src[i] != x || self.tgt[i] != x {
                report.push(format!("identity of object {x} is not an endomorphism of {x}"));
            }
        }
        if !report.is_valid() {
            return report;
        }
        for g in 0..m {
            for f in 0..m {
                let composable = self.tgt[f] == self.src[g];
                match (composable, self.compose(g, f)) {
                    (true, None) => report.push(format!("composite {g}∘{f} missing")),
                    (false, Some(_)) => report.push(format!("composite {g}∘{f} defined on a non-composable pair")),
                    (true, Some(h)) => {
                        if h >= m {
                            report.push(format!("composite {g}∘{f} = {h} out of range"));
                        } else if self.src[h] != self.src[f] || self.tgt[h] != self.tgt[g] {
                            report.push(format!("composite {g}∘{f} = {h} has wrong endpoints"));
                        }
                    }
                    (false, None) => {}
                }
                if report.full() {
                    return report;
                }
            }
        }
        if !report.is_valid() {
            return report;
        }
        for f in 0..m {
            if self.comp(self.identity[self.tgt[f]], f) != f {
                report.push(format!("identity law fails: id∘{f} != {f}"));
            }
            if self.comp(f, self.identity[self.src[f]]) != f {
                report.push(format!("identity law fails: {f}∘id != {f}"));
            }
        }
        for f in 0..m {
            for &g in &self.outgoing[self.tgt[f]] {
                let gf = self.comp(g, f);
                for &h in &self.outgoing[self.tgt[g]] {
                    if self.comp(h, gf) != self.comp(self.comp(h, g), f) {
                        report.push(format!("associativity fails at ({h}, {g}, {f})"));
                        if report.full() {
                            return report;
                        }
                    }
                }
            }
        }
        report
    }

    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::InvalidCategory(report))
        }
    }
}

/// The under category `K ↑ j₀`: objects are morphisms `σ: j₀ → j`, and a
/// morphism `σ → σ′` is `τ` with `τσ = σ′`.
#[derive(Clone, Debug)]
pub struct UnderCategory {
    pub category: FiniteCategory,
    /// Object index → the morphism `σ` of `K` it stands for.
    pub sigma: Vec<usize>,
    /// Morphism index → `(σ, τ)`.
    pub arrows: Vec<(usize, usize)>,
}

impl UnderCategory {
    /// Object corresponding to `id_{j₀}`.
    pub fn initial(&self, base: &FiniteCategory, j0: usize) -> usize {
        let id = base.identity(j0);
        self.sigma.iter().position(|&s| s == id).expect("identity is an object")
    }
}

pub fn under_category(base: &FiniteCategory, j0: usize) -> Result<UnderCategory> {
    if j0 >= base.n_objects() {
        return Err(Error::ObjectOutOfRange { object: j0, n_objects: base.n_objects() });
    }
    let sigma: Vec<usize> = base.outgoing(j0).to_vec();
    let obj_of: HashMap<usize, usize> = sigma.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut arrows = Vec::new();
    let mut morphisms = Vec::new();
    for (i, &s) in sigma.iter().enumerate() {
        for &t in base.outgoing(base.tgt(s)) {
            arrows.push((s, t));
            morphisms.push((i, obj_of[&base.comp(t, s)]));
        }
    }
    let index: HashMap<(usize, usize), usize> = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let identity = sigma.iter().map(|&s| index[&(s, base.identity(base.tgt(s)))]).collect();
    let category = FiniteCategory::build_unchecked(sigma.len(), &morphisms, identity, |g, f| {
        let (s, t) = arrows[f];
        let (_, t2) = arrows[g];
        index[&(s, base.comp(t2, t))]
    });
    Ok(UnderCategory { category, sigma, arrows })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatFunctor {
    pub src: Arc<FiniteCategory>,
    pub tgt: Arc<FiniteCategory>,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl CatFunctor {
    pub fn new(
        src: Arc<FiniteCategory>,
        tgt: Arc<FiniteCategory>,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Result<Self> {
        let f = CatFunctor { src, tgt, obj_map, mor_map };
        let report = f.validate();
        if report.is_valid() {
            Ok(f)
        } else {
            Err(Error::NotAFunctor(report))
        }
    }

    pub fn identity(cat: Arc<FiniteCategory>) -> Self {
        CatFunctor {
            obj_map: (0..cat.n_objects()).collect(),
            mor_map: (0..cat.n_morphisms()).collect(),
            src: cat.clone(),
            tgt: cat,
        }
    }

    /// The unique functor to the terminal category.
    pub fn to_terminal(src: Arc<FiniteCategory>) -> Self {
        CatFunctor {
            obj_map: vec![0; src.n_objects()],
            mor_map: vec![0; src.n_morphisms()],
            src,
            tgt: Arc::new(FiniteCategory::terminal()),
        }
    }

    pub fn obj(&self, x: usize) -> usize {
        self.obj_map[x]
    }

    pub fn mor(&self, f: usize) -> usize {
        self.mor_map[f]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &CatFunctor) -> CatFunctor {
        assert_eq!(*first.tgt, *self.src, "functors are not composable");
        CatFunctor {
            src: first.src.clone(),
            tgt: self.tgt.clone(),
            obj_map: first.obj_map.iter().map(|&x| self.obj_map[x]).collect(),
            mor_map: first.mor_map.iter().map(|&f| self.mor_map[f]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt
            && self.obj_map.iter().enumerate().all(|(i, &x)| i == x)
            && self.mor_map.iter().enumerate().all(|(i, &f)| i == f)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let (a, b) = (&*self.src, &*self.tgt);
        if self.obj_map.len() != a.n_objects() || self.mor_map.len() != a.n_morphisms() {
            report.push("map lengths do not match the source category");
            return report;
        }
        if self.obj_map.iter().any(|&x| x >= b.n_objects()) || self.mor_map.iter().any(|&f| f >= b.n_morphisms()) {
            report.push("map values out of range of the target category");
            return report;
        }
        for f in 0..a.n_morphisms() {
            let ff = self.mor_map[f];
            if b.src(ff) != self.obj_map[a.src(f)] || b.tgt(ff) != self.obj_map[a.tgt(f)] {
                report.push(format!("morphism {f} is sent to {ff} with wrong endpoints"));
            }
        }
        for x in 0..a.n_objects() {
            if self.mor_map[a.identity(x)] != b.identity(self.obj_map[x]) {
                report.push(format!("identity of object {x} is not sent to an identity"));
            }
        }
        if !report.is_valid() {
            return report;
        }
        for (g, f, h) in a.composition_triples() {
            if b.comp(self.mor_map[g], self.mor_map[f]) != self.mor_map[h] {
                report.push(format!("composite {g}∘{f} not preserved"));
                if report.full() {
                    break;
                }
            }
        }
        report
    }
}

/// `l: C → C′` left adjoint to `r: C′ → C` with unit `ε_c: c → r l c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjunction {
    pub l: CatFunctor,
    pub r: CatFunctor,
    pub unit: Vec<usize>,
}

impl Adjunction {
    pub fn new(l: CatFunctor, r: CatFunctor, unit: Vec<usize>) -> Result<Self> {
        let adj = Adjunction { l, r, unit };
        let report = adj.validate();
        if report.is_valid() {
            Ok(adj)
        } else {
            Err(Error::InvalidAdjunction(report))
        }
    }

    pub fn identity(cat: Arc<FiniteCategory>) -> Self {
        let unit = (0..cat.n_objects()).map(|x| cat.identity(x)).collect();
        Adjunction { l: CatFunctor::identity(cat.clone()), r: CatFunctor::identity(cat), unit }
    }

    /// Builds the adjunction between posets from a monotone `l` whose right
    /// adjoint `r` exists; `r(u)` is the largest `c` with `l(c) ≤ u`.
    pub fn galois(l: CatFunctor) -> Option<Self> {
        let (c, cp) = (l.src.clone(), l.tgt.clone());
        let le = |cat: &FiniteCategory, x: usize, y: usize| cat.hom(x, y).next();
        let mut r_obj = Vec::with_capacity(cp.n_objects());
        for u in 0..cp.n_objects() {
            let below: Vec<usize> = (0..c.n_objects()).filter(|&x| le(&cp, l.obj(x), u).is_some()).collect();
            let top = below.iter().copied().find(|&t| below.iter().all(|&x| le(&c, x, t).is_some()))?;
            r_obj.push(top);
        }
        let r_mor = (0..cp.n_morphisms())
            .map(|f| le(&c, r_obj[cp.src(f)], r_obj[cp.tgt(f)]))
            .collect::<Option<Vec<_>>>()?;
        let r = CatFunctor { src: cp, tgt: c.clone(), obj_map: r_obj, mor_map: r_mor };
        let unit = (0..c.n_objects())
            .map(|x| le(&c, x, r.obj(l.obj(x))))
            .collect::<Option<Vec<_>>>()?;
        Adjunction::new(l, r, unit).ok()
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.l.src
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.l.tgt
    }

    /// The unique `ν̂: l(c) → u` with `r(ν̂)∘ε_c = ν`, for `ν: c → r(u)`.
    pub fn transpose(&self, c: usize, u: usize, nu: usize) -> Option<usize> {
        let (cat, cp) = (&*self.l.src, &*self.l.tgt);
        let mut found = cp.hom(self.l.obj(c), u).filter(|&h| cat.comp(self.r.mor(h), self.unit[c]) == nu);
        let first = found.next();
        if found.next().is_some() {
            return None;
        }
        first
    }

    /// Counit `l r u → u`, the transpose of `id_{r u}`.
    pub fn counit(&self, u: usize) -> usize {
        let ru = self.r.obj(u);
        self.transpose(ru, u, self.l.src.identity(ru)).expect("valid adjunction has a counit")
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        report.extend_prefixed("l", self.l.validate());
        report.extend_prefixed("r", self.r.validate());
        if *self.l.src != *self.r.tgt || *self.l.tgt != *self.r.src {
            report.push("l and r do not run between the same categories");
        }
        if !report.is_valid() {
            return report;
        }
        let (cat, cp) = (&*self.l.src, &*self.l.tgt);
        if self.unit.len() != cat.n_objects() {
            report.push("unit has wrong length");
            return report;
        }
        for (c, &e) in self.unit.iter().enumerate() {
            if e >= cat.n_morphisms() || cat.src(e) != c || cat.tgt(e) != self.r.obj(self.l.obj(c)) {
                report.push(format!("unit component at {c} is not a morphism c → r l c"));
            }
        }
        if !report.is_valid() {
            return report;
        }
        for b in 0..cat.n_morphisms() {
            let (c, c2) = (cat.src(b), cat.tgt(b));
            let rlb = self.r.mor(self.l.mor(b));
            if cat.comp(rlb, self.unit[c]) != cat.comp(self.unit[c2], b) {
                report.push(format!("unit is not natural at morphism {b}"));
            }
        }
        for c in 0..cat.n_objects() {
            for u in 0..cp.n_objects() {
                for nu in cat.hom(c, self.r.obj(u)) {
                    let count = cp
                        .hom(self.l.obj(c), u)
                        .filter(|&h| cat.comp(self.r.mor(h), self.unit[c]) == nu)
                        .count();
                    if count != 1 {
                        report.push(format!("{count} transposes for ν = {nu} at (c={c}, u={u})"));
                    }
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FiniteCategory {
        let rel = (0..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
        FiniteCategory::poset(n, &rel).unwrap()
    }

    #[test]
    fn terminal_is_valid() {
        let t = FiniteCategory::terminal();
        assert!(t.validate().is_valid());
        assert_eq!(t.n_morphisms(), 1);
    }

    #[test]
    fn idempotent_non_identity_breaks_identity_law() {
        // one object, morphisms {id, g} with g∘g = g but id∘g = id (wrong)
        let cat = FiniteCategory::from_triples_unchecked(
            1,
            &[(0, 0), (0, 0)],
            vec![0],
            &[(0, 0, 0), (0, 1, 0), (1, 0, 1), (1, 1, 1)],
        )
        .unwrap();
        let report = cat.validate();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.contains("identity law")));
    }

    #[test]
    fn broken_associativity_is_reported() {
        // monoid {e, a, b} with a·a = b, a·b = a, b·a = b, b·b = b is not associative:
        // (a·a)·b = b·b = b but a·(a·b) = a·a = b; try (a·b)·a = a·a = b, a·(b·a) = a·b = a.
        let t = [(0, 0, 0), (0, 1, 1), (0, 2, 2), (1, 0, 1), (2, 0, 2), (1, 1, 2), (1, 2, 1), (2, 1, 2), (2, 2, 2)];
        let cat = FiniteCategory::from_triples_unchecked(1, &[(0, 0); 3], vec![0], &t).unwrap();
        let report = cat.validate();
        assert!(report.violations.iter().any(|v| v.contains("associativity")), "{report}");
    }

    #[test]
    fn poset_sizes() {
        assert_eq!(chain(1).n_morphisms(), 1);
        assert_eq!(chain(2).n_morphisms(), 3);
        // pairs x ≤ y in a 3-chain: 3 + 2 + 1
        assert_eq!(chain(3).n_morphisms(), 6);
        assert!(chain(4).validate().is_valid());
    }

    #[test]
    fn poset_rejects_non_orders() {
        let rel: BTreeSet<_> = [(0, 0), (1, 1), (0, 1), (1, 0)].into_iter().collect();
        assert!(matches!(FiniteCategory::poset(2, &rel), Err(Error::RelationNotPartialOrder(_))));
        let rel: BTreeSet<_> = [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)].into_iter().collect();
        assert!(matches!(FiniteCategory::poset(3, &rel), Err(Error::RelationNotPartialOrder(_))));
        let rel: BTreeSet<_> = [(0, 0)].into_iter().collect();
        assert!(FiniteCategory::poset(2, &rel).is_err());
    }

    #[test]
    fn monoid_categories() {
        let triv = FiniteCategory::monoid(&[vec![0]]).unwrap();
        assert_eq!(triv, FiniteCategory::terminal());
        let z2 = FiniteCategory::cyclic_group(2);
        assert!(z2.validate().is_valid());
        assert_eq!(z2.comp(1, 1), z2.identity(0));
        let z3 = FiniteCategory::cyclic_group(3);
        assert_eq!(z3.n_morphisms(), 3);
        assert_eq!(z3.comp(1, 2), 0);
        assert!(z3.is_groupoid());
        assert!(FiniteCategory::monoid(&[vec![0, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn under_categories() {
        let t = FiniteCategory::terminal();
        let u = under_category(&t, 0).unwrap();
        assert_eq!(u.category, FiniteCategory::terminal());

        let z2 = FiniteCategory::cyclic_group(2);
        let u = under_category(&z2, 0).unwrap();
        assert_eq!(u.category.n_objects(), 2);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(u.category.hom(x, y).count(), 1);
            }
        }
        assert!(u.category.validate().is_valid());

        let i = chain(2);
        let u = under_category(&i, 0).unwrap();
        assert_eq!((u.category.n_objects(), u.category.n_morphisms()), (2, 3));
        assert_eq!(u.category.initial_objects(), vec![u.initial(&i, 0)]);
        assert!(matches!(under_category(&i, 5), Err(Error::ObjectOutOfRange { .. })));
    }

    #[test]
    fn functor_validation() {
        let z2 = Arc::new(FiniteCategory::cyclic_group(2));
        assert!(CatFunctor::identity(z2.clone()).validate().is_valid());

        let d2 = Arc::new(FiniteCategory::discrete(2));
        let swap = CatFunctor::new(d2.clone(), d2.clone(), vec![1, 0], vec![1, 0]);
        assert!(swap.is_ok());

        let bad = CatFunctor { src: z2.clone(), tgt: z2, obj_map: vec![0], mor_map: vec![1, 1] };
        assert!(!bad.validate().is_valid());
    }

    #[test]
    fn galois_connection_interval_to_terminal() {
        let i = Arc::new(chain(2));
        let l = CatFunctor::to_terminal(i.clone());
        let adj = Adjunction::galois(l).expect("I has a top element");
        assert_eq!(adj.r.obj(0), 1);
        assert!(adj.validate().is_valid());
        assert_eq!(adj.counit(0), 0);
    }

    #[test]
    fn identity_adjunction_is_valid() {
        let z3 = Arc::new(FiniteCategory::cyclic_group(3));
        assert!(Adjunction::identity(z3).validate().is_valid());
    }
}
