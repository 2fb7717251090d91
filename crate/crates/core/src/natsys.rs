//! Factorization categories and natural systems of finite-rank free modules.
//!
//! A natural system `D` assigns a module `D(α)` to each morphism `α` and is
//! functorial in factorizations `β = ψ∘α∘ν`. It is stored through its
//! generating actions: `ψ_*: D(α) → D(ψα)` ("post") and `ν^*: D(α) → D(αν)`
//! ("pre"); the action of a factorization `(ν, ψ)` is `ν^* ψ_*`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FiniteCategory, ValidationReport};
use crate::homalg::{IntMatrix, Ring};

/// The category `FC` whose objects are the morphisms of `C` and whose
/// morphisms `α → β` are pairs `(ν, ψ)` with `ψ∘α∘ν = β`.
#[derive(Clone, Debug)]
pub struct FactorizationCategory {
    pub base: Arc<FiniteCategory>,
    pub category: FiniteCategory,
    /// Morphism index → `(α, ν, ψ)`, with `α` the source object.
    pub labels: Vec<(usize, usize, usize)>,
}

pub fn build_factorization_category(base: Arc<FiniteCategory>) -> FactorizationCategory {
    let c = &*base;
    let mut labels = Vec::new();
    let mut morphisms = Vec::new();
    for alpha in 0..c.n_morphisms() {
        for &nu in c.incoming(c.src(alpha)) {
            for &psi in c.outgoing(c.tgt(alpha)) {
                labels.push((alpha, nu, psi));
                morphisms.push((alpha, c.comp(psi, c.comp(alpha, nu))));
            }
        }
    }
    let index: HashMap<(usize, usize, usize), usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let identity = (0..c.n_morphisms())
        .map(|a| index[&(a, c.identity(c.src(a)), c.identity(c.tgt(a)))])
        .collect();
    let category = FiniteCategory::build_unchecked(c.n_morphisms(), &morphisms, identity, |g, f| {
        let (alpha, nu1, psi1) = labels[f];
        let (_, nu2, psi2) = labels[g];
        // (ν₂, ψ₂)(ν₁, ψ₁) = (ν₁ν₂, ψ₂ψ₁)
        index[&(alpha, c.comp(nu1, nu2), c.comp(psi2, psi1))]
    });
    FactorizationCategory { base, category, labels }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalSystem {
    base: Arc<FiniteCategory>,
    ring: Ring,
    rank: Vec<usize>,
    post: Vec<Option<IntMatrix>>,
    pre: Vec<Option<IntMatrix>>,
}

impl NaturalSystem {
    /// Tabulates the generating actions without validation. `post(ψ, α)` is
    /// queried when `src ψ = tgt α`, `pre(ν, α)` when `tgt ν = src α`.
    pub fn from_fn(
        base: Arc<FiniteCategory>,
        ring: Ring,
        rank: Vec<usize>,
        mut post: impl FnMut(usize, usize) -> IntMatrix,
        mut pre: impl FnMut(usize, usize) -> IntMatrix,
    ) -> Self {
        let m = base.n_morphisms();
        let mut post_t = vec![None; m * m];
        let mut pre_t = vec![None; m * m];
        for a in 0..m {
            for &psi in base.outgoing(base.tgt(a)) {
                post_t[psi * m + a] = Some(post(psi, a).reduced(ring));
            }
            for &nu in base.incoming(base.src(a)) {
                pre_t[nu * m + a] = Some(pre(nu, a).reduced(ring));
            }
        }
        NaturalSystem { base, ring, rank, post: post_t, pre: pre_t }
    }

    /// Like [`from_fn`](Self::from_fn), then validates.
    pub fn new(
        base: Arc<FiniteCategory>,
        ring: Ring,
        rank: Vec<usize>,
        post: impl FnMut(usize, usize) -> IntMatrix,
        pre: impl FnMut(usize, usize) -> IntMatrix,
    ) -> Result<Self> {
        Self::from_fn(base, ring, rank, post, pre).validated()
    }

    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::InvalidNaturalSystem(report))
        }
    }

    pub fn base(&self) -> &Arc<FiniteCategory> {
        &self.base
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self, alpha: usize) -> usize {
        self.rank[alpha]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// `ψ_*: D(α) → D(ψα)`.
    pub fn post(&self, psi: usize, alpha: usize) -> &IntMatrix {
        self.post[psi * self.base.n_morphisms() + alpha]
            .as_ref()
            .unwrap_or_else(|| panic!("post action of {psi} on {alpha} is not composable"))
    }

    /// `ν^*: D(α) → D(αν)`.
    pub fn pre(&self, nu: usize, alpha: usize) -> &IntMatrix {
        self.pre[nu * self.base.n_morphisms() + alpha]
            .as_ref()
            .unwrap_or_else(|| panic!("pre action of {nu} on {alpha} is not composable"))
    }

    /// Action of the factorization `(ν, ψ)` on `D(α)`, i.e. `ν^* ψ_*`.
    pub fn action(&self, alpha: usize, nu: usize, psi: usize) -> IntMatrix {
        let c = &*self.base;
        self.pre(nu, c.comp(psi, alpha)) * self.post(psi, alpha)
    }

    /// The same system with its matrices read over another ring.
    pub fn over(&self, ring: Ring) -> NaturalSystem {
        let red = |v: &Vec<Option<IntMatrix>>| v.iter().map(|m| m.as_ref().map(|m| m.reduced(ring))).collect();
        NaturalSystem { base: self.base.clone(), ring, rank: self.rank.clone(), post: red(&self.post), pre: red(&self.pre) }
    }

    /// Replaces one generating action; meant for building counterexamples.
    pub fn with_post(mut self, psi: usize, alpha: usize, m: IntMatrix) -> Self {
        let n = self.base.n_morphisms();
        self.post[psi * n + alpha] = Some(m.reduced(self.ring));
        self
    }

    pub fn with_pre(mut self, nu: usize, alpha: usize, m: IntMatrix) -> Self {
        let n = self.base.n_morphisms();
        self.pre[nu * n + alpha] = Some(m.reduced(self.ring));
        self
    }

    /// Checks shapes, functoriality of both actions, their commutation, and
    /// that `(ν, ψ) ↦ ν^* ψ_*` is a functor on the factorization category.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let c = &*self.base;
        let m = c.n_morphisms();
        let ring = self.ring;
        if self.rank.len() != m {
            report.push(format!("{} ranks for {m} morphisms", self.rank.len()));
            return report;
        }
        for a in 0..m {
            for &psi in c.outgoing(c.tgt(a)) {
                match &self.post[psi * m + a] {
                    None => report.push(format!("post action of {psi} on {a} missing")),
                    Some(x) if x.shape() != (self.rank[c.comp(psi, a)], self.rank[a]) => {
                        report.push(format!("post action of {psi} on {a} has shape {:?}", x.shape()))
                    }
                    _ => {}
                }
            }
            for &nu in c.incoming(c.src(a)) {
                match &self.pre[nu * m + a] {
                    None => report.push(format!("pre action of {nu} on {a} missing")),
                    Some(x) if x.shape() != (self.rank[c.comp(a, nu)], self.rank[a]) => {
                        report.push(format!("pre action of {nu} on {a} has shape {:?}", x.shape()))
                    }
                    _ => {}
                }
            }
        }
        if !report.is_valid() {
            return report;
        }
        for a in 0..m {
            let id = IntMatrix::identity(self.rank[a]);
            if !self.post(c.identity(c.tgt(a)), a).eq_over(&id, ring) {
                report.push(format!("id_* is not the identity on D({a})"));
            }
            if !self.pre(c.identity(c.src(a)), a).eq_over(&id, ring) {
                report.push(format!("id^* is not the identity on D({a})"));
            }
            for &psi in c.outgoing(c.tgt(a)) {
                let pa = c.comp(psi, a);
                for &psi2 in c.outgoing(c.tgt(psi)) {
                    let lhs = self.post(c.comp(psi2, psi), a);
                    let rhs = self.post(psi2, pa) * self.post(psi, a);
                    if !lhs.eq_over(&rhs, ring) {
                        report.push(format!("post action not functorial: ({psi2}∘{psi})_* on D({a})"));
                    }
                }
                for &nu in c.incoming(c.src(a)) {
                    let lhs = self.post(psi, c.comp(a, nu)) * self.pre(nu, a);
                    let rhs = self.pre(nu, pa) * self.post(psi, a);
                    if !lhs.eq_over(&rhs, ring) {
                        report.push(format!("ψ_* ν^* != ν^* ψ_* for ψ={psi}, ν={nu} on D({a})"));
                    }
                }
            }
            for &nu in c.incoming(c.src(a)) {
                let an = c.comp(a, nu);
                for &nu2 in c.incoming(c.src(nu)) {
                    let lhs = self.pre(c.comp(nu, nu2), a);
                    let rhs = self.pre(nu2, an) * self.pre(nu, a);
                    if !lhs.eq_over(&rhs, ring) {
                        report.push(format!("pre action not functorial: ({nu}∘{nu2})^* on D({a})"));
                    }
                }
            }
            if report.violations.len() > 64 {
                return report;
            }
        }
        if report.is_valid() {
            self.check_on_factorizations(&mut report);
        }
        report
    }

    fn check_on_factorizations(&self, report: &mut ValidationReport) {
        let fc = build_factorization_category(self.base.clone());
        let actions: Vec<IntMatrix> = fc.labels.iter().map(|&(a, nu, psi)| self.action(a, nu, psi)).collect();
        for (g, f, h) in fc.category.composition_triples() {
            if !actions[h].eq_over(&(&actions[g] * &actions[f]), self.ring) {
                let (a, nu, psi) = fc.labels[f];
                report.push(format!("factorization action not functorial at ({nu}, {psi}) on D({a})"));
                return;
            }
        }
    }
}

/// Natural system with `D(α) = R^rank` and identity actions.
pub fn natsys_constant(base: Arc<FiniteCategory>, ring: Ring, rank: usize) -> NaturalSystem {
    let m = base.n_morphisms();
    NaturalSystem::from_fn(base, ring, vec![rank; m], |_, _| IntMatrix::identity(rank), |_, _| IntMatrix::identity(rank))
}

/// Functor data turned into a natural system through `FC → C^op × C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorCoefficients {
    /// `maps[f]: M(src f) → M(tgt f)`; `D(α: x → y) = M(y)`.
    Covariant { ranks: Vec<usize>, maps: Vec<IntMatrix> },
    /// `maps[f]: M(tgt f) → M(src f)`; `D(α: x → y) = M(x)`.
    Contravariant { ranks: Vec<usize>, maps: Vec<IntMatrix> },
    /// `ranks[x][y] = rank M(x, y)`; `left[ν][y]: M(tgt ν, y) → M(src ν, y)`
    /// and `right[x][ψ]: M(x, src ψ) → M(x, tgt ψ)`; `D(α: x → y) = M(x, y)`.
    Bifunctor { ranks: Vec<Vec<usize>>, left: Vec<Vec<IntMatrix>>, right: Vec<Vec<IntMatrix>> },
}

pub fn natsys_from_functor(base: Arc<FiniteCategory>, ring: Ring, data: &FunctorCoefficients) -> Result<NaturalSystem> {
    let c = base.clone();
    let (n, m) = (c.n_objects(), c.n_morphisms());
    let shape_error = |what: &str| {
        let mut r = ValidationReport::new();
        r.push(what.to_string());
        Error::NotAFunctor(r)
    };
    let sys = match data {
        FunctorCoefficients::Covariant { ranks, maps } => {
            if ranks.len() != n || maps.len() != m {
                return Err(shape_error("covariant data has wrong lengths"));
            }
            if (0..m).any(|f| maps[f].shape() != (ranks[c.tgt(f)], ranks[c.src(f)])) {
                return Err(shape_error("covariant map with wrong shape"));
            }
            let rank = (0..m).map(|a| ranks[c.tgt(a)]).collect();
            NaturalSystem::from_fn(base, ring, rank, |psi, _| maps[psi].clone(), |_, a| IntMatrix::identity(ranks[c.tgt(a)]))
        }
        FunctorCoefficients::Contravariant { ranks, maps } => {
            if ranks.len() != n || maps.len() != m {
                return Err(shape_error("contravariant data has wrong lengths"));
            }
            if (0..m).any(|f| maps[f].shape() != (ranks[c.src(f)], ranks[c.tgt(f)])) {
                return Err(shape_error("contravariant map with wrong shape"));
            }
            let rank = (0..m).map(|a| ranks[c.src(a)]).collect();
            NaturalSystem::from_fn(base, ring, rank, |_, a| IntMatrix::identity(ranks[c.src(a)]), |nu, _| maps[nu].clone())
        }
        FunctorCoefficients::Bifunctor { ranks, left, right } => {
            if ranks.len() != n || ranks.iter().any(|r| r.len() != n) || left.len() != m || right.len() != n {
                return Err(shape_error("bifunctor data has wrong lengths"));
            }
            if left.iter().any(|l| l.len() != n) || right.iter().any(|r| r.len() != m) {
                return Err(shape_error("bifunctor action tables have wrong lengths"));
            }
            for nu in 0..m {
                for y in 0..n {
                    if left[nu][y].shape() != (ranks[c.src(nu)][y], ranks[c.tgt(nu)][y]) {
                        return Err(shape_error("bifunctor left action with wrong shape"));
                    }
                }
            }
            for x in 0..n {
                for psi in 0..m {
                    if right[x][psi].shape() != (ranks[x][c.tgt(psi)], ranks[x][c.src(psi)]) {
                        return Err(shape_error("bifunctor right action with wrong shape"));
                    }
                }
            }
            let rank = (0..m).map(|a| ranks[c.src(a)][c.tgt(a)]).collect();
            NaturalSystem::from_fn(
                base,
                ring,
                rank,
                |psi, a| right[c.src(a)][psi].clone(),
                |nu, a| left[nu][c.tgt(a)].clone(),
            )
        }
    };
    let report = sys.validate();
    if report.is_valid() {
        Ok(sys)
    } else {
        Err(Error::NotAFunctor(report))
    }
}

/// Pullback `F^*D` of a natural system on `B` along `F: A → B`.
pub fn natsys_pullback(f: &CatFunctor, d: &NaturalSystem) -> Result<NaturalSystem> {
    if **d.base() != *f.tgt {
        return Err(Error::Dimension("natural system does not live on the functor's target".into()));
    }
    let a = f.src.clone();
    let rank = (0..a.n_morphisms()).map(|x| d.rank(f.mor(x))).collect();
    NaturalSystem::from_fn(
        a,
        d.ring(),
        rank,
        |psi, al| d.post(f.mor(psi), f.mor(al)).clone(),
        |nu, al| d.pre(f.mor(nu), f.mor(al)).clone(),
    )
    .validated()
}

/// Map of natural systems `D → E` on the same category, one matrix per
/// morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatSysMap {
    pub components: Vec<IntMatrix>,
}

impl NatSysMap {
    pub fn validate(&self, src: &NaturalSystem, tgt: &NaturalSystem) -> ValidationReport {
        let mut report = ValidationReport::new();
        let c = &**src.base();
        let ring = src.ring();
        if self.components.len() != c.n_morphisms() {
            report.push("wrong number of components");
            return report;
        }
        for a in 0..c.n_morphisms() {
            if self.components[a].shape() != (tgt.rank(a), src.rank(a)) {
                report.push(format!("component at {a} has the wrong shape"));
            }
        }
        if !report.is_valid() {
            return report;
        }
        for a in 0..c.n_morphisms() {
            for &psi in c.outgoing(c.tgt(a)) {
                let lhs = tgt.post(psi, a) * &self.components[a];
                let rhs = &self.components[c.comp(psi, a)] * src.post(psi, a);
                if !lhs.eq_over(&rhs, ring) {
                    report.push(format!("not natural for post action of {psi} on {a}"));
                }
            }
            for &nu in c.incoming(c.src(a)) {
                let lhs = tgt.pre(nu, a) * &self.components[a];
                let rhs = &self.components[c.comp(a, nu)] * src.pre(nu, a);
                if !lhs.eq_over(&rhs, ring) {
                    report.push(format!("not natural for pre action of {nu} on {a}"));
                }
            }
        }
        report
    }

    /// True when every component is invertible over the ring.
    pub fn is_isomorphism(&self, ring: Ring) -> bool {
        self.components.iter().all(|m| matrix_invertible(m, ring))
    }
}

pub(crate) fn matrix_invertible(m: &IntMatrix, ring: Ring) -> bool {
    if !m.is_square() {
        return false;
    }
    match ring {
        Ring::Prime(p) => m.to_fp(p).rank() == m.rows(),
        Ring::Integers => {
            let f = crate::homalg::invariant_factors(m);
            f.len() == m.rows() && f.iter().all(|d| *d == num_bigint::BigInt::from(1))
        }
    }
}

/// A functor `T: C^op → FinSet`, with `maps[f]: T(tgt f) → T(src f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPresheaf {
    pub sizes: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

impl SetPresheaf {
    pub fn terminal(cat: &FiniteCategory) -> Self {
        SetPresheaf { sizes: vec![1; cat.n_objects()], maps: vec![vec![0]; cat.n_morphisms()] }
    }

    /// `Hom(−, b)`, with `T(x)` listed in the order of `cat.hom(x, b)`.
    pub fn representable(cat: &FiniteCategory, b: usize) -> Self {
        let homs: Vec<Vec<usize>> = (0..cat.n_objects()).map(|x| cat.hom(x, b).collect()).collect();
        let maps = (0..cat.n_morphisms())
            .map(|f| {
                let src_homs = &homs[cat.src(f)];
                homs[cat.tgt(f)]
                    .iter()
                    .map(|&h| src_homs.iter().position(|&k| k == cat.comp(h, f)).expect("composite is in the hom-set"))
                    .collect()
            })
            .collect();
        SetPresheaf { sizes: homs.iter().map(Vec::len).collect(), maps }
    }

    /// `f^*(r)`.
    pub fn restrict(&self, f: usize, r: usize) -> usize {
        self.maps[f][r]
    }

    pub fn validate(&self, cat: &FiniteCategory) -> ValidationReport {
        let mut report = ValidationReport::new();
        if self.sizes.len() != cat.n_objects() || self.maps.len() != cat.n_morphisms() {
            report.push("presheaf data has wrong lengths");
            return report;
        }
        for f in 0..cat.n_morphisms() {
            let (x, y) = (cat.src(f), cat.tgt(f));
            if self.maps[f].len() != self.sizes[y] || self.maps[f].iter().any(|&v| v >= self.sizes[x]) {
                report.push(format!("restriction along {f} is not a map T({y}) → T({x})"));
            }
        }
        if !report.is_valid() {
            return report;
        }
        for x in 0..cat.n_objects() {
            if self.maps[cat.identity(x)].iter().enumerate().any(|(i, &v)| i != v) {
                report.push(format!("identity of {x} does not act trivially"));
            }
        }
        for (g, f, h) in cat.composition_triples() {
            if (0..self.sizes[cat.tgt(g)]).any(|r| self.maps[h][r] != self.maps[f][self.maps[g][r]]) {
                report.push(format!("(g∘f)^* != f^* g^* for g={g}, f={f}"));
            }
        }
        report
    }

    fn check_element(&self, cat: &FiniteCategory, a: usize, m: usize) -> Result<()> {
        if a >= cat.n_objects() {
            return Err(Error::ObjectOutOfRange { object: a, n_objects: cat.n_objects() });
        }
        let report = self.validate(cat);
        if !report.is_valid() {
            return Err(Error::NotAFunctor(report));
        }
        if m >= self.sizes[a] {
            return Err(Error::ElementNotInT { object: a, element: m, size: self.sizes[a] });
        }
        Ok(())
    }
}

/// Elements `(η: a → c, r ∈ T(d))` of `S_{a,T,m}(α: c → d)`, those with
/// `η^* α^* r = m`.
fn s_elements(cat: &FiniteCategory, t: &SetPresheaf, a: usize, m: usize, alpha: usize) -> Vec<(usize, usize)> {
    let (c, d) = (cat.src(alpha), cat.tgt(alpha));
    let mut out = Vec::new();
    for eta in cat.hom(a, c) {
        let composite = cat.comp(alpha, eta);
        for r in 0..t.sizes[d] {
            if t.restrict(composite, r) == m {
                out.push((eta, r));
            }
        }
    }
    out
}

/// The natural system `D_{a,T,m,A}(α) = Maps(S_{a,T,m}(α), A)` with
/// `A = R^a_rank`.
pub fn natsys_lemma44(
    base: Arc<FiniteCategory>,
    t: &SetPresheaf,
    a: usize,
    m: usize,
    a_rank: usize,
    ring: Ring,
) -> Result<NaturalSystem> {
    t.check_element(&base, a, m)?;
    let cat = base.clone();
    let s: Vec<Vec<(usize, usize)>> = (0..cat.n_morphisms()).map(|al| s_elements(&cat, t, a, m, al)).collect();
    let index: Vec<HashMap<(usize, usize), usize>> =
        s.iter().map(|v| v.iter().enumerate().map(|(i, &e)| (e, i)).collect()).collect();
    // D(ν, ψ): f ↦ f ∘ S(ν, ψ), where S(ν, ψ)(η′, r′) = (νη′, ψ^* r′)
    let action = |alpha: usize, nu: usize, psi: usize| -> IntMatrix {
        let beta = cat.comp(psi, cat.comp(alpha, nu));
        let mut mat = IntMatrix::zeros(s[beta].len() * a_rank, s[alpha].len() * a_rank);
        for (row, &(eta2, r2)) in s[beta].iter().enumerate() {
            let image = (cat.comp(nu, eta2), t.restrict(psi, r2));
            let col = index[alpha][&image];
            mat.add_identity_block(row * a_rank, col * a_rank, a_rank, 1);
        }
        mat
    };
    let rank = s.iter().map(|v| v.len() * a_rank).collect();
    NaturalSystem::from_fn(
        base.clone(),
        ring,
        rank,
        |psi, al| action(al, cat.identity(cat.src(al)), psi),
        |nu, al| action(al, nu, cat.identity(cat.tgt(al))),
    )
    .validated()
}

/// The category `C_{a,T,m}` of pairs `(η: a → d, r ∈ T(d))` with
/// `η^* r = m`; a morphism `(η, r) → (η′, r′)` is `β` with `βη = η′` and
/// `β^* r′ = r`.
#[derive(Clone, Debug)]
pub struct ElementCategory {
    pub category: FiniteCategory,
    pub objects: Vec<(usize, usize)>,
    /// Morphism index → underlying morphism `β` of `C`.
    pub beta: Vec<usize>,
}

impl ElementCategory {
    /// Index of the object `(id_a, m)`.
    pub fn base_point(&self, cat: &FiniteCategory, a: usize, m: usize) -> usize {
        self.objects.iter().position(|&o| o == (cat.identity(a), m)).expect("(id_a, m) is an object")
    }
}

pub fn build_category_atm(cat: &FiniteCategory, t: &SetPresheaf, a: usize, m: usize) -> Result<ElementCategory> {
    t.check_element(cat, a, m)?;
    let mut objects = Vec::new();
    for &eta in cat.outgoing(a) {
        for r in 0..t.sizes[cat.tgt(eta)] {
            if t.restrict(eta, r) == m {
                objects.push((eta, r));
            }
        }
    }
    let obj_index: HashMap<(usize, usize), usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut morphisms = Vec::new();
    let mut beta = Vec::new();
    for (i, &(eta, r)) in objects.iter().enumerate() {
        for &b in cat.outgoing(cat.tgt(eta)) {
            let eta2 = cat.comp(b, eta);
            for r2 in 0..t.sizes[cat.tgt(b)] {
                if t.restrict(b, r2) == r {
                    morphisms.push((i, obj_index[&(eta2, r2)]));
                    beta.push(b);
                }
            }
        }
    }
    let mor_index: HashMap<(usize, usize), usize> =
        morphisms.iter().zip(&beta).enumerate().map(|(i, (&(s, _), &b))| ((s, b), i)).collect();
    let identity = objects
        .iter()
        .enumerate()
        .map(|(i, &(eta, _))| mor_index[&(i, cat.identity(cat.tgt(eta)))])
        .collect();
    let category = FiniteCategory::build_unchecked(objects.len(), &morphisms, identity, |g, f| {
        mor_index[&(morphisms[f].0, cat.comp(beta[g], beta[f]))]
    });
    Ok(ElementCategory { category, objects, beta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn interval() -> Arc<FiniteCategory> {
        let rel: BTreeSet<_> = [(0, 0), (0, 1), (1, 1)].into_iter().collect();
        Arc::new(FiniteCategory::poset(2, &rel).unwrap())
    }

    #[test]
    fn factorization_category_sizes() {
        let t = build_factorization_category(Arc::new(FiniteCategory::terminal()));
        assert_eq!(t.category, FiniteCategory::terminal());

        let i = interval();
        let fc = build_factorization_category(i.clone());
        assert!(fc.category.validate().is_valid());
        assert_eq!(fc.category.n_objects(), 3);
        // morphisms 0 = id_a, 1 = α_ab, 2 = id_b
        assert_eq!(fc.category.hom(0, 1).count(), 1);

        let z2 = Arc::new(FiniteCategory::cyclic_group(2));
        let fc = build_factorization_category(z2);
        assert!(fc.category.validate().is_valid());
        assert_eq!(fc.category.n_objects(), 2);
        // pairs (ν, ψ) with ψν = e
        assert_eq!(fc.category.hom(0, 0).count(), 2);
    }

    #[test]
    fn constant_systems() {
        let i = interval();
        for (ring, rank) in [(Ring::Integers, 1), (Ring::Integers, 0), (Ring::Prime(3), 2)] {
            let d = natsys_constant(i.clone(), ring, rank);
            assert!(d.validate().is_valid());
            assert_eq!(d.post(1, 0), &IntMatrix::identity(rank));
        }
    }

    #[test]
    fn scaled_identity_action_is_invalid() {
        let i = interval();
        let d = natsys_constant(i, Ring::Integers, 1).with_post(0, 0, IntMatrix::scalar(1, 2));
        let report = d.validate();
        assert!(report.violations.iter().any(|v| v.contains("id_*")), "{report}");
    }

    #[test]
    fn functor_coefficients() {
        let i = interval();
        let contra = FunctorCoefficients::Contravariant { ranks: vec![1, 1], maps: vec![IntMatrix::identity(1); 3] };
        let d = natsys_from_functor(i.clone(), Ring::Integers, &contra).unwrap();
        assert_eq!(d, natsys_constant(i.clone(), Ring::Integers, 1));
        let cov = FunctorCoefficients::Covariant { ranks: vec![1, 1], maps: vec![IntMatrix::identity(1); 3] };
        assert_eq!(natsys_from_functor(i.clone(), Ring::Integers, &cov).unwrap(), natsys_constant(i, Ring::Integers, 1));
    }

    #[test]
    fn group_algebra_bimodule() {
        let z2 = Arc::new(FiniteCategory::cyclic_group(2));
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let perm = |g: usize| if g == 0 { IntMatrix::identity(2) } else { swap.clone() };
        let data = FunctorCoefficients::Bifunctor {
            ranks: vec![vec![2]],
            left: (0..2).map(|g| vec![perm(g)]).collect(),
            right: vec![(0..2).map(perm).collect()],
        };
        let d = natsys_from_functor(z2, Ring::Integers, &data).unwrap();
        assert_eq!(d.rank(1), 2);
    }

    #[test]
    fn non_functor_is_rejected() {
        let z2 = Arc::new(FiniteCategory::cyclic_group(2));
        let data = FunctorCoefficients::Covariant { ranks: vec![1], maps: vec![IntMatrix::identity(1), IntMatrix::scalar(1, 2)] };
        assert!(matches!(natsys_from_functor(z2, Ring::Integers, &data), Err(Error::NotAFunctor(_))));
    }

    #[test]
    fn pullbacks() {
        let i = interval();
        let d = natsys_constant(i.clone(), Ring::Integers, 1);
        assert_eq!(natsys_pullback(&CatFunctor::identity(i.clone()), &d).unwrap(), d);
        let t = Arc::new(FiniteCategory::terminal());
        let dt = natsys_constant(t, Ring::Integers, 1);
        let back = natsys_pullback(&CatFunctor::to_terminal(i.clone()), &dt).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn lemma44_on_interval() {
        let i = interval();
        let t = SetPresheaf::representable(&i, 1);
        // T(a) = Hom(a, b) = {α_ab}, element 0
        let d = natsys_lemma44(i.clone(), &t, 0, 0, 1, Ring::Integers).unwrap();
        assert_eq!(d.rank(0), 1);
        let e = build_category_atm(&i, &t, 0, 0).unwrap();
        assert_eq!(e.category.n_objects(), 2);
        assert!(e.category.validate().is_valid());
        assert_eq!(e.category.initial_objects(), vec![e.base_point(&i, 0, 0)]);
        assert!(matches!(natsys_lemma44(i, &t, 0, 3, 1, Ring::Integers), Err(Error::ElementNotInT { .. })));
    }

    #[test]
    fn lemma44_on_terminal() {
        let c = Arc::new(FiniteCategory::terminal());
        let t = SetPresheaf::terminal(&c);
        let d = natsys_lemma44(c.clone(), &t, 0, 0, 1, Ring::Integers).unwrap();
        assert_eq!(d, natsys_constant(c.clone(), Ring::Integers, 1));
        assert_eq!(build_category_atm(&c, &t, 0, 0).unwrap().category, FiniteCategory::terminal());
    }
}
