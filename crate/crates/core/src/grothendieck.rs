//! Grothendieck constructions `∫_K L`, Thomason's categories `L̃(k)`, the
//! fiber adjunctions `l_k ⊣ r_k`, and the induced natural systems.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bw::{bw_cochain, induced_cochain_map, natsys_cochain_map, table};
use crate::error::{Error, Result};
use crate::fincat::{Adjunction, CatFunctor, FiniteCategory, ValidationReport};
use crate::homalg::{cone_acyclic, ConeReport, IntMatrix};
use crate::natsys::{matrix_invertible, natsys_pullback, NatSysMap, NaturalSystem};
use crate::report::CheckReport;

/// A strict functor `L: K → Cat` with finite values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub base: Arc<FiniteCategory>,
    pub fibers: Vec<Arc<FiniteCategory>>,
    /// `on_mor[α]: L(src α) → L(tgt α)`.
    pub on_mor: Vec<CatFunctor>,
}

impl Diagram {
    pub fn new(base: Arc<FiniteCategory>, fibers: Vec<Arc<FiniteCategory>>, on_mor: Vec<CatFunctor>) -> Result<Self> {
        let d = Diagram { base, fibers, on_mor };
        let report = d.validate();
        if report.is_valid() {
            Ok(d)
        } else {
            Err(Error::InvalidDiagram(report))
        }
    }

    /// `L` constant at `fiber` with identity transition functors.
    pub fn constant(base: Arc<FiniteCategory>, fiber: Arc<FiniteCategory>) -> Self {
        let fibers = vec![fiber.clone(); base.n_objects()];
        let on_mor = vec![CatFunctor::identity(fiber); base.n_morphisms()];
        Diagram { base, fibers, on_mor }
    }

    pub fn fiber(&self, k: usize) -> &Arc<FiniteCategory> {
        &self.fibers[k]
    }

    pub fn functor(&self, alpha: usize) -> &CatFunctor {
        &self.on_mor[alpha]
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let k = &*self.base;
        if self.fibers.len() != k.n_objects() || self.on_mor.len() != k.n_morphisms() {
            report.push("diagram data has wrong lengths");
            return report;
        }
        for (i, fib) in self.fibers.iter().enumerate() {
            report.extend_prefixed(&format!("L({i})"), fib.validate());
        }
        for (a, f) in self.on_mor.iter().enumerate() {
            if *f.src != *self.fibers[k.src(a)] || *f.tgt != *self.fibers[k.tgt(a)] {
                report.push(format!("L({a}) does not run L({}) → L({})", k.src(a), k.tgt(a)));
                continue;
            }
            report.extend_prefixed(&format!("L({a})"), f.validate());
        }
        if !report.is_valid() {
            return report;
        }
        for x in 0..k.n_objects() {
            if !self.on_mor[k.identity(x)].is_identity() {
                report.push(format!("L(id_{x}) is not the identity functor"));
            }
        }
        for (g, f, h) in k.composition_triples() {
            let composite = self.on_mor[g].after(&self.on_mor[f]);
            if composite.obj_map != self.on_mor[h].obj_map || composite.mor_map != self.on_mor[h].mor_map {
                report.push(format!("L({g}∘{f}) != L({g})∘L({f})"));
            }
        }
        report
    }
}

/// Morphism label shared by `∫L` and `L̃(k)`: `(α, ξ)` together with the
/// source and target objects it runs between.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairLabel {
    pub src: usize,
    pub tgt: usize,
    pub base: usize,
    pub fiber: usize,
}

#[derive(Clone, Debug)]
pub struct GrothendieckCategory {
    pub category: Arc<FiniteCategory>,
    /// Object index → `(k, x)`.
    pub objects: Vec<(usize, usize)>,
    pub morphisms: Vec<PairLabel>,
    object_index: HashMap<(usize, usize), usize>,
    morphism_index: HashMap<(usize, usize, usize), usize>,
}

impl GrothendieckCategory {
    pub fn object(&self, k: usize, x: usize) -> usize {
        self.object_index[&(k, x)]
    }

    /// The morphism `(α, ξ)` out of object `src`.
    pub fn morphism(&self, src: usize, alpha: usize, xi: usize) -> usize {
        self.morphism_index[&(src, alpha, xi)]
    }

    /// Projection `∫L → K`.
    pub fn projection(&self, dg: &Diagram) -> CatFunctor {
        CatFunctor {
            src: self.category.clone(),
            tgt: dg.base.clone(),
            obj_map: self.objects.iter().map(|o| o.0).collect(),
            mor_map: self.morphisms.iter().map(|m| m.base).collect(),
        }
    }

    /// The fiber inclusion `L(k) → ∫L`, `ξ ↦ (id_k, ξ)`.
    pub fn fiber_inclusion(&self, dg: &Diagram, k: usize) -> CatFunctor {
        let fib = dg.fiber(k).clone();
        let id = dg.base.identity(k);
        CatFunctor {
            src: fib.clone(),
            tgt: self.category.clone(),
            obj_map: (0..fib.n_objects()).map(|x| self.object(k, x)).collect(),
            mor_map: (0..fib.n_morphisms()).map(|xi| self.morphism(self.object(k, fib.src(xi)), id, xi)).collect(),
        }
    }
}

pub fn grothendieck_construction(dg: &Diagram) -> GrothendieckCategory {
    let k = &*dg.base;
    let objects: Vec<(usize, usize)> =
        (0..k.n_objects()).flat_map(|i| (0..dg.fiber(i).n_objects()).map(move |x| (i, x))).collect();
    let object_index: HashMap<(usize, usize), usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut morphisms = Vec::new();
    for (s, &(k0, x0)) in objects.iter().enumerate() {
        for &alpha in k.outgoing(k0) {
            let k1 = k.tgt(alpha);
            let fib = dg.fiber(k1);
            for &xi in fib.outgoing(dg.functor(alpha).obj(x0)) {
                morphisms.push(PairLabel { src: s, tgt: object_index[&(k1, fib.tgt(xi))], base: alpha, fiber: xi });
            }
        }
    }
    let morphism_index: HashMap<(usize, usize, usize), usize> =
        morphisms.iter().enumerate().map(|(i, m)| ((m.src, m.base, m.fiber), i)).collect();
    let pairs: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    let identity = objects
        .iter()
        .enumerate()
        .map(|(i, &(k0, x0))| morphism_index[&(i, k.identity(k0), dg.fiber(k0).identity(x0))])
        .collect();
    let category = FiniteCategory::build_unchecked(objects.len(), &pairs, identity, |g, f| {
        let (mg, mf) = (morphisms[g], morphisms[f]);
        // (α, ξ)(α′, ξ′) = (αα′, ξ ∘ L(α)(ξ′))
        let fib = dg.fiber(k.tgt(mg.base));
        let xi = fib.comp(mg.fiber, dg.functor(mg.base).mor(mf.fiber));
        morphism_index[&(mf.src, k.comp(mg.base, mf.base), xi)]
    });
    GrothendieckCategory { category: Arc::new(category), objects, morphisms, object_index, morphism_index }
}

/// Thomason's `L̃(k)`: objects `(α: l → k, x ∈ L(l))`, morphisms
/// `(β, ξ): (α, x) → (α′, x′)` with `α′β = α` and `ξ: L(β)x → x′`.
#[derive(Clone, Debug)]
pub struct TildeCategory {
    pub k: usize,
    pub category: Arc<FiniteCategory>,
    /// Object index → `(α, x)`.
    pub objects: Vec<(usize, usize)>,
    pub morphisms: Vec<PairLabel>,
    object_index: HashMap<(usize, usize), usize>,
    morphism_index: HashMap<(usize, usize, usize, usize), usize>,
}

impl TildeCategory {
    pub fn object(&self, alpha: usize, x: usize) -> usize {
        self.object_index[&(alpha, x)]
    }

    pub fn morphism(&self, src: usize, tgt: usize, beta: usize, xi: usize) -> usize {
        self.morphism_index[&(src, tgt, beta, xi)]
    }
}

pub fn thomason_tilde(dg: &Diagram, k_obj: usize) -> TildeCategory {
    let k = &*dg.base;
    let objects: Vec<(usize, usize)> = k
        .incoming(k_obj)
        .iter()
        .flat_map(|&a| (0..dg.fiber(k.src(a)).n_objects()).map(move |x| (a, x)))
        .collect();
    let object_index: HashMap<(usize, usize), usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut morphisms = Vec::new();
    for (s, &(alpha, x)) in objects.iter().enumerate() {
        for &beta in k.outgoing(k.src(alpha)) {
            let l1 = k.tgt(beta);
            let fib = dg.fiber(l1);
            let lx = dg.functor(beta).obj(x);
            for alpha2 in k.hom(l1, k_obj).filter(|&a2| k.comp(a2, beta) == alpha) {
                for &xi in fib.outgoing(lx) {
                    let t = object_index[&(alpha2, fib.tgt(xi))];
                    morphisms.push(PairLabel { src: s, tgt: t, base: beta, fiber: xi });
                }
            }
        }
    }
    let morphism_index: HashMap<(usize, usize, usize, usize), usize> =
        morphisms.iter().enumerate().map(|(i, m)| ((m.src, m.tgt, m.base, m.fiber), i)).collect();
    let pairs: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    let identity = objects
        .iter()
        .enumerate()
        .map(|(i, &(a, x))| {
            let l = k.src(a);
            morphism_index[&(i, i, k.identity(l), dg.fiber(l).identity(x))]
        })
        .collect();
    let category = FiniteCategory::build_unchecked(objects.len(), &pairs, identity, |g, f| {
        let (mg, mf) = (morphisms[g], morphisms[f]);
        let fib = dg.fiber(k.tgt(mg.base));
        let xi = fib.comp(mg.fiber, dg.functor(mg.base).mor(mf.fiber));
        morphism_index[&(mf.src, mg.tgt, k.comp(mg.base, mf.base), xi)]
    });
    TildeCategory { k: k_obj, category: Arc::new(category), objects, morphisms, object_index, morphism_index }
}

/// `L̃(γ): L̃(k) → L̃(k′)`, `(α, x) ↦ (γα, x)`, `(β, ξ) ↦ (β, ξ)`.
pub fn tilde_on_morphism(dg: &Diagram, gamma: usize, src: &TildeCategory, tgt: &TildeCategory) -> CatFunctor {
    let k = &*dg.base;
    debug_assert_eq!((src.k, tgt.k), (k.src(gamma), k.tgt(gamma)));
    let obj_map: Vec<usize> = src.objects.iter().map(|&(a, x)| tgt.object(k.comp(gamma, a), x)).collect();
    let mor_map = src
        .morphisms
        .iter()
        .map(|m| tgt.morphism(obj_map[m.src], obj_map[m.tgt], m.base, m.fiber))
        .collect();
    CatFunctor { src: src.category.clone(), tgt: tgt.category.clone(), obj_map, mor_map }
}

/// `i_k: L̃(k) → ∫L`, `(α: l → k, x) ↦ (l, x)`.
pub fn forgetful_ik(dg: &Diagram, tilde: &TildeCategory, groth: &GrothendieckCategory) -> CatFunctor {
    let k = &*dg.base;
    let obj_map: Vec<usize> = tilde.objects.iter().map(|&(a, x)| groth.object(k.src(a), x)).collect();
    let mor_map = tilde.morphisms.iter().map(|m| groth.morphism(obj_map[m.src], m.base, m.fiber)).collect();
    CatFunctor { src: tilde.category.clone(), tgt: groth.category.clone(), obj_map, mor_map }
}

/// `l_k ⊣ r_k` between `L̃(k)` and `L(k)`: `l_k(α, x) = L(α)x`,
/// `r_k(y) = (id_k, y)`, unit `(α, id_{L(α)x})`.
pub fn adjoint_lr(dg: &Diagram, tilde: &TildeCategory) -> Result<Adjunction> {
    let k = &*dg.base;
    let ko = tilde.k;
    let fib = dg.fiber(ko).clone();
    let l_obj: Vec<usize> = tilde.objects.iter().map(|&(a, x)| dg.functor(a).obj(x)).collect();
    let l_mor = tilde
        .morphisms
        .iter()
        .map(|m| {
            let (a2, _) = tilde.objects[m.tgt];
            dg.functor(a2).mor(m.fiber)
        })
        .collect();
    let l = CatFunctor { src: tilde.category.clone(), tgt: fib.clone(), obj_map: l_obj.clone(), mor_map: l_mor };
    let id = k.identity(ko);
    let r_obj: Vec<usize> = (0..fib.n_objects()).map(|y| tilde.object(id, y)).collect();
    let r_mor = (0..fib.n_morphisms())
        .map(|xi| tilde.morphism(r_obj[fib.src(xi)], r_obj[fib.tgt(xi)], id, xi))
        .collect();
    let r = CatFunctor { src: fib.clone(), tgt: tilde.category.clone(), obj_map: r_obj.clone(), mor_map: r_mor };
    let unit = tilde
        .objects
        .iter()
        .enumerate()
        .map(|(i, &(a, _))| tilde.morphism(i, r_obj[l_obj[i]], a, fib.identity(l_obj[i])))
        .collect();
    Adjunction::new(l, r, unit)
}

/// `D_k(ξ) = D(id_k, ξ)` on `L(k)`.
pub fn restrict_dk(dg: &Diagram, groth: &GrothendieckCategory, d: &NaturalSystem, k: usize) -> Result<NaturalSystem> {
    natsys_pullback(&groth.fiber_inclusion(dg, k), d)
}

/// `Ẽ(α: c → d) = E(ε_d∘α)`, with the comparison `(ε_d)_*: E → Ẽ`.
pub fn tilde_system(adj: &Adjunction, e: &NaturalSystem) -> Result<(NaturalSystem, NatSysMap)> {
    let c = adj.source().clone();
    let rl = adj.r.after(&adj.l);
    let eps = |a: usize| c.comp(adj.unit[c.tgt(a)], a);
    let rank = (0..c.n_morphisms()).map(|a| e.rank(eps(a))).collect();
    let tilde = NaturalSystem::from_fn(
        c.clone(),
        e.ring(),
        rank,
        |psi, a| e.post(rl.mor(psi), eps(a)).clone(),
        |nu, a| e.pre(nu, eps(a)).clone(),
    )
    .validated()?;
    let components = (0..c.n_morphisms()).map(|a| e.post(adj.unit[c.tgt(a)], a).clone()).collect();
    let map = NatSysMap { components };
    let report = map.validate(e, &tilde);
    if !report.is_valid() {
        return Err(Error::InvalidNaturalSystem(report));
    }
    Ok((tilde, map))
}

/// `Ē = r^*E` on the target of the adjunction.
pub fn bar_system(adj: &Adjunction, e: &NaturalSystem) -> Result<NaturalSystem> {
    natsys_pullback(&adj.r, e)
}

/// Components of the cochain map `F^*(C′, Ē) → F^*(C, Ẽ)` induced by `l`:
/// on `α: c → d` it is `(ε_c)^*: E(rl α) → E(rl(α)∘ε_c) = Ẽ(α)`.
pub fn muro_components(adj: &Adjunction, e: &NaturalSystem) -> Vec<IntMatrix> {
    let c = adj.source();
    let rl = adj.r.after(&adj.l);
    (0..c.n_morphisms()).map(|a| e.pre(adj.unit[c.src(a)], rl.mor(a)).clone()).collect()
}

/// Cone of the explicit comparison `F^*(C′, Ē) → F^*(C, Ẽ)`.
pub fn muro_cone(adj: &Adjunction, e: &NaturalSystem, n_max: usize) -> Result<ConeReport> {
    let bar = bar_system(adj, e)?;
    let (tilde, _) = tilde_system(adj, e)?;
    let (b_bar, b_tilde) = (bw_cochain(&bar, n_max)?, bw_cochain(&tilde, n_max)?);
    let comps = muro_components(adj, e);
    let map = induced_cochain_map(&adj.l, &b_bar, &b_tilde, |a| comps[a].clone());
    cone_acyclic(&b_bar.complex, &b_tilde.complex, &map)
}

/// Per-`k` data used by the locality checks and the spectral sequences.
#[derive(Clone, Debug)]
pub struct FiberData {
    pub tilde: TildeCategory,
    pub ik: CatFunctor,
    pub adjunction: Adjunction,
    /// `i_k^*D` on `L̃(k)`.
    pub pulled: NaturalSystem,
    /// `Ẽ_k` on `L̃(k)` with the comparison `i_k^*D → Ẽ_k`.
    pub tilde_system: NaturalSystem,
    pub comparison: NatSysMap,
    /// `D_k` on `L(k)`.
    pub restricted: NaturalSystem,
}

pub fn fiber_data(dg: &Diagram, groth: &GrothendieckCategory, d: &NaturalSystem, k: usize) -> Result<FiberData> {
    let tilde = thomason_tilde(dg, k);
    let ik = forgetful_ik(dg, &tilde, groth);
    let adjunction = adjoint_lr(dg, &tilde)?;
    let pulled = natsys_pullback(&ik, d)?;
    let (tilde_sys, comparison) = tilde_system(&adjunction, &pulled)?;
    let restricted = restrict_dk(dg, groth, d, k)?;
    Ok(FiberData { tilde, ik, adjunction, pulled, tilde_system: tilde_sys, comparison, restricted })
}

/// `i_k^*D → Ẽ_k` is invertible at every morphism of every `L̃(k)`.
pub fn is_local(d: &NaturalSystem, dg: &Diagram) -> Result<bool> {
    let groth = grothendieck_construction(dg);
    for k in 0..dg.base.n_objects() {
        let fd = fiber_data(dg, &groth, d, k)?;
        if !fd.comparison.is_isomorphism(d.ring()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `H^*(L̃(k), i_k^*D) → H^*(L̃(k), Ẽ_k)` is an isomorphism in trusted
/// degrees for every `k`, certified by an acyclic cone.
pub fn is_h_local(d: &NaturalSystem, dg: &Diagram, n_max: usize) -> Result<bool> {
    let groth = grothendieck_construction(dg);
    for k in 0..dg.base.n_objects() {
        if !h_local_cone(&fiber_data(dg, &groth, d, k)?, n_max)?.all_acyclic() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn h_local_cone(fd: &FiberData, n_max: usize) -> Result<ConeReport> {
    let src = bw_cochain(&fd.pulled, n_max)?;
    let tgt = bw_cochain(&fd.tilde_system, n_max)?;
    let map = natsys_cochain_map(&fd.tilde.category, &fd.comparison, &src, &tgt);
    cone_acyclic(&src.complex, &tgt.complex, &map)
}

/// Compares `H^*(C′, Ē)` with `H^*(C, Ẽ)`.
pub fn check_prop_muro(adj: &Adjunction, e: &NaturalSystem, n_max: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("muro", n_max as isize - 1);
    let bar = bar_system(adj, e)?;
    let (tilde, _) = tilde_system(adj, e)?;
    let lhs = bw_cochain(&bar, n_max)?.complex.cohomology();
    let rhs = bw_cochain(&tilde, n_max)?.complex.cohomology();
    report.require(lhs == rhs, format!("H^*(C′, Ē) = {} but H^*(C, Ẽ) = {}", table(&lhs), table(&rhs)));
    report.note(format!("H^* = {}", table(&lhs)));
    let cone = muro_cone(adj, e, n_max)?;
    report.note(format!("explicit comparison induced by l is a quasi-isomorphism: {}", cone.all_acyclic()));
    Ok(report)
}

/// Compares `H^*(A, l^*G)` with `H^*(B, G)` for `l: A → B` left adjoint.
pub fn check_lemma_adjuntos(adj: &Adjunction, g: &NaturalSystem, n_max: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("adjuntos", n_max as isize - 1);
    let pulled = natsys_pullback(&adj.l, g)?;
    let lhs = bw_cochain(&pulled, n_max)?.complex.cohomology();
    let rhs = bw_cochain(g, n_max)?.complex.cohomology();
    report.require(lhs == rhs, format!("H^*(A, l^*G) = {} but H^*(B, G) = {}", table(&lhs), table(&rhs)));
    report.note(format!("H^*(A, l^*G) = {}", table(&lhs)));
    Ok(report)
}

/// Local reading of the comparison: every component `(i_k ε)_*` invertible,
/// reported with the first failing place.
pub fn locality_report(d: &NaturalSystem, dg: &Diagram) -> Result<CheckReport> {
    let mut report = CheckReport::new("local", -1);
    let groth = grothendieck_construction(dg);
    for k in 0..dg.base.n_objects() {
        let fd = fiber_data(dg, &groth, d, k)?;
        for (a, m) in fd.comparison.components.iter().enumerate() {
            if !matrix_invertible(m, d.ring()) {
                report.require(false, format!("comparison not invertible at morphism {a} of L̃({k})"));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::Ring;
    use crate::natsys::natsys_constant;
    use std::collections::BTreeSet;

    fn interval() -> Arc<FiniteCategory> {
        let rel: BTreeSet<_> = [(0, 0), (0, 1), (1, 1)].into_iter().collect();
        Arc::new(FiniteCategory::poset(2, &rel).unwrap())
    }

    fn example_c() -> Diagram {
        let k = Arc::new(FiniteCategory::cyclic_group(2));
        let fib = Arc::new(FiniteCategory::discrete(2));
        let swap = CatFunctor::new(fib.clone(), fib.clone(), vec![1, 0], vec![1, 0]).unwrap();
        Diagram::new(k, vec![fib.clone()], vec![CatFunctor::identity(fib), swap]).unwrap()
    }

    #[test]
    fn terminal_base_recovers_fiber() {
        let dg = Diagram::constant(Arc::new(FiniteCategory::terminal()), interval());
        let g = grothendieck_construction(&dg);
        assert_eq!(*g.category, *interval());
        let t = thomason_tilde(&dg, 0);
        assert_eq!(*t.category, *interval());
    }

    #[test]
    fn example_c_sizes() {
        let dg = example_c();
        let g = grothendieck_construction(&dg);
        assert!(g.category.validate().is_valid());
        assert_eq!((g.category.n_objects(), g.category.n_morphisms()), (2, 4));
        assert!(g.projection(&dg).validate().is_valid());
        let t = thomason_tilde(&dg, 0);
        assert!(t.category.validate().is_valid());
        assert_eq!((t.category.n_objects(), t.category.n_morphisms()), (4, 8));
        let adj = adjoint_lr(&dg, &t).unwrap();
        // l(g, x₀) = x₁
        assert_eq!(adj.l.obj(t.object(1, 0)), 1);
        let ik = forgetful_ik(&dg, &t, &g);
        assert!(ik.validate().is_valid());
        let lg = tilde_on_morphism(&dg, 1, &t, &t);
        assert!(lg.validate().is_valid());
        assert_eq!(ik.after(&lg), ik);
    }

    #[test]
    fn wrong_composition_is_rejected() {
        let k = Arc::new(FiniteCategory::cyclic_group(2));
        let fib = Arc::new(FiniteCategory::discrete(2));
        let swap = CatFunctor::new(fib.clone(), fib.clone(), vec![1, 0], vec![1, 0]).unwrap();
        // L(g) swapped but L(e) also swapped
        let bad = Diagram::new(k, vec![fib], vec![swap.clone(), swap]);
        assert!(matches!(bad, Err(Error::InvalidDiagram(_))));
    }

    #[test]
    fn constant_systems_are_local() {
        let dg = example_c();
        let g = grothendieck_construction(&dg);
        let d = natsys_constant(g.category.clone(), Ring::Integers, 1);
        assert!(is_local(&d, &dg).unwrap());
        assert!(is_h_local(&d, &dg, 3).unwrap());
        let fd = fiber_data(&dg, &g, &d, 0).unwrap();
        assert_eq!(fd.restricted, natsys_constant(dg.fiber(0).clone(), Ring::Integers, 1));
        assert_eq!(bar_system(&fd.adjunction, &fd.pulled).unwrap(), fd.restricted);
    }

    #[test]
    fn muro_on_identity_and_galois() {
        let i = interval();
        let e = natsys_constant(i.clone(), Ring::Integers, 1);
        assert!(check_prop_muro(&Adjunction::identity(i.clone()), &e, 3).unwrap().passed());
        let t = Arc::new(FiniteCategory::terminal());
        let l = CatFunctor::to_terminal(i.clone());
        let adj = Adjunction::galois(l).unwrap();
        assert!(check_prop_muro(&adj, &e, 3).unwrap().passed());
        let g = natsys_constant(t, Ring::Integers, 1);
        assert!(check_lemma_adjuntos(&adj, &g, 3).unwrap().passed());
    }
}
