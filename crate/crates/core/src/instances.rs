//! Named example diagrams and seeded random generators for posets, Galois
//! connections, natural systems and set-valued presheaves.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::fincat::{Adjunction, CatFunctor, FiniteCategory};
use crate::grothendieck::{grothendieck_construction, Diagram};
use crate::homalg::{IntMatrix, Ring};
use crate::natsys::{natsys_constant, natsys_from_functor, FunctorCoefficients, NaturalSystem, SetPresheaf};

/// The poset `{0 < 1}`; morphisms `0 = id₀`, `1 = (0 ≤ 1)`, `2 = id₁`.
pub fn interval() -> Arc<FiniteCategory> {
    chain(2)
}

/// The chain `0 < 1 < ⋯ < n−1`.
pub fn chain(n: usize) -> Arc<FiniteCategory> {
    let rel: BTreeSet<_> = (0..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
    Arc::new(FiniteCategory::poset(n, &rel).expect("a chain is a poset"))
}

/// `K = {k₀ → k₁}`, `L(k₀) = {x, y}` discrete, `L(k₁) = {u → v}`, and
/// `L(k₀ → k₁)` sends `x ↦ u`, `y ↦ v`.
pub fn example_a() -> Diagram {
    let k = interval();
    let pair = Arc::new(FiniteCategory::discrete(2));
    let arrow = interval();
    let push = CatFunctor::new(pair.clone(), arrow.clone(), vec![0, 1], vec![0, 2]).expect("x ↦ u, y ↦ v is a functor");
    Diagram::new(k, vec![pair.clone(), arrow.clone()], vec![CatFunctor::identity(pair), push, CatFunctor::identity(arrow)])
        .expect("example A is a diagram")
}

/// `K = Σℤ/2` acting trivially on the terminal category.
pub fn example_b() -> Diagram {
    Diagram::constant(Arc::new(FiniteCategory::cyclic_group(2)), Arc::new(FiniteCategory::terminal()))
}

/// `K = Σℤ/2` acting on the discrete category `{x₀, x₁}` by the swap.
pub fn example_c() -> Diagram {
    let k = Arc::new(FiniteCategory::cyclic_group(2));
    let fib = Arc::new(FiniteCategory::discrete(2));
    let swap = CatFunctor::new(fib.clone(), fib.clone(), vec![1, 0], vec![1, 0]).expect("the swap is a functor");
    Diagram::new(k, vec![fib.clone()], vec![CatFunctor::identity(fib), swap]).expect("example C is a diagram")
}

/// `K = {k₀ → k₁}` with terminal fibers, so `∫L ≅ K`, and the rank-one
/// system over ℤ whose only non-identity action is `a_* = 2` on `D(id_{k₀})`.
pub fn locality_counterexample() -> (Diagram, NaturalSystem) {
    let dg = Diagram::constant(interval(), Arc::new(FiniteCategory::terminal()));
    let groth = grothendieck_construction(&dg);
    let c = groth.category.clone();
    let a = (0..c.n_morphisms()).find(|&m| !c.is_identity(m)).expect("one non-identity arrow");
    let id0 = c.identity(c.src(a));
    let d = natsys_constant(c, Ring::Integers, 1).with_post(a, id0, IntMatrix::scalar(1, 2));
    (dg, d.validated().expect("the counterexample is a natural system"))
}

/// `l: {0 < 1 < 2} → {0 < 1}` with `l(0) = 0`, `l(1) = l(2) = 1`, and its
/// right adjoint `r(0) = 0`, `r(1) = 2`.
pub fn galois_example() -> Adjunction {
    let (c, cp) = (chain(3), interval());
    let obj = vec![0, 1, 1];
    let mor = (0..c.n_morphisms())
        .map(|m| cp.hom(obj[c.src(m)], obj[c.tgt(m)]).next().expect("monotone"))
        .collect();
    let l = CatFunctor::new(c, cp, obj, mor).expect("l is monotone");
    Adjunction::galois(l).expect("l has a right adjoint")
}

/// Reflexive-transitive closure of a relation on `0..n`.
fn closure(n: usize, rel: &mut BTreeSet<(usize, usize)>) {
    for x in 0..n {
        rel.insert((x, x));
    }
    let mut reach = vec![vec![false; n]; n];
    for &(x, y) in rel.iter() {
        reach[x][y] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                let via = reach[k].clone();
                for (r, v) in reach[i].iter_mut().zip(via) {
                    *r |= v;
                }
            }
        }
    }
    for (i, row) in reach.iter().enumerate() {
        for (j, &r) in row.iter().enumerate() {
            if r {
                rel.insert((i, j));
            }
        }
    }
}

/// Random poset on `1..=max_n` points; relations only go from smaller to
/// larger labels, so the result is antisymmetric.
pub fn random_poset(rng: &mut impl Rng, max_n: usize) -> Arc<FiniteCategory> {
    let n = rng.gen_range(1..=max_n);
    let mut rel = BTreeSet::new();
    for x in 0..n {
        for y in x + 1..n {
            if rng.gen_bool(0.4) {
                rel.insert((x, y));
            }
        }
    }
    closure(n, &mut rel);
    Arc::new(FiniteCategory::poset(n, &rel).expect("closure of a forward relation is a partial order"))
}

/// Random poset whose object 0 is below everything.
pub fn random_poset_with_bottom(rng: &mut impl Rng, max_n: usize) -> Arc<FiniteCategory> {
    let n = rng.gen_range(1..=max_n);
    let mut rel: BTreeSet<(usize, usize)> = (0..n).map(|y| (0, y)).collect();
    for x in 1..n {
        for y in x + 1..n {
            if rng.gen_bool(0.4) {
                rel.insert((x, y));
            }
        }
    }
    closure(n, &mut rel);
    Arc::new(FiniteCategory::poset(n, &rel).expect("closure of a forward relation is a partial order"))
}

fn leq(cat: &FiniteCategory, x: usize, y: usize) -> Option<usize> {
    cat.hom(x, y).next()
}

/// Random monotone map between random posets that has a right adjoint,
/// found by rejection sampling.
pub fn random_galois_connection(rng: &mut impl Rng, max_n: usize) -> Adjunction {
    loop {
        let (a, b) = (random_poset(rng, max_n), random_poset(rng, max_n));
        for _ in 0..50 {
            let obj: Vec<usize> = (0..a.n_objects()).map(|_| rng.gen_range(0..b.n_objects())).collect();
            let Some(mor) = (0..a.n_morphisms())
                .map(|m| leq(&b, obj[a.src(m)], obj[a.tgt(m)]))
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            let l = CatFunctor { src: a.clone(), tgt: b.clone(), obj_map: obj, mor_map: mor };
            if let Some(adj) = Adjunction::galois(l) {
                return adj;
            }
        }
    }
}

/// Rank ≤ 1 functor on a poset supported on an up-set (covariant) or a
/// down-set (contravariant), with `x ≤ y` acting by the product of random
/// weights over `↓y ∖ ↓x` (resp. `↑x ∖ ↑y`).
#[derive(Clone, Debug)]
struct LineFunctor {
    support: Vec<bool>,
    weight: Vec<i64>,
    covariant: bool,
}

impl LineFunctor {
    fn random(rng: &mut impl Rng, cat: &FiniteCategory, covariant: bool) -> Self {
        let n = cat.n_objects();
        let weight = (0..n).map(|_| *[1, 1, 1, -1, 2, 0, 3].choose(rng).unwrap()).collect();
        let support = if rng.gen_bool(0.5) {
            vec![true; n]
        } else {
            let seed = rng.gen_range(0..n);
            (0..n)
                .map(|x| if covariant { leq(cat, seed, x).is_some() } else { leq(cat, x, seed).is_some() })
                .collect()
        };
        LineFunctor { support, weight, covariant }
    }

    fn rank(&self, x: usize) -> usize {
        usize::from(self.support[x])
    }

    /// Scalar for `x ≤ y` (read in the functor's direction).
    fn scalar(&self, cat: &FiniteCategory, x: usize, y: usize) -> i64 {
        (0..cat.n_objects())
            .filter(|&z| {
                if self.covariant {
                    leq(cat, z, y).is_some() && leq(cat, z, x).is_none()
                } else {
                    leq(cat, x, z).is_some() && leq(cat, y, z).is_none()
                }
            })
            .map(|z| self.weight[z])
            .product()
    }
}

/// Random natural system of rank ≤ 2 on a poset, a sum of one or two
/// products `A(x) ⊗ B(y)` of a contravariant and a covariant line functor.
pub fn random_natural_system(rng: &mut impl Rng, cat: Arc<FiniteCategory>, ring: Ring) -> NaturalSystem {
    let n = cat.n_objects();
    let terms: Vec<(LineFunctor, LineFunctor)> = (0..rng.gen_range(1..=2))
        .map(|_| (LineFunctor::random(rng, &cat, false), LineFunctor::random(rng, &cat, true)))
        .collect();
    let present = |x: usize, y: usize| -> Vec<usize> {
        (0..terms.len()).filter(|&i| terms[i].0.rank(x) * terms[i].1.rank(y) == 1).collect()
    };
    let block = |from: &[usize], to: &[usize], scalar: &dyn Fn(usize) -> i64| {
        let mut m = IntMatrix::zeros(to.len(), from.len());
        for (r, i) in to.iter().enumerate() {
            if let Some(c) = from.iter().position(|j| j == i) {
                m.set(r, c, scalar(*i).into());
            }
        }
        m
    };
    let ranks = (0..n).map(|x| (0..n).map(|y| present(x, y).len()).collect()).collect();
    let left = (0..cat.n_morphisms())
        .map(|nu| {
            let (x2, x) = (cat.src(nu), cat.tgt(nu));
            (0..n).map(|y| block(&present(x, y), &present(x2, y), &|i| terms[i].0.scalar(&cat, x2, x))).collect()
        })
        .collect();
    let right = (0..n)
        .map(|x| {
            (0..cat.n_morphisms())
                .map(|psi| {
                    let (y, y2) = (cat.src(psi), cat.tgt(psi));
                    block(&present(x, y), &present(x, y2), &|i| terms[i].1.scalar(&cat, y, y2))
                })
                .collect()
        })
        .collect();
    natsys_from_functor(cat, ring, &FunctorCoefficients::Bifunctor { ranks, left, right })
        .expect("products of line functors form a bifunctor")
}

/// Random presheaf of sets on a poset with `|T(x)| ≤ 3`: a disjoint union
/// of up to three terminal or representable pieces.
pub fn random_presheaf(rng: &mut impl Rng, cat: &FiniteCategory) -> SetPresheaf {
    let parts: Vec<SetPresheaf> = (0..rng.gen_range(1..=3))
        .map(|_| {
            if rng.gen_bool(0.3) {
                SetPresheaf::terminal(cat)
            } else {
                SetPresheaf::representable(cat, rng.gen_range(0..cat.n_objects()))
            }
        })
        .collect();
    disjoint_union(cat, &parts)
}

pub fn disjoint_union(cat: &FiniteCategory, parts: &[SetPresheaf]) -> SetPresheaf {
    let sizes: Vec<usize> = (0..cat.n_objects()).map(|x| parts.iter().map(|p| p.sizes[x]).sum()).collect();
    let maps = (0..cat.n_morphisms())
        .map(|f| {
            let (x, y) = (cat.src(f), cat.tgt(f));
            let (mut off_x, mut out) = (0, Vec::new());
            for p in parts {
                out.extend(p.maps[f].iter().map(|&v| v + off_x));
                off_x += p.sizes[x];
            }
            debug_assert_eq!(out.len(), sizes[y]);
            out
        })
        .collect();
    SetPresheaf { sizes, maps }
}

/// `ℤ/n` acting on itself by translation, as a presheaf on `Σℤ/n`.
pub fn regular_presheaf(n: usize) -> SetPresheaf {
    SetPresheaf { sizes: vec![n], maps: (0..n).map(|g| (0..n).map(|r| (r + g) % n).collect()).collect() }
}

/// A random instance `(C, T, a, m)` for the vanishing lemma: a poset with a
/// random presheaf, or a cyclic group acting on a small set.
pub fn random_lemma44_instance(rng: &mut impl Rng, max_n: usize) -> (Arc<FiniteCategory>, SetPresheaf, usize, usize) {
    if rng.gen_bool(0.2) {
        let n = rng.gen_range(2..=3);
        let cat = Arc::new(FiniteCategory::cyclic_group(n));
        let t = if rng.gen_bool(0.5) {
            regular_presheaf(n)
        } else {
            SetPresheaf { sizes: vec![2], maps: vec![vec![0, 1]; n] }
        };
        let m = rng.gen_range(0..t.sizes[0]);
        return (cat, t, 0, m);
    }
    loop {
        let cat = random_poset(rng, max_n);
        let t = random_presheaf(rng, &cat);
        let a = rng.gen_range(0..cat.n_objects());
        if t.sizes[a] > 0 {
            let m = rng.gen_range(0..t.sizes[a]);
            return (cat, t, a, m);
        }
    }
}

/// Random monotone map between posets; falls back to a constant map.
pub fn random_monotone(rng: &mut impl Rng, a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> CatFunctor {
    let build = |obj: Vec<usize>| -> Option<CatFunctor> {
        let mor = (0..a.n_morphisms()).map(|m| leq(b, obj[a.src(m)], obj[a.tgt(m)])).collect::<Option<Vec<_>>>()?;
        Some(CatFunctor { src: a.clone(), tgt: b.clone(), obj_map: obj, mor_map: mor })
    };
    for _ in 0..50 {
        let obj = (0..a.n_objects()).map(|_| rng.gen_range(0..b.n_objects())).collect();
        if let Some(f) = build(obj) {
            return f;
        }
    }
    let y = rng.gen_range(0..b.n_objects());
    build(vec![y; a.n_objects()]).expect("constant maps are monotone")
}

/// Random diagram over the chain `0 < ⋯ < n−1` (`n ≤ max_base`) with random
/// poset fibers of at most `max_fiber` points and random monotone transition maps.
pub fn random_chain_diagram(rng: &mut impl Rng, max_base: usize, max_fiber: usize) -> Diagram {
    let n = rng.gen_range(1..=max_base);
    let k = chain(n);
    let fibers: Vec<Arc<FiniteCategory>> = (0..n).map(|_| random_poset(rng, max_fiber)).collect();
    let covers: Vec<CatFunctor> = (1..n).map(|i| random_monotone(rng, &fibers[i - 1], &fibers[i])).collect();
    let on_mor = (0..k.n_morphisms())
        .map(|m| {
            let (x, y) = (k.src(m), k.tgt(m));
            (x..y).fold(CatFunctor::identity(fibers[x].clone()), |acc, i| covers[i].after(&acc))
        })
        .collect();
    Diagram::new(k, fibers, on_mor).expect("composites of monotone maps along a chain form a diagram")
}
