//! Property tests for the algebraic invariants.

mod common;

use std::sync::Arc;

use catcoh::bw::bw_cochain;
use catcoh::fincat::FiniteCategory;
use catcoh::grothendieck::{
    bar_system, fiber_data, forgetful_ik, grothendieck_construction, is_h_local, is_local, thomason_tilde,
    tilde_on_morphism,
};
use catcoh::homalg::{AbInvariants, IntMatrix, Ring};
use catcoh::instances::{random_chain_diagram, random_monotone, random_natural_system, random_poset};
use catcoh::natsys::{natsys_constant, natsys_pullback};
use catcoh::spectral::{build_bicomplex_thm1, check_theorem1, spectral_pages, total_complex};
use common::{brute_force_f2_dim, complex, random_complex, snf_postconditions};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f2() -> Ring {
    Ring::fp(2).unwrap()
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (0usize..=8, 0usize..=8).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| IntMatrix::from_i64(r, c, &v))
    })
}

fn dims(h: &[AbInvariants]) -> Vec<usize> {
    h.iter().map(|x| x.free_rank).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_postconditions(m in matrix()) {
        prop_assert_eq!(snf_postconditions(&m), Ok(()));
    }

    #[test]
    fn field_cohomology_matches_enumeration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (ranks, diffs) = random_complex(&mut rng, 3, 8);
        let cx = complex(f2(), &ranks, &diffs);
        for n in 0..3 {
            prop_assert_eq!(cx.cohomology_at(n).unwrap().free_rank, brute_force_f2_dim(&ranks, &diffs, n));
        }
    }

    #[test]
    fn universal_coefficients(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (ranks, diffs) = random_complex(&mut rng, 4, 10);
        let integral = complex(Ring::Integers, &ranks, &diffs);
        let h = integral.cohomology();
        let hp = integral.over(Ring::fp(p).unwrap()).cohomology();
        // H^n(C ⊗ F_p) = H^n ⊗ F_p ⊕ Tor(H^{n+1}, F_p), read where both are trusted
        for n in 0..h.len() - 1 {
            let expected = h[n].free_rank + h[n].p_torsion_count(p) + h[n + 1].p_torsion_count(p);
            prop_assert_eq!(hp[n].free_rank, expected);
        }
    }

    #[test]
    fn random_systems_are_valid_and_square_to_zero(seed in any::<u64>(), field in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cat = random_poset(&mut rng, 4);
        let ring = if field { f2() } else { Ring::Integers };
        let d = random_natural_system(&mut rng, cat, ring);
        prop_assert!(d.validate().is_valid());
        prop_assert!(bw_cochain(&d, 3).unwrap().complex.is_complex());
    }

    #[test]
    fn pullback_along_composite(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_poset(&mut rng, 3), random_poset(&mut rng, 3), random_poset(&mut rng, 3));
        let f = random_monotone(&mut rng, &a, &b);
        let g = random_monotone(&mut rng, &b, &c);
        let gf = g.after(&f);
        prop_assert!(gf.validate().is_valid());
        let d = random_natural_system(&mut rng, c, Ring::Integers);
        let once = natsys_pullback(&gf, &d).unwrap();
        let twice = natsys_pullback(&f, &natsys_pullback(&g, &d).unwrap()).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn identity_functor_pulls_back_to_itself(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cat = random_poset(&mut rng, 4);
        let d = random_natural_system(&mut rng, cat.clone(), Ring::Integers);
        let id = catcoh::fincat::CatFunctor::identity(cat);
        prop_assert_eq!(natsys_pullback(&id, &d).unwrap(), d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn bicomplex_identities_and_pages(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dg = random_chain_diagram(&mut rng, 3, 3);
        let groth = grothendieck_construction(&dg);
        let d = random_natural_system(&mut rng, groth.category.clone(), f2());
        let b = build_bicomplex_thm1(&dg, &d, 3).unwrap();
        let identities = b.check_identities();
        prop_assert!(identities.passed(), "{}", identities);
        let tot = total_complex(&b).unwrap();
        prop_assert!(tot.is_complex());
        let pages = spectral_pages(&b, &tot, 4).unwrap();
        for w in pages.windows(2) {
            for e in &w[1].entries {
                prop_assert!(e.dim <= w[0].dim(e.p, e.q).unwrap());
            }
        }
        // the abutment of the last page is the cohomology of the total complex
        let last = pages.last().unwrap();
        let h = dims(&tot.cohomology());
        for (n, hn) in h.iter().enumerate() {
            let diag: Vec<_> = last.entries.iter().filter(|e| e.p + e.q == n).collect();
            if diag.iter().all(|e| e.stable) {
                prop_assert_eq!(diag.iter().map(|e| e.dim).sum::<usize>(), *hn);
            }
        }
        let thm1 = check_theorem1(&dg, &d, 3).unwrap();
        prop_assert!(thm1.passed(), "{}", thm1);
    }

    #[test]
    fn local_implies_h_local(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dg = random_chain_diagram(&mut rng, 3, 3);
        let groth = grothendieck_construction(&dg);
        let d = random_natural_system(&mut rng, groth.category.clone(), Ring::Integers);
        if is_local(&d, &dg).unwrap() {
            prop_assert!(is_h_local(&d, &dg, 3).unwrap());
        }
        let constant = natsys_constant(groth.category.clone(), Ring::Integers, 1);
        prop_assert!(is_local(&constant, &dg).unwrap());
    }

    #[test]
    fn tilde_functoriality_and_restriction(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dg = random_chain_diagram(&mut rng, 3, 3);
        let groth = grothendieck_construction(&dg);
        let k = &dg.base;
        let tildes: Vec<_> = (0..k.n_objects()).map(|x| thomason_tilde(&dg, x)).collect();
        for gamma in 0..k.n_morphisms() {
            let (s, t) = (k.src(gamma), k.tgt(gamma));
            let lg = tilde_on_morphism(&dg, gamma, &tildes[s], &tildes[t]);
            prop_assert!(lg.validate().is_valid());
            let (is, it) = (forgetful_ik(&dg, &tildes[s], &groth), forgetful_ik(&dg, &tildes[t], &groth));
            prop_assert_eq!(it.after(&lg), is);
        }
        let d = random_natural_system(&mut rng, groth.category.clone(), Ring::Integers);
        for x in 0..k.n_objects() {
            let fd = fiber_data(&dg, &groth, &d, x).unwrap();
            prop_assert_eq!(bar_system(&fd.adjunction, &fd.pulled).unwrap(), fd.restricted);
        }
    }
}

#[test]
fn terminal_category_has_rank_one_strings() {
    let d = natsys_constant(Arc::new(FiniteCategory::terminal()), Ring::Integers, 2);
    assert_eq!(bw_cochain(&d, 4).unwrap().complex.ranks(), &[2, 2, 2, 2, 2]);
}
