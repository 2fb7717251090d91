//! Acceptance suite. Each test prints one `criterion N: pass|fail` line
//! (run with `--nocapture` to see them) and asserts exact equality.

mod common;

use std::path::Path;
use std::sync::Arc;

use catcoh::bw::{bw_cochain, bw_cohomology, check_lemma_4vanish, check_lemma_trivial};
use catcoh::fincat::FiniteCategory;
use catcoh::grothendieck::{
    bar_system, check_lemma_adjuntos, check_prop_muro, fiber_data, grothendieck_construction, is_h_local, is_local,
};
use catcoh::homalg::{AbInvariants, IntMatrix, Ring};
use catcoh::instances::{
    example_a, example_b, example_c, random_galois_connection, random_lemma44_instance, random_natural_system,
    random_poset_with_bottom,
};
use catcoh::natsys::natsys_constant;
use catcoh::report::Status;
use catcoh::spectral::{
    check_theorem2, e2_grid, e2_identify_thm1, phi_map, row_exactness_check, theorem1_data, Grid,
};
use catcoh::workbench::WorkbenchFile;
use common::{brute_force_f2_dim, complex, random_complex, snf_postconditions, verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f2() -> Ring {
    Ring::fp(2).unwrap()
}

#[test]
fn criterion_1_trivial() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut failures = Vec::new();
    for i in 0..60 {
        let cat = random_poset_with_bottom(&mut rng, 6);
        let rank = rng.gen_range(1..=2);
        let h = bw_cohomology(&natsys_constant(cat, Ring::Integers, rank), 4).unwrap();
        let mut expected = vec![AbInvariants::zero(); 4];
        expected[0] = AbInvariants::free(rank);
        if h != expected {
            failures.push(i);
        }
    }
    let ok = verdict("1", failures.is_empty(), format!("60 posets with a bottom, failures {failures:?}"));
    assert!(ok);
}

#[test]
fn criterion_1_report_agrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let cat = random_poset_with_bottom(&mut rng, 6);
        assert!(check_lemma_trivial(cat, Ring::Integers, 2, 4).unwrap().passed());
    }
}

#[test]
fn criterion_2_4vanish() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = Vec::new();
    for i in 0..25 {
        let (cat, t, a, m) = random_lemma44_instance(&mut rng, 5);
        assert!(t.sizes.iter().all(|&s| s <= 3));
        let rank = rng.gen_range(1..=2);
        let ring = if i % 2 == 0 { Ring::Integers } else { f2() };
        let report = check_lemma_4vanish(cat, &t, a, m, rank, ring, 3).unwrap();
        if !report.passed() {
            failures.push(report.to_string());
        }
    }
    let ok = verdict("2", failures.is_empty(), format!("25 instances, {} failures", failures.len()));
    assert!(ok, "{failures:#?}");
}

fn galois_suite(seed: u64, check: impl Fn(&catcoh::fincat::Adjunction, &mut ChaCha8Rng, Ring) -> bool) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..24 {
        let adj = random_galois_connection(&mut rng, 5);
        for ring in [Ring::Integers, f2()] {
            if !check(&adj, &mut rng, ring) {
                failures.push(format!("instance {i} over {ring}"));
            }
        }
    }
    failures
}

#[test]
fn criterion_3_muro() {
    let failures = galois_suite(3, |adj, rng, ring| {
        let e = random_natural_system(rng, adj.source().clone(), ring);
        check_prop_muro(adj, &e, 3).unwrap().passed()
    });
    let ok = verdict("3 (muro)", failures.is_empty(), format!("24 Galois connections over Z and F_2, failures {failures:?}"));
    assert!(ok);
}

#[test]
fn criterion_3_adjuntos() {
    let failures = galois_suite(3, |adj, rng, ring| {
        let g = random_natural_system(rng, adj.target().clone(), ring);
        check_lemma_adjuntos(adj, &g, 3).unwrap().passed()
    });
    let ok = verdict("3 (adjuntos)", failures.is_empty(), format!("24 Galois connections over Z and F_2, failures {failures:?}"));
    assert!(ok, "H^*(A, l^*G) differs from H^*(B, G) on {} of 48 instances", failures.len());
}

#[test]
fn criterion_4_fiber_comparison() {
    let mut lines = Vec::new();
    for (name, dg) in [("B", example_b()), ("C", example_c())] {
        let groth = grothendieck_construction(&dg);
        for ring in [Ring::Integers, f2()] {
            let d = natsys_constant(groth.category.clone(), ring, 1);
            for k in 0..dg.base.n_objects() {
                let fd = fiber_data(&dg, &groth, &d, k).unwrap();
                let bar = bar_system(&fd.adjunction, &fd.pulled).unwrap();
                let same_system = bar == fd.restricted;
                let lhs = bw_cochain(&fd.restricted, 4).unwrap().complex.cohomology();
                let rhs = bw_cochain(&fd.tilde_system, 4).unwrap().complex.cohomology();
                let muro = check_prop_muro(&fd.adjunction, &fd.pulled, 4).unwrap().passed();
                if !(same_system && lhs == rhs && muro) {
                    lines.push(format!("{name} over {ring} at k = {k}: {lhs:?} vs {rhs:?}"));
                }
            }
        }
    }
    let ok = verdict("4", lines.is_empty(), "examples B and C over Z and F_2");
    assert!(ok, "{lines:#?}");
}

#[test]
fn criterion_5_theorem1_structure() {
    let mut problems = Vec::new();
    for (name, dg) in [("A", example_a()), ("B", example_b()), ("C", example_c())] {
        let groth = grothendieck_construction(&dg);
        let d = natsys_constant(groth.category.clone(), f2(), 1);
        let data = theorem1_data(&dg, &d, 5, 6, usize::MAX).unwrap();
        let b = &data.bicomplex;
        let identities = b.check_identities();
        if !identities.passed() {
            problems.push(format!("{name}: {identities}"));
        }
        let (_, phi) = phi_map(b, &data.total).unwrap();
        if !phi.passed() {
            problems.push(format!("{name}: {phi}"));
        }
        let rows = row_exactness_check(b);
        if !rows.passed() {
            problems.push(format!("{name}: {rows}"));
        }
        let spectral: Grid = e2_grid(&data.pages, 5).unwrap();
        let fibers = e2_identify_thm1(&dg, &d, 5).unwrap();
        if spectral != fibers {
            problems.push(format!("{name}: E_2 {spectral:?} vs {fibers:?}"));
        }
    }
    let ok = verdict("5", problems.is_empty(), "examples A, B, C over F_2 with N = 5");
    assert!(ok, "{problems:#?}");
}

#[test]
fn criterion_6_theorem2() {
    let mut problems = Vec::new();
    for (name, dg, expected) in [("B", example_b(), vec![1; 5]), ("C", example_c(), vec![1, 0, 0, 0, 0])] {
        let d = natsys_constant(grothendieck_construction(&dg).category.clone(), f2(), 1);
        if !is_local(&d, &dg).unwrap() {
            problems.push(format!("{name}: constant system reported non-local"));
        }
        let out = check_theorem2(&dg, &d, 5).unwrap();
        if out.report.status != Status::Pass {
            problems.push(format!("{name}: {}", out.report));
        }
        if out.e2_fibers.is_none() || out.e2_fibers != out.e2_spectral {
            problems.push(format!("{name}: E_2 {:?} vs {:?}", out.e2_fibers, out.e2_spectral));
        }
        if out.abutment != expected || out.cohomology[..5] != expected[..] {
            problems.push(format!("{name}: abutment {:?}, H^* {:?}", out.abutment, out.cohomology));
        }
    }
    let ok = verdict("6", problems.is_empty(), "examples B and C over F_2 with N = 5");
    assert!(ok, "{problems:#?}");
}

#[test]
fn criterion_7_locality_counterexample() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/locality.json");
    let wb = WorkbenchFile::load(&path).unwrap().resolve().unwrap();
    let (dg, d) = (&wb.diagrams["K"], &wb.systems["D"]);
    let local = is_local(d, dg).unwrap();
    let h_local = is_h_local(d, dg, 3).unwrap();
    let status = check_theorem2(dg, d, 3).unwrap().report.status;
    let ok = verdict(
        "7",
        !local && !h_local && status == Status::HypothesisFails,
        format!("local {local}, h-local {h_local}, theorem2 {status}"),
    );
    assert!(ok);
}

#[test]
fn criterion_8_homalg_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut problems = Vec::new();
    for i in 0..500 {
        let (r, c) = (rng.gen_range(0..=7), rng.gen_range(0..=7));
        let sparse = rng.gen_bool(0.3);
        let values: Vec<i64> =
            (0..r * c).map(|_| if sparse && rng.gen_bool(0.6) { 0 } else { rng.gen_range(-9..=9) }).collect();
        if let Err(e) = snf_postconditions(&IntMatrix::from_i64(r, c, &values)) {
            problems.push(format!("matrix {i}: {e}"));
        }
    }
    for i in 0..60 {
        let (ranks, diffs) = random_complex(&mut rng, 3, 9);
        let cx = complex(f2(), &ranks, &diffs);
        for n in 0..3 {
            let dim = cx.cohomology_at(n).unwrap().free_rank;
            let brute = brute_force_f2_dim(&ranks, &diffs, n);
            if dim != brute {
                problems.push(format!("complex {i} degree {n}: {dim} vs {brute}"));
            }
        }
    }
    let ok = verdict("8", problems.is_empty(), "500 SNF postconditions, 60 complexes against enumeration");
    assert!(ok, "{problems:#?}");
}

#[test]
fn criterion_9_group_cohomology() {
    let mut problems = Vec::new();
    for n in [2u64, 3] {
        let g = Arc::new(FiniteCategory::cyclic_group(n as usize));
        let h = bw_cohomology(&natsys_constant(g, Ring::Integers, 1), 5).unwrap();
        let expected: Vec<AbInvariants> = (0..5)
            .map(|i| match i {
                0 => AbInvariants::free(1),
                i if i % 2 == 0 => AbInvariants::cyclic(n),
                _ => AbInvariants::zero(),
            })
            .collect();
        if h != expected {
            problems.push(format!("Z/{n}: {h:?}"));
        }
    }
    let ok = verdict("9", problems.is_empty(), "Z/2 and Z/3 with constant Z, N = 5");
    assert!(ok, "{problems:#?}");
}
