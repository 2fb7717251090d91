//! Random instances of the vanishing lemmas and the two adjunction
//! statements. The adjunction lemma fails on some instances; the smallest
//! such instance is printed at the end.

use std::sync::Arc;

use catcoh::bw::{check_lemma_4vanish, check_lemma_trivial};
use catcoh::fincat::{Adjunction, CatFunctor, FiniteCategory};
use catcoh::grothendieck::{check_lemma_adjuntos, check_prop_muro};
use catcoh::homalg::{IntMatrix, Ring};
use catcoh::instances::{
    interval, random_galois_connection, random_lemma44_instance, random_natural_system, random_poset_with_bottom,
};
use catcoh::natsys::NaturalSystem;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> catcoh::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut passed = [0; 4];
    for _ in 0..20 {
        let p = random_poset_with_bottom(&mut rng, 6);
        passed[0] += check_lemma_trivial(p, Ring::Integers, 2, 4)?.passed() as usize;
        let (c, t, a, m) = random_lemma44_instance(&mut rng, 5);
        passed[1] += check_lemma_4vanish(c, &t, a, m, 1, Ring::Integers, 3)?.passed() as usize;
        let adj = random_galois_connection(&mut rng, 5);
        let g = random_natural_system(&mut rng, adj.target().clone(), Ring::Integers);
        passed[2] += check_lemma_adjuntos(&adj, &g, 3)?.passed() as usize;
        let e = random_natural_system(&mut rng, adj.source().clone(), Ring::Integers);
        passed[3] += check_prop_muro(&adj, &e, 3)?.passed() as usize;
    }
    println!("out of 20: trivial {}, 4vanish {}, adjuntos {}, muro {}", passed[0], passed[1], passed[2], passed[3]);

    // l: 1 → {0 < 1} picking 0 is left adjoint to the unique functor back.
    let (pt, i) = (Arc::new(FiniteCategory::terminal()), interval());
    let adj = Adjunction::galois(CatFunctor::new(pt, i.clone(), vec![0], vec![0])?).expect("0 is the bottom");
    // G has rank 2 at id₁, and the arrow pulls D(id₁) back to zero.
    let rank = |a: usize| if a == 2 { 2 } else { 1 };
    let g = NaturalSystem::new(
        i,
        Ring::Integers,
        vec![1, 1, 2],
        |_, a| IntMatrix::identity(rank(a)),
        |nu, a| if (nu, a) == (1, 2) { IntMatrix::zeros(1, 2) } else { IntMatrix::identity(rank(a)) },
    )?;
    println!("{}", check_lemma_adjuntos(&adj, &g, 3)?);
    Ok(())
}
