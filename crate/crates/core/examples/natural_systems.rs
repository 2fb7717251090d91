//! Factorization categories and the ways of building natural systems:
//! constant, from a one-variable functor, and hand-written actions.

use std::sync::Arc;

use catcoh::bw::bw_cohomology;
use catcoh::homalg::{AbInvariants, IntMatrix, Ring};
use catcoh::instances::interval;
use catcoh::natsys::{build_factorization_category, natsys_constant, natsys_from_functor, FunctorCoefficients};

fn main() -> catcoh::Result<()> {
    let i = interval();
    let fc = build_factorization_category(i.clone());
    println!("FI has {} objects and {} morphisms", fc.category.n_objects(), fc.category.n_morphisms());

    // Covariant M on 0 < 1 with M(0) = ℤ, M(1) = ℤ², M(0 ≤ 1) = (1, 1)ᵀ.
    let m = FunctorCoefficients::Covariant {
        ranks: vec![1, 2],
        maps: vec![IntMatrix::identity(1), IntMatrix::from_rows(&[vec![1], vec![1]]), IntMatrix::identity(2)],
    };
    let d = natsys_from_functor(i.clone(), Ring::Integers, &m)?;
    println!("ranks {:?}, H^* = {}", d.ranks(), shown(&bw_cohomology(&d, 3)?));

    // An identity acting by 2 is rejected, with every violated law listed.
    let broken = natsys_constant(i.clone(), Ring::Integers, 1).with_post(0, 0, IntMatrix::scalar(1, 2));
    println!("post action 2 on an identity:\n{}", broken.validate());

    let three = natsys_constant(Arc::new(catcoh::fincat::FiniteCategory::cyclic_group(3)), Ring::Prime(3), 2);
    println!("constant F_3^2 on Z/3: dims {}", shown(&bw_cohomology(&three, 4)?));
    Ok(())
}

fn shown(h: &[AbInvariants]) -> String {
    let parts: Vec<String> = h.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}
