//! Smith normal form of an integer matrix and the cohomology of a small
//! complex computed from it.

use catcoh::homalg::{smith_normal_form, CochainComplex, IntMatrix, Ring};

fn main() -> catcoh::Result<()> {
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&m);
    println!("M =\n{m:?}\nS =\n{:?}", snf.s);
    assert_eq!(&(&snf.u * &m) * &snf.v, snf.s);
    println!("invariant factors {:?}", snf.invariant_factors());

    // 0 → ℤ → ℤ → 0 with d = 2, stored one degree further so that H^1 is trusted
    let cx = CochainComplex::new(Ring::Integers, vec![1, 1, 0], vec![IntMatrix::scalar(1, 2), IntMatrix::zeros(0, 1)])?;
    println!("H^1 over Z: {}", cx.cohomology_at(1)?);
    println!("dim H^1 over F_2: {}", cx.over(Ring::Prime(2)).cohomology_at(1)?.free_rank);
    Ok(())
}
