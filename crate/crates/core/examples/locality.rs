//! Local and h-local natural systems on a Grothendieck construction, and
//! the second spectral sequence check, which only runs under h-locality.

use catcoh::grothendieck::{grothendieck_construction, is_h_local, is_local};
use catcoh::homalg::Ring;
use catcoh::instances::{example_b, locality_counterexample};
use catcoh::natsys::natsys_constant;
use catcoh::spectral::check_theorem2;

fn main() -> catcoh::Result<()> {
    let b = example_b();
    let d = natsys_constant(grothendieck_construction(&b).category.clone(), Ring::Prime(2), 1);
    println!("example B: local {}, h-local {}", is_local(&d, &b)?, is_h_local(&d, &b, 4)?);
    let out = check_theorem2(&b, &d, 5)?;
    println!("{}\nabutment {:?} vs H^* {:?}", out.report, out.abutment, out.cohomology);

    let (dg, d) = locality_counterexample();
    println!("doubling system: local {}, h-local {}", is_local(&d, &dg)?, is_h_local(&d, &dg, 4)?);
    println!("{}", check_theorem2(&dg, &d, 4)?.report);
    Ok(())
}
