//! Cohomology of the cyclic groups `ℤ/n` with constant coefficients, read
//! off the Baues-Wirsching complex of the one-object category.

use std::sync::Arc;

use catcoh::bw::bw_cohomology;
use catcoh::fincat::FiniteCategory;
use catcoh::homalg::Ring;
use catcoh::natsys::natsys_constant;

fn main() -> catcoh::Result<()> {
    for n in [2, 3, 4] {
        let group = Arc::new(FiniteCategory::cyclic_group(n));
        for ring in [Ring::Integers, Ring::Prime(2)] {
            let h = bw_cohomology(&natsys_constant(group.clone(), ring, 1), 6)?;
            let shown: Vec<String> = match ring {
                Ring::Integers => h.iter().map(ToString::to_string).collect(),
                Ring::Prime(p) => h.iter().map(|g| format!("F_{p}^{}", g.free_rank)).collect(),
            };
            println!("H^*(Z/{n}; {ring}) = ({})", shown.join(", "));
        }
    }
    Ok(())
}
