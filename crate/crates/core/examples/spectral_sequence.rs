//! The bicomplex of a diagram, its total complex, and the pages of the
//! column-filtration spectral sequence for the swap action of `ℤ/2` on two
//! points. The `E_2` page is recomputed fiberwise and compared.

use catcoh::grothendieck::grothendieck_construction;
use catcoh::homalg::Ring;
use catcoh::instances::example_c;
use catcoh::natsys::natsys_constant;
use catcoh::spectral::{
    build_bicomplex_thm1, e2_grid, e2_identify_thm1, phi_map, row_exactness_check, spectral_pages, total_complex,
};

fn main() -> catcoh::Result<()> {
    let dg = example_c();
    let groth = grothendieck_construction(&dg);
    let d = natsys_constant(groth.category.clone(), Ring::Prime(2), 1);
    let n_max = 5;

    let b = build_bicomplex_thm1(&dg, &d, n_max)?;
    println!("{}", b.check_identities());
    let tot = total_complex(&b)?;
    println!("Tot ranks {:?}", tot.ranks());
    let (_, phi) = phi_map(&b, &tot)?;
    println!("{phi}");
    println!("{}", row_exactness_check(&b));

    let pages = spectral_pages(&b, &tot, 4)?;
    for page in &pages {
        let dims: Vec<String> = page.entries.iter().map(|e| format!("{}{}", e.dim, if e.stable { "" } else { "?" })).collect();
        println!("E_{}: {}", page.r, dims.join(" "));
    }
    let e2 = e2_grid(&pages, n_max).expect("two pages computed");
    println!("E_2 from the bicomplex {e2:?}");
    println!("E_2 from the fibers    {:?}", e2_identify_thm1(&dg, &d, n_max)?);
    Ok(())
}
