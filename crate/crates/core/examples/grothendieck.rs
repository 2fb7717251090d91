//! The Grothendieck construction of the bundled example diagrams, Thomason's
//! categories `L̃(k)` and the adjunctions `l_k ⊣ r_k`.

use catcoh::grothendieck::{adjoint_lr, grothendieck_construction, thomason_tilde};
use catcoh::instances::{example_a, example_b, example_c};

fn main() -> catcoh::Result<()> {
    for (name, dg) in [("A", example_a()), ("B", example_b()), ("C", example_c())] {
        let g = grothendieck_construction(&dg);
        println!("example {name}: ∫L has objects {:?} and {} morphisms", g.objects, g.category.n_morphisms());
        for k in 0..dg.base.n_objects() {
            let tilde = thomason_tilde(&dg, k);
            let adj = adjoint_lr(&dg, &tilde)?;
            println!(
                "  L̃({k}): objects {:?}; l_{k} on objects {:?}; r_{k} on objects {:?}",
                tilde.objects, adj.l.obj_map, adj.r.obj_map
            );
        }
    }
    Ok(())
}
