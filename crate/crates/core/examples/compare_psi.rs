//! The comparison map from cubical to simplicial chains.

use posettop::builtins::{chain, circle4, sphere6};
use posettop::comparison::{psi, Comparison};
use posettop::cubical::{Cube, DEFAULT_CUBE_CAP};

fn main() -> posettop::Result<()> {
    let c3 = chain(3);
    let k = posettop::simplicial::SimplicialComplex::order_complex(&c3)?;
    let cube = Cube::from_labels(&c3, &["a", "b", "a", "c"])?;
    println!("psi{} = {}", cube.display(&c3), psi(&cube)?.display(&k));

    for (name, p) in [("circle4", circle4()), ("sphere6", sphere6())] {
        let cmp = Comparison::new(&p, 3, DEFAULT_CUBE_CAP)?;
        for n in 1..=3 {
            assert!(cmp.chain_map_defect(n)?.is_zero());
        }
        for d in 0..=2 {
            let m = cmp.induced_map(d)?;
            println!("{name} degree {d}: {} -> {} ({})", m.cube, m.simpl, m.status());
        }
    }
    Ok(())
}
