//! Cubes of a poset, their boundaries, and cubical homology.

use posettop::builtins::{chain, circle4, sphere6};
use posettop::cubical::{cubical_homology, enumerate_cubes, Cube, DEFAULT_CUBE_CAP};

fn main() -> posettop::Result<()> {
    let c3 = chain(3);
    let square = Cube::from_labels(&c3, &["a", "b", "a", "c"])?;
    println!("d{} = {}", square.display(&c3), square.boundary().display(&c3));

    for (name, p) in [("chain3", c3), ("circle4", circle4()), ("sphere6", sphere6())] {
        let counts: Vec<usize> =
            (0..=3).map(|n| enumerate_cubes(&p, n, DEFAULT_CUBE_CAP).map(|b| b.len())).collect::<Result<_, _>>()?;
        let h = cubical_homology(&p, 2, DEFAULT_CUBE_CAP)?;
        let h: Vec<String> = h.iter().map(|g| g.to_string()).collect();
        println!("{name:8} cubes {counts:?}  H = ({})", h.join(", "));
    }
    Ok(())
}
