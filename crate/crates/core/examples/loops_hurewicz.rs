//! Loops on the circle model and their Hurewicz classes.

use posettop::builtins::circle4;
use posettop::cubical::DEFAULT_CUBE_CAP;
use posettop::homotopy::{Hurewicz, Loop};

fn main() -> posettop::Result<()> {
    let p = circle4();
    let h = Hurewicz::new(&p, DEFAULT_CUBE_CAP)?;
    let e = Loop::parse(&p, "b > d < a > c < b", None)?;
    let twice = e.concat(&e)?;
    let back = e.concat(&e.inverse())?;
    println!("H_1^Cube = {}", h.group());
    for (name, f) in [("e", &e), ("e.e", &twice), ("e.e^-1", &back)] {
        let image = h.apply(f)?;
        println!("{name:7} {}  class {:?}", f.display(&p), image.class.free);
    }
    println!("json: {}", e.to_json(&p));
    Ok(())
}
