//! Breadth-first search for a null-homotopy certificate.

use posettop::builtins::circle4;
use posettop::homotopy::{null_homotopy_search, Loop, SearchOutcome};

fn main() -> posettop::Result<()> {
    let p = circle4();
    for literal in ["b > c < a > c < b", "b > d < a > c < b"] {
        let f = Loop::parse(&p, literal, None)?;
        match null_homotopy_search(&p, &f, 3, 100_000)? {
            SearchOutcome::Found(cert) => {
                println!("{literal}: contractible");
                for row in cert.display(&p) {
                    println!("  {row}");
                }
            }
            SearchOutcome::NotFoundWithinBounds { explored, exhausted } => {
                println!("{literal}: no certificate at radius 3 ({explored} loops, exhausted {exhausted})")
            }
        }
    }
    Ok(())
}
