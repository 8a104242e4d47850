//! Order complex homology and a free-face collapse certificate.

use posettop::builtins::{max5, sphere6};
use posettop::simplicial::{
    certificate_json, collapse_search, CollapseOutcome, SimplicialComplex, DEFAULT_COLLAPSE_BUDGET,
};

fn main() -> posettop::Result<()> {
    let k = SimplicialComplex::order_complex(&sphere6())?;
    println!("sphere6: f-vector {:?}, euler {}", k.f_vector(), k.euler_characteristic());
    for n in 0..=2 {
        println!("  H_{n} = {}", k.homology(n)?);
    }

    let cone = SimplicialComplex::order_complex(&max5())?;
    match collapse_search(&cone, DEFAULT_COLLAPSE_BUDGET)? {
        CollapseOutcome::Collapsible(steps) => println!("max5 collapses: {}", certificate_json(&cone, &steps)),
        CollapseOutcome::NotCollapsible => println!("max5 does not collapse"),
    }
    match collapse_search(&k, DEFAULT_COLLAPSE_BUDGET)? {
        CollapseOutcome::Collapsible(_) => println!("sphere6 collapses"),
        CollapseOutcome::NotCollapsible => println!("sphere6 is not collapsible"),
    }
    Ok(())
}
