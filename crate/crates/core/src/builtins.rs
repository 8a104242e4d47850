//! Named example posets.

use crate::error::{Error, Result};
use crate::poset::Poset;

pub const BUILTIN_NAMES: &[&str] = &["chain{n}", "fence{p}", "circle4", "sphere6", "max5", "qcube{n}"];

fn letter_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| if n <= 26 { char::from(b'a' + i as u8).to_string() } else { format!("x{i}") }).collect()
}

/// The chain `a < b < c < ...` on `n >= 1` elements.
pub fn chain(n: usize) -> Poset {
    Poset::chain(&letter_labels(n.max(1)))
}

/// Two minima below two maxima: the smallest model of the circle.
pub fn circle4() -> Poset {
    Poset::from_relations(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
        .expect("circle4 is a poset")
}

/// The suspension of `circle4`, a model of the 2-sphere.
pub fn sphere6() -> Poset {
    let r = [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "e"), ("c", "f"), ("d", "e"), ("d", "f")];
    Poset::from_relations(&["a", "b", "c", "d", "e", "f"], &r).expect("sphere6 is a poset")
}

/// `a < b < d`, `c < d`: a poset with a maximum, so every loop contracts.
pub fn max5() -> Poset {
    Poset::from_relations(&["a", "b", "c", "d"], &[("a", "b"), ("b", "d"), ("c", "d")]).expect("max5 is a poset")
}

/// Resolves `chain3`, `fence4`, `qcube2`, `circle4`, ... to a poset.
pub fn builtin(name: &str) -> Result<Poset> {
    let numbered = |prefix: &str| name.strip_prefix(prefix).and_then(|rest| rest.parse::<usize>().ok());
    match name {
        "circle4" => Ok(circle4()),
        "sphere6" => Ok(sphere6()),
        "max5" => Ok(max5()),
        _ => {
            if let Some(n) = numbered("chain").filter(|&n| n >= 1) {
                Ok(chain(n))
            } else if let Some(p) = numbered("fence") {
                Ok(Poset::fence(p))
            } else if let Some(n) = numbered("qcube").filter(|&n| n <= 10) {
                Ok(Poset::boolean_cube(n))
            } else {
                Err(Error::UnknownBuiltin(name.to_string()))
            }
        }
    }
}
