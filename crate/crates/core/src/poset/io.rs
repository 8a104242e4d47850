use serde::{Deserialize, Serialize};

use super::Poset;
use crate::error::{Error, Result};

/// Wire form of a poset: element labels plus any generating set of strict relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub relations: Vec<(String, String)>,
}

impl From<&Poset> for PosetJson {
    fn from(p: &Poset) -> Self {
        PosetJson {
            elements: p.labels().to_vec(),
            relations: p.covers().iter().map(|&(a, b)| (p.label(a).to_string(), p.label(b).to_string())).collect(),
        }
    }
}

impl TryFrom<PosetJson> for Poset {
    type Error = Error;

    fn try_from(j: PosetJson) -> Result<Poset> {
        Poset::from_relations(&j.elements, &j.relations)
    }
}

impl Poset {
    pub fn from_json(s: &str) -> Result<Poset> {
        let j: PosetJson = serde_json::from_str(s)?;
        j.try_into()
    }

    /// JSON with the Hasse edges as relations.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PosetJson::from(self)).expect("poset serializes")
    }

    /// Parses the line format: one `x < y` per line, a bare label declares an
    /// element, `#` starts a comment. Elements are numbered by first appearance.
    pub fn from_text(s: &str) -> Result<Poset> {
        let mut elements: Vec<String> = Vec::new();
        let mut relations = Vec::new();
        let declare = |l: &str, elements: &mut Vec<String>| {
            if !elements.iter().any(|e| e == l) {
                elements.push(l.to_string());
            }
        };
        for (n, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split('<').map(str::trim).collect();
            match parts.as_slice() {
                [x] if !x.contains(char::is_whitespace) => declare(x, &mut elements),
                [x, y] if !x.is_empty() && !y.is_empty() => {
                    declare(x, &mut elements);
                    declare(y, &mut elements);
                    relations.push((x.to_string(), y.to_string()));
                }
                _ => return Err(Error::Parse(format!("line {}: expected `x < y`, got `{raw}`", n + 1))),
            }
        }
        Poset::from_relations(&elements, &relations)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for x in self.elements() {
            if self.upper_covers[x.0].is_empty() && self.lower_covers[x.0].is_empty() {
                out.push_str(self.label(x));
                out.push('\n');
            }
        }
        for &(a, b) in &self.covers {
            out.push_str(&format!("{} < {}\n", self.label(a), self.label(b)));
        }
        out
    }

    /// Graphviz digraph of the Hasse diagram, edges drawn lower -> upper.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        for x in self.elements() {
            out.push_str(&format!("  n{} [label={:?}];\n", x.0, self.label(x)));
        }
        for &(a, b) in &self.covers {
            out.push_str(&format!("  n{} -> n{};\n", a.0, b.0));
        }
        out.push_str("}\n");
        out
    }
}
