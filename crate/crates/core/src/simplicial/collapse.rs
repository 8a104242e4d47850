use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

pub const DEFAULT_COLLAPSE_BUDGET: usize = 1_000_000;

/// One elementary collapse: remove `maximal` together with its free face `free`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collapse {
    pub free: Simplex,
    pub maximal: Simplex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CollapseOutcome {
    /// Verified sequence ending at a single vertex.
    Collapsible(Vec<Collapse>),
    /// Either there was no free face to start from, or every collapse order was
    /// explored without reaching a point.
    NotCollapsible,
}

#[derive(Serialize, Deserialize)]
struct CollapseJson {
    free: Vec<String>,
    maximal: Vec<String>,
}

impl CollapseOutcome {
    pub fn is_collapsible(&self) -> bool {
        matches!(self, CollapseOutcome::Collapsible(_))
    }
}

/// Serializes a certificate as `[{"free": [...], "maximal": [...]}, ...]`.
pub fn certificate_json(complex: &SimplicialComplex, steps: &[Collapse]) -> String {
    let rows: Vec<CollapseJson> = steps
        .iter()
        .map(|c| CollapseJson { free: complex.simplex_labels(&c.free), maximal: complex.simplex_labels(&c.maximal) })
        .collect();
    serde_json::to_string(&rows).expect("labels serialize")
}

type State = BTreeSet<Simplex>;

/// Free pairs of a complex given as a face-closed set, in the same order as
/// [`SimplicialComplex::free_faces`].
fn free_pairs(state: &State) -> Vec<(Simplex, Simplex)> {
    let mut cofaces: std::collections::HashMap<&Simplex, Vec<&Simplex>> = Default::default();
    for s in state.iter().filter(|s| s.0.len() > 1) {
        for i in 0..s.0.len() {
            let f = state.get(&s.facet(i)).expect("face-closed");
            cofaces.entry(f).or_default().push(s);
        }
    }
    let mut out: Vec<(Simplex, Simplex)> = cofaces
        .iter()
        .filter_map(|(b, up)| match up.as_slice() {
            [a] if !cofaces.contains_key(a) => Some(((*b).clone(), (*a).clone())),
            _ => None,
        })
        .collect();
    out.sort_by(|(b1, a1), (b2, a2)| a2.dim().cmp(&a1.dim()).then_with(|| a1.cmp(a2)).then_with(|| b1.cmp(b2)));
    out
}

struct Search {
    budget: usize,
    nodes: usize,
    dead: HashSet<Vec<Simplex>>,
    path: Vec<Collapse>,
}

impl Search {
    fn run(&mut self, state: &mut State) -> Result<bool> {
        if state.len() == 1 {
            return Ok(true);
        }
        let key: Vec<Simplex> = state.iter().cloned().collect();
        if self.dead.contains(&key) {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted(self.budget));
        }
        for (b, a) in free_pairs(state) {
            state.remove(&a);
            state.remove(&b);
            self.path.push(Collapse { free: b.clone(), maximal: a.clone() });
            if self.run(state)? {
                return Ok(true);
            }
            self.path.pop();
            state.insert(a);
            state.insert(b);
        }
        self.dead.insert(key);
        Ok(false)
    }
}

/// Depth-first search for a sequence of elementary collapses down to a single
/// vertex. Free pairs are tried greedily in lexicographic order and the search
/// backtracks on dead ends, remembering complexes already known to be stuck.
/// Each visited complex counts one node against `budget`.
pub fn collapse_search(complex: &SimplicialComplex, budget: usize) -> Result<CollapseOutcome> {
    let mut state: State =
        (0..=complex.dim().unwrap_or(0)).flat_map(|n| complex.simplices(n).iter().cloned()).collect();
    if state.is_empty() {
        return Ok(CollapseOutcome::NotCollapsible);
    }
    let mut search = Search { budget, nodes: 0, dead: HashSet::new(), path: Vec::new() };
    if !search.run(&mut state)? {
        return Ok(CollapseOutcome::NotCollapsible);
    }
    if !verify_collapse(complex, &search.path) {
        return Err(Error::InternalInvariantViolation("collapse certificate failed re-verification".into()));
    }
    Ok(CollapseOutcome::Collapsible(search.path))
}

/// Replays `steps` from `complex`, checking each one against the free-face
/// definition, and that exactly one vertex is left.
pub fn verify_collapse(complex: &SimplicialComplex, steps: &[Collapse]) -> bool {
    let mut state: State =
        (0..=complex.dim().unwrap_or(0)).flat_map(|n| complex.simplices(n).iter().cloned()).collect();
    for step in steps {
        let Collapse { free, maximal } = step;
        if !state.contains(free) || !state.contains(maximal) || free == maximal || !maximal.contains(free) {
            return false;
        }
        let supersets = state.iter().filter(|s| *s != free && s.contains(free)).count();
        let above_max = state.iter().any(|s| s != maximal && s.contains(maximal));
        if supersets != 1 || above_max {
            return false;
        }
        state.remove(free);
        state.remove(maximal);
    }
    state.len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;

    #[test]
    fn triangle_collapses_in_three_steps() {
        let tri = SimplicialComplex::from_maximal(&[vec!["a", "b", "c"]]).unwrap();
        let CollapseOutcome::Collapsible(steps) = collapse_search(&tri, 100).unwrap() else {
            panic!("not collapsible")
        };
        assert_eq!(steps.len(), 3);
        assert!(verify_collapse(&tri, &steps));
        let json = certificate_json(&tri, &steps);
        assert!(json.starts_with(r#"[{"free":["#));
    }

    #[test]
    fn octahedron_is_stuck() {
        let r = [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "e"), ("c", "f"), ("d", "e"), ("d", "f")];
        let p = Poset::from_relations(&["a", "b", "c", "d", "e", "f"], &r).unwrap();
        let k = SimplicialComplex::order_complex(&p).unwrap();
        assert_eq!(collapse_search(&k, 10).unwrap(), CollapseOutcome::NotCollapsible);
    }

    #[test]
    fn cones_collapse() {
        let p = Poset::from_relations(&["a", "b", "c", "d"], &[("a", "b"), ("b", "d"), ("c", "d")]).unwrap();
        let k = SimplicialComplex::order_complex(&p).unwrap();
        assert!(collapse_search(&k, 1000).unwrap().is_collapsible());
        let circle =
            Poset::from_relations(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]).unwrap();
        let k = SimplicialComplex::order_complex(&circle).unwrap().clone();
        assert_eq!(collapse_search(&k, 1000).unwrap(), CollapseOutcome::NotCollapsible);
    }

    #[test]
    fn budget_is_reported() {
        let tri = SimplicialComplex::from_maximal(&[vec!["a", "b", "c", "d"]]).unwrap();
        assert!(matches!(collapse_search(&tri, 1), Err(Error::BudgetExhausted(1))));
    }

    #[test]
    fn tampered_certificate_rejected() {
        let edge = SimplicialComplex::from_maximal(&[vec!["a", "b"]]).unwrap();
        let a = edge.simplex_from_labels(&["a"]).unwrap();
        let b = edge.simplex_from_labels(&["b"]).unwrap();
        assert!(!verify_collapse(&edge, &[Collapse { free: a, maximal: b }]));
    }
}
