//! Simplicial complexes with a fixed vertex orientation order, order
//! complexes of posets, and simplicial chains.
//!
//! Every simplex is stored as its vertex list sorted by the complex's
//! orientation order. For an order complex that order is a linear extension
//! of the poset, so each simplex is a chain listed bottom to top and no
//! orientation choice is ever made. For complexes read from JSON the order is
//! lexicographic on labels.

mod collapse;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{homology_from_boundaries, HomologyGroup, IntMatrix};
use crate::poset::{ElementId, Poset};

pub use collapse::{
    certificate_json, collapse_search, verify_collapse, Collapse, CollapseOutcome, DEFAULT_COLLAPSE_BUDGET,
};

/// Vertex list in orientation order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(pub Vec<usize>);

impl Simplex {
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// The face opposite vertex `i`.
    pub fn facet(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    pub fn contains(&self, other: &Simplex) -> bool {
        other.0.iter().all(|v| self.0.contains(v))
    }
}

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    /// position of each vertex in the orientation order
    rank: Vec<usize>,
    by_dim: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.by_dim == other.by_dim
    }
}

impl SimplicialComplex {
    /// Closes `simplices` under taking nonempty faces. `rank[v]` orders the
    /// vertices for orientation.
    pub fn from_faces(
        labels: Vec<String>,
        rank: Vec<usize>,
        simplices: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self> {
        let n = labels.len();
        if rank.len() != n {
            return Err(Error::DimensionMismatch(format!("{} ranks for {n} vertices", rank.len())));
        }
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for mut s in simplices {
            if s.is_empty() {
                continue;
            }
            if let Some(&bad) = s.iter().find(|&&v| v >= n) {
                return Err(Error::UnknownLabel(format!("#{bad}")));
            }
            s.sort_by_key(|&v| rank[v]);
            s.dedup();
            if all.contains(&s) {
                continue;
            }
            // every nonempty subsequence is a face
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                all.insert(face);
            }
        }
        let dim = all.iter().map(Vec::len).max().unwrap_or(0);
        let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); dim];
        for s in all {
            by_dim[s.len() - 1].push(Simplex(s));
        }
        for level in &mut by_dim {
            level.sort();
        }
        let index = by_dim.iter().map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()).collect();
        Ok(SimplicialComplex { labels, rank, by_dim, index })
    }

    /// Complex given by its maximal simplices over string labels; vertices are
    /// numbered in sorted label order, which is also the orientation order.
    pub fn from_maximal<S: AsRef<str>>(maximal: &[Vec<S>]) -> Result<Self> {
        let labels: Vec<String> =
            maximal.iter().flatten().map(|s| s.as_ref().to_string()).collect::<BTreeSet<_>>().into_iter().collect();
        let id: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let simplices: Vec<Vec<usize>> = maximal.iter().map(|s| s.iter().map(|l| id[l.as_ref()]).collect()).collect();
        let rank = (0..labels.len()).collect();
        SimplicialComplex::from_faces(labels, rank, simplices)
    }

    /// `K(P)`: one simplex per nonempty chain of `P`.
    pub fn order_complex(poset: &Poset) -> Result<Self> {
        if poset.is_empty() {
            return Err(Error::EmptyPoset);
        }
        let mut rank = vec![0; poset.len()];
        for (pos, x) in poset.linear_extension().into_iter().enumerate() {
            rank[x.index()] = pos;
        }
        let labels = poset.labels().to_vec();
        let chains = poset.chains().into_iter().map(|c| c.into_iter().map(ElementId::index).collect::<Vec<_>>());
        SimplicialComplex::from_faces(labels, rank, chains)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_vertices(&self) -> usize {
        self.num_simplices(0)
    }

    /// Top dimension; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn simplices(&self, n: usize) -> &[Simplex] {
        self.by_dim.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn num_simplices(&self, n: usize) -> usize {
        self.simplices(n).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    /// Sorts an arbitrary vertex list into orientation order, returning the
    /// sign of the sorting permutation, or `None` if a vertex repeats.
    pub fn orient(&self, vertices: &[usize]) -> Option<(Simplex, i64)> {
        let mut v = vertices.to_vec();
        let mut sign = 1;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && self.rank[v[j - 1]] > self.rank[v[j]] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Simplex(v), sign))
    }

    pub fn simplex_labels(&self, s: &Simplex) -> Vec<String> {
        s.0.iter().map(|&v| self.labels[v].clone()).collect()
    }

    pub fn simplex_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Simplex> {
        let ids: Vec<usize> = labels
            .iter()
            .map(|l| {
                self.labels
                    .iter()
                    .position(|x| x == l.as_ref())
                    .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))
            })
            .collect::<Result<_>>()?;
        let (s, _) = self.orient(&ids).ok_or_else(|| Error::Parse("repeated vertex".into()))?;
        Ok(s)
    }

    /// `d_n`: columns are n-simplices, rows (n-1)-simplices; deleting vertex
    /// `i` contributes `(-1)^i`.
    pub fn boundary_matrix(&self, n: usize) -> IntMatrix {
        if n == 0 {
            return IntMatrix::zeros(0, self.num_simplices(0));
        }
        let columns = self
            .simplices(n)
            .iter()
            .map(|s| {
                (0..=n)
                    .map(|i| {
                        let row = self.index[n - 1][&s.facet(i)];
                        (row, BigInt::from(if i % 2 == 0 { 1 } else { -1 }))
                    })
                    .collect()
            })
            .collect();
        IntMatrix::from_columns(self.num_simplices(n - 1), columns)
    }

    /// `H_n` of the complex.
    pub fn homology(&self, n: usize) -> Result<HomologyGroup> {
        homology_from_boundaries(&self.boundary_matrix(n), &self.boundary_matrix(n + 1))
    }

    /// Simplices that are not a proper face of anything.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let cofaces = self.facet_cofaces();
        self.by_dim.iter().flatten().filter(|s| cofaces.get(*s).is_none_or(Vec::is_empty)).cloned().collect()
    }

    /// For each simplex, the simplices of one dimension higher containing it.
    fn facet_cofaces(&self) -> HashMap<Simplex, Vec<Simplex>> {
        let mut map: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
        for s in self.by_dim.iter().skip(1).flatten() {
            for i in 0..s.0.len() {
                map.entry(s.facet(i)).or_default().push(s.clone());
            }
        }
        map
    }

    /// All `(B, A)` with `A` maximal and `B` a proper face of `A` and of no
    /// other simplex, ordered by decreasing dimension of `A`, then lexicographically.
    pub fn free_faces(&self) -> Vec<(Simplex, Simplex)> {
        let cofaces = self.facet_cofaces();
        let mut out: Vec<(Simplex, Simplex)> = cofaces
            .iter()
            .filter_map(|(b, up)| match up.as_slice() {
                [a] if cofaces.get(a).is_none_or(Vec::is_empty) => Some((b.clone(), a.clone())),
                _ => None,
            })
            .collect();
        out.sort_by(|(b1, a1), (b2, a2)| a2.dim().cmp(&a1.dim()).then_with(|| a1.cmp(a2)).then_with(|| b1.cmp(b2)));
        out
    }

    /// `χ(K)`: simplices ordered by inclusion, labelled `{v0,v1,...}`.
    pub fn face_poset(&self) -> Poset {
        let all: Vec<&Simplex> = self.by_dim.iter().flatten().collect();
        let pos: HashMap<&Simplex, usize> = all.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let labels: Vec<String> = all.iter().map(|s| format!("{{{}}}", self.simplex_labels(s).join(","))).collect();
        let mut pairs = Vec::new();
        for s in &all {
            if s.0.len() > 1 {
                for i in 0..s.0.len() {
                    pairs.push((pos[&s.facet(i)], pos[*s]));
                }
            }
        }
        Poset::from_id_relations(labels, &pairs).expect("face inclusion is a partial order")
    }

    /// Every `(m-1)`-simplex lies in exactly two `m`-simplices and every
    /// maximal simplex has dimension `m`. Advisory only: this does not decide
    /// whether the realization is a manifold.
    pub fn is_pseudomanifold(&self) -> bool {
        let Some(m) = self.dim() else { return false };
        if m == 0 || self.maximal_simplices().iter().any(|s| s.dim() != m) {
            return false;
        }
        let cofaces = self.facet_cofaces();
        self.simplices(m - 1).iter().all(|s| cofaces.get(s).map_or(0, Vec::len) == 2)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim.iter().enumerate().map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    /// JSON list of maximal simplices, each a list of labels.
    pub fn to_json(&self) -> String {
        let maximal: Vec<Vec<String>> = self.maximal_simplices().iter().map(|s| self.simplex_labels(s)).collect();
        serde_json::to_string(&maximal).expect("labels serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let maximal: Vec<Vec<String>> = serde_json::from_str(s)?;
        SimplicialComplex::from_maximal(&maximal)
    }

    /// Graphviz graph of the 1-skeleton.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph skeleton {\n");
        for (v, l) in self.labels.iter().enumerate() {
            if self.contains(&Simplex(vec![v])) {
                out.push_str(&format!("  v{v} [label={l:?}];\n"));
            }
        }
        for e in self.simplices(1) {
            out.push_str(&format!("  v{} -- v{};\n", e.0[0], e.0[1]));
        }
        out.push_str("}\n");
        out
    }
}

/// Integer combination of oriented simplices. Degenerate terms (repeated
/// vertices) are zero and never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialChain {
    terms: BTreeMap<Vec<usize>, i64>,
}

impl SimplicialChain {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `coeff * [vertices]`; the vertex list must already be in
    /// orientation order. Lists with a repeated vertex are dropped.
    pub fn add_term(&mut self, vertices: &[usize], coeff: i64) {
        if coeff == 0 || vertices.windows(2).any(|w| w[0] == w[1]) || has_repeat(vertices) {
            return;
        }
        let e = self.terms.entry(vertices.to_vec()).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(vertices);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Simplex, i64)> + '_ {
        self.terms.iter().map(|(v, c)| (Simplex(v.clone()), *c))
    }

    pub fn coefficient(&self, s: &Simplex) -> i64 {
        self.terms.get(&s.0).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn boundary(&self) -> SimplicialChain {
        let mut out = SimplicialChain::new();
        for (v, c) in &self.terms {
            if v.len() < 2 {
                continue;
            }
            for i in 0..v.len() {
                let mut f = v.clone();
                f.remove(i);
                out.add_term(&f, if i % 2 == 0 { *c } else { -*c });
            }
        }
        out
    }

    /// Coefficient vector over the `n`-simplices of `complex`.
    pub fn to_vector(&self, complex: &SimplicialComplex, n: usize) -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::from(0); complex.num_simplices(n)];
        for (s, c) in self.terms() {
            let i = complex
                .index_of(&s)
                .filter(|_| s.dim() == n)
                .ok_or_else(|| Error::DimensionMismatch(format!("{:?} is not an {n}-simplex of the complex", s.0)))?;
            v[i] += c;
        }
        Ok(v)
    }

    pub fn display(&self, complex: &SimplicialComplex) -> String {
        format_terms(self.terms().map(|(s, c)| (complex.simplex_labels(&s), c)), ('[', ']'))
    }
}

fn has_repeat(v: &[usize]) -> bool {
    let mut seen = BTreeSet::new();
    !v.iter().all(|x| seen.insert(*x))
}

/// `[a,b,c] - [a,d,e]` style rendering; `0` when empty.
pub(crate) fn format_terms(terms: impl Iterator<Item = (Vec<String>, i64)>, brackets: (char, char)) -> String {
    let mut out = String::new();
    for (labels, c) in terms {
        let body = format!("{}{}{}", brackets.0, labels.join(","), brackets.1);
        let mag = c.unsigned_abs();
        let coeff = if mag == 1 { String::new() } else { format!("{mag}") };
        if out.is_empty() {
            out.push_str(if c < 0 { "-" } else { "" });
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        out.push_str(&coeff);
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Poset {
        Poset::chain(&["a", "b", "c"])
    }

    fn circle() -> Poset {
        Poset::from_relations(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]).unwrap()
    }

    fn sphere() -> Poset {
        let r = [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "e"), ("c", "f"), ("d", "e"), ("d", "f")];
        Poset::from_relations(&["a", "b", "c", "d", "e", "f"], &r).unwrap()
    }

    #[test]
    fn order_complex_counts() {
        assert_eq!(SimplicialComplex::order_complex(&chain3()).unwrap().f_vector(), vec![3, 3, 1]);
        let c = SimplicialComplex::order_complex(&circle()).unwrap();
        assert_eq!(c.f_vector(), vec![4, 4]);
        let edges: Vec<Vec<String>> = c.simplices(1).iter().map(|s| c.simplex_labels(s)).collect();
        assert_eq!(edges, vec![vec!["a", "c"], vec!["a", "d"], vec!["b", "c"], vec!["b", "d"]]);
        assert_eq!(SimplicialComplex::order_complex(&sphere()).unwrap().f_vector(), vec![6, 12, 8]);
    }

    #[test]
    fn face_poset_examples() {
        let edge = SimplicialComplex::from_maximal(&[vec!["a", "b"]]).unwrap();
        let fp = edge.face_poset();
        assert_eq!(fp.len(), 3);
        assert_eq!(fp.has_maximum().map(|m| fp.label(m).to_string()), Some("{a,b}".to_string()));
        let tri = SimplicialComplex::from_maximal(&[vec!["a", "b", "c"]]).unwrap();
        let fp = tri.face_poset();
        assert_eq!(fp.len(), 7);
        assert_eq!(fp.homogeneity(), Some(2));
        let pt = SimplicialComplex::order_complex(&Poset::chain(&["p"])).unwrap();
        assert_eq!(pt.face_poset().len(), 1);
    }

    #[test]
    fn boundary_signs() {
        let edge = SimplicialComplex::from_maximal(&[vec!["a", "b"]]).unwrap();
        assert_eq!(edge.boundary_matrix(1), IntMatrix::from_rows(&[vec![-1], vec![1]]));
        let tri = SimplicialComplex::from_maximal(&[vec!["a", "b", "c"]]).unwrap();
        // rows: [a,b], [a,c], [b,c]
        assert_eq!(tri.boundary_matrix(2), IntMatrix::from_rows(&[vec![1], vec![-1], vec![1]]));
        let oct = SimplicialComplex::order_complex(&sphere()).unwrap();
        assert!(oct.boundary_matrix(1).mul(&oct.boundary_matrix(2)).unwrap().is_zero());
    }

    #[test]
    fn homology_of_standard_complexes() {
        let square = SimplicialComplex::order_complex(&circle()).unwrap();
        let h1 = homology_from_boundaries(&square.boundary_matrix(1), &IntMatrix::zeros(4, 0)).unwrap();
        assert_eq!(h1.betti, 1);
        let tri = SimplicialComplex::order_complex(&chain3()).unwrap();
        assert!(homology_from_boundaries(&tri.boundary_matrix(1), &tri.boundary_matrix(2)).unwrap().is_trivial());
        let oct = SimplicialComplex::order_complex(&sphere()).unwrap();
        let h2 = homology_from_boundaries(&oct.boundary_matrix(2), &IntMatrix::zeros(8, 0)).unwrap();
        assert_eq!(h2.betti, 1);
        assert!(oct.is_pseudomanifold());
        assert_eq!(oct.euler_characteristic(), 2);
    }

    #[test]
    fn free_faces_examples() {
        let tri = SimplicialComplex::from_maximal(&[vec!["a", "b", "c"]]).unwrap();
        let ab = tri.simplex_from_labels(&["a", "b"]).unwrap();
        let abc = tri.simplex_from_labels(&["a", "b", "c"]).unwrap();
        assert!(tri.free_faces().contains(&(ab, abc)));
        let oct = SimplicialComplex::order_complex(&sphere()).unwrap();
        assert!(oct.free_faces().is_empty());
        let edge = SimplicialComplex::from_maximal(&[vec!["a", "b"]]).unwrap();
        assert_eq!(edge.free_faces().len(), 2);
    }

    #[test]
    fn json_and_dot() {
        let k = SimplicialComplex::from_json(r#"[["a","b","c"],["c","d"]]"#).unwrap();
        assert_eq!(k.f_vector(), vec![4, 4, 1]);
        assert_eq!(SimplicialComplex::from_json(&k.to_json()).unwrap(), k);
        assert_eq!(k.to_dot().matches("--").count(), 4);
    }

    #[test]
    fn chains_drop_degenerate_terms() {
        let mut c = SimplicialChain::new();
        c.add_term(&[0, 0, 2], 5);
        c.add_term(&[0, 2, 0], 5);
        assert!(c.is_zero());
        c.add_term(&[0, 1, 2], 1);
        assert_eq!(c.boundary().len(), 3);
        assert!(c.boundary().boundary().is_zero());
    }
}
