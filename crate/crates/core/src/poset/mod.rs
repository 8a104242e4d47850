//! Finite posets: construction from generating relations, order queries,
//! structural predicates and a few standard constructions.
//!
//! Elements are identified by dense [`ElementId`]s assigned in input order;
//! labels are opaque strings kept only for I/O. The order relation is stored
//! as a bit matrix so `leq` is a constant-time lookup.

mod io;
mod random;

use std::collections::HashMap;

use crate::error::{Error, Result};

pub use io::PosetJson;
pub(crate) use random::random_poset_with;
pub use random::{random_homogeneous_dim1, random_poset, rng_from_seed, PosetRng};

/// Index of an element inside its [`Poset`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct ElementId(pub usize);

impl ElementId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Square bit matrix, one row of `u64` words per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix { n, words, bits: vec![0; n * words] }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// `row(dst) |= row(src)`
    fn or_row(&mut self, dst: usize, src: usize) {
        for w in 0..self.words {
            let v = self.bits[src * self.words + w];
            self.bits[dst * self.words + w] |= v;
        }
    }

    fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n;
        self.row(i).iter().enumerate().flat_map(move |(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
            .filter(move |&j| j < n)
        })
    }
}

/// A finite partially ordered set.
#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    /// Hasse edges `(lower, upper)`, sorted.
    covers: Vec<(ElementId, ElementId)>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    /// `leq.get(x, y)` iff `x <= y`.
    leq: BitMatrix,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.covers == other.covers
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds a poset from labels and any generating set of strict relations `x < y`.
    pub fn from_relations<S: AsRef<str>>(labels: &[S], pairs: &[(S, S)]) -> Result<Poset> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownLabel(s.to_string()));
        let mut ids = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            ids.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Poset::from_id_relations(labels, &ids)
    }

    /// Builds a poset over `labels` from strict relations given by index.
    pub fn from_id_relations(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownLabel(format!("#{}", a.max(b))));
            }
            if a == b {
                return Err(Error::CycleDetected(labels[a].clone()));
            }
            succ[a].push(b);
        }
        for s in succ.iter_mut() {
            s.sort_unstable();
            s.dedup();
        }

        // Kahn's algorithm; leftover vertices lie on or above a cycle.
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for &b in s {
                indeg[b] += 1;
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            for &b in succ[v].iter().rev() {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    stack.push(b);
                }
            }
        }
        if order.len() < n {
            let culprit = (0..n).find(|&v| indeg[v] > 0).unwrap();
            return Err(Error::CycleDetected(labels[culprit].clone()));
        }

        // strict reachability, filled in reverse topological order
        let mut lt = BitMatrix::new(n);
        for &v in order.iter().rev() {
            for &b in &succ[v] {
                lt.set(v, b);
                lt.or_row(v, b);
            }
        }
        Ok(Poset::from_strict_closure(labels, index, lt))
    }

    fn from_strict_closure(labels: Vec<String>, index: HashMap<String, usize>, lt: BitMatrix) -> Poset {
        let n = labels.len();
        let mut covers = Vec::new();
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for (x, ups) in upper_covers.iter_mut().enumerate() {
            for y in lt.row_ones(x) {
                // y covers x unless some z with x < z < y exists
                let between = lt.row_ones(x).any(|z| z != y && lt.get(z, y));
                if !between {
                    covers.push((ElementId(x), ElementId(y)));
                    ups.push(y);
                    lower_covers[y].push(x);
                }
            }
        }
        covers.sort_unstable();
        for v in upper_covers.iter_mut().chain(lower_covers.iter_mut()) {
            v.sort_unstable();
        }
        let mut leq = lt;
        for x in 0..n {
            leq.set(x, x);
        }
        Poset { labels, index, covers, upper_covers, lower_covers, leq }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.len()).map(ElementId)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: ElementId) -> &str {
        &self.labels[x.0]
    }

    pub fn id(&self, label: &str) -> Result<ElementId> {
        self.index.get(label).map(|&i| ElementId(i)).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Hasse edges `(lower, upper)` in sorted order.
    pub fn covers(&self) -> &[(ElementId, ElementId)] {
        &self.covers
    }

    pub fn upper_covers(&self, x: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        self.upper_covers[x.0].iter().map(|&y| ElementId(y))
    }

    pub fn lower_covers(&self, x: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        self.lower_covers[x.0].iter().map(|&y| ElementId(y))
    }

    #[inline]
    pub fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.leq.get(x.0, y.0)
    }

    /// Up-set of `x` as packed bit words.
    pub(crate) fn up_words(&self, x: ElementId) -> &[u64] {
        self.leq.row(x.0)
    }

    #[inline]
    pub fn lt(&self, x: ElementId, y: ElementId) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: ElementId, y: ElementId) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `U_x`: every element below or equal to `x`.
    pub fn down_set(&self, x: ElementId) -> Vec<ElementId> {
        self.elements().filter(|&y| self.leq(y, x)).collect()
    }

    /// `F_x`: every element above or equal to `x`.
    pub fn up_set(&self, x: ElementId) -> Vec<ElementId> {
        self.leq.row_ones(x.0).map(ElementId).collect()
    }

    pub fn strict_down_set(&self, x: ElementId) -> Vec<ElementId> {
        self.elements().filter(|&y| self.lt(y, x)).collect()
    }

    pub fn strict_up_set(&self, x: ElementId) -> Vec<ElementId> {
        self.leq.row_ones(x.0).filter(|&y| y != x.0).map(ElementId).collect()
    }

    pub fn minimal_elements(&self) -> Vec<ElementId> {
        self.elements().filter(|x| self.lower_covers[x.0].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<ElementId> {
        self.elements().filter(|x| self.upper_covers[x.0].is_empty()).collect()
    }

    /// Every maximal chain, each sorted bottom to top.
    ///
    /// Maximal chains are exactly the Hasse-diagram paths from a minimal to a
    /// maximal element.
    pub fn maximal_chains(&self) -> Vec<Vec<ElementId>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        for m in self.minimal_elements() {
            self.extend_chain(m, &mut path, &mut out);
        }
        out
    }

    fn extend_chain(&self, x: ElementId, path: &mut Vec<ElementId>, out: &mut Vec<Vec<ElementId>>) {
        path.push(x);
        if self.upper_covers[x.0].is_empty() {
            out.push(path.clone());
        } else {
            for &y in &self.upper_covers[x.0] {
                self.extend_chain(ElementId(y), path, out);
            }
        }
        path.pop();
    }

    /// Every nonempty chain, each sorted bottom to top, in lexicographic order of
    /// a linear extension-compatible enumeration.
    pub fn chains(&self) -> Vec<Vec<ElementId>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        for x in self.elements() {
            self.grow_chains(x, &mut path, &mut out);
        }
        out
    }

    fn grow_chains(&self, x: ElementId, path: &mut Vec<ElementId>, out: &mut Vec<Vec<ElementId>>) {
        path.push(x);
        out.push(path.clone());
        for y in self.strict_up_set(x) {
            self.grow_chains(y, path, out);
        }
        path.pop();
    }

    /// Longest and shortest Hasse path lengths from any minimal element to `x`.
    fn depth_bounds(&self) -> Vec<(usize, usize)> {
        let mut bounds: Vec<Option<(usize, usize)>> = vec![None; self.len()];
        for x in self.linear_extension() {
            let b = if self.lower_covers[x.0].is_empty() {
                (0, 0)
            } else {
                let mut lo = usize::MAX;
                let mut hi = 0;
                for &y in &self.lower_covers[x.0] {
                    let (l, h) = bounds[y].expect("linear extension visits lower covers first");
                    lo = lo.min(l + 1);
                    hi = hi.max(h + 1);
                }
                (lo, hi)
            };
            bounds[x.0] = Some(b);
        }
        bounds.into_iter().map(Option::unwrap).collect()
    }

    /// `Some(n)` when every maximal chain has exactly `n + 1` elements.
    pub fn homogeneity(&self) -> Option<usize> {
        if self.is_empty() {
            return None;
        }
        let bounds = self.depth_bounds();
        let mut dim = None;
        for m in self.maximal_elements() {
            let (lo, hi) = bounds[m.0];
            if lo != hi {
                return None;
            }
            match dim {
                None => dim = Some(lo),
                Some(d) if d != lo => return None,
                _ => {}
            }
        }
        dim
    }

    /// Dimension of `U_x`; requires the poset to be homogeneous.
    pub fn degree(&self, x: ElementId) -> Result<usize> {
        if self.homogeneity().is_none() {
            return Err(Error::NotHomogeneous);
        }
        Ok(self.depth_bounds()[x.0].1)
    }

    /// Height of the poset: the largest number of elements in a chain, minus one.
    pub fn height(&self) -> usize {
        self.depth_bounds().iter().map(|b| b.1).max().unwrap_or(0)
    }

    /// Elements in an order compatible with `<` (smallest index first among ties).
    pub fn linear_extension(&self) -> Vec<ElementId> {
        let n = self.len();
        let mut remaining: Vec<usize> = self.lower_covers.iter().map(Vec::len).collect();
        let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| remaining[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(ElementId(v));
            for &u in &self.upper_covers[v] {
                remaining[u] -= 1;
                if remaining[u] == 0 {
                    ready.insert(u);
                }
            }
        }
        order
    }

    /// The unique top element, if there is one.
    pub fn has_maximum(&self) -> Option<ElementId> {
        match self.maximal_elements().as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    /// The unique bottom element, if there is one.
    pub fn has_minimum(&self) -> Option<ElementId> {
        match self.minimal_elements().as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    /// Connectedness of the comparability graph. The empty poset is not connected.
    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in self.upper_covers[v].iter().chain(&self.lower_covers[v]) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The induced subposet on `keep` (in the given order).
    pub fn subposet(&self, keep: &[ElementId]) -> Poset {
        let labels: Vec<String> = keep.iter().map(|&x| self.labels[x.0].clone()).collect();
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let mut lt = BitMatrix::new(keep.len());
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate() {
                if self.lt(x, y) {
                    lt.set(i, j);
                }
            }
        }
        Poset::from_strict_closure(labels, index, lt)
    }

    /// Removes one element, keeping the induced order on the rest.
    pub fn without(&self, x: ElementId) -> Poset {
        let keep: Vec<ElementId> = self.elements().filter(|&y| y != x).collect();
        self.subposet(&keep)
    }

    /// Adjoins a new element above everything.
    pub fn with_maximum(&self, label: &str) -> Result<Poset> {
        self.adjoin(label, true)
    }

    /// Adjoins a new element below everything.
    pub fn with_minimum(&self, label: &str) -> Result<Poset> {
        self.adjoin(label, false)
    }

    fn adjoin(&self, label: &str, top: bool) -> Result<Poset> {
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        let mut pairs: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (a.0, b.0)).collect();
        for x in 0..n {
            pairs.push(if top { (x, n) } else { (n, x) });
        }
        Poset::from_id_relations(labels, &pairs)
    }

    /// Componentwise product order. Labels are `(p,q)`.
    pub fn product(&self, other: &Poset) -> Poset {
        let mut labels = Vec::with_capacity(self.len() * other.len());
        for p in &self.labels {
            for q in &other.labels {
                labels.push(format!("({p},{q})"));
            }
        }
        self.product_with_labels(other, labels)
    }

    fn product_with_labels(&self, other: &Poset, labels: Vec<String>) -> Poset {
        let m = other.len();
        let mut pairs = Vec::new();
        // covers of a product are (cover, equal) or (equal, cover)
        for &(a, b) in &self.covers {
            for q in 0..m {
                pairs.push((a.0 * m + q, b.0 * m + q));
            }
        }
        for p in 0..self.len() {
            for &(a, b) in &other.covers {
                pairs.push((p * m + a.0, p * m + b.0));
            }
        }
        Poset::from_id_relations(labels, &pairs).expect("product of posets is a poset")
    }

    /// The zigzag fence `I_p` on `0..=p`: even positions are minimal.
    pub fn fence(p: usize) -> Poset {
        let labels: Vec<String> = (0..=p).map(|i| i.to_string()).collect();
        let mut pairs = Vec::new();
        for i in (0..=p).step_by(2) {
            if i < p {
                pairs.push((i, i + 1));
            }
            if i >= 1 {
                pairs.push((i, i - 1));
            }
        }
        Poset::from_id_relations(labels, &pairs).expect("fence is acyclic")
    }

    /// The chain `0 < 1 < ... < n-1` with the given labels.
    pub fn chain<S: AsRef<str>>(labels: &[S]) -> Poset {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let pairs: Vec<(usize, usize)> = (1..labels.len()).map(|i| (i - 1, i)).collect();
        Poset::from_id_relations(labels, &pairs).expect("chain is acyclic")
    }

    /// The Boolean cube `Q_1^n`, labelled by bit strings; the `i`-th character
    /// is coordinate `i`.
    pub fn boolean_cube(n: usize) -> Poset {
        let mut poset = Poset::chain(&["0"]);
        let q1 = Poset::chain(&["0", "1"]);
        for _ in 0..n {
            let labels = poset.labels.iter().flat_map(|p| ["0", "1"].map(|q| format!("{p}{q}"))).collect();
            poset = poset.product_with_labels(&q1, labels);
        }
        if n > 0 {
            // drop the seed "0" prefix
            let labels: Vec<String> = poset.labels.iter().map(|l| l[1..].to_string()).collect();
            let pairs: Vec<(usize, usize)> = poset.covers.iter().map(|&(a, b)| (a.0, b.0)).collect();
            poset = Poset::from_id_relations(labels, &pairs).expect("relabelling keeps order");
        }
        poset
    }

    /// An element whose strict down-set has a maximum or whose strict up-set
    /// has a minimum.
    pub fn is_beat_point(&self, x: ElementId) -> bool {
        self.lower_covers[x.0].len() == 1 || self.upper_covers[x.0].len() == 1
    }

    /// Iteratively removes beat points (lowest index first) until none remain.
    /// The result is a strong deformation retract, hence homotopy equivalent.
    pub fn remove_beat_points(&self) -> Poset {
        let mut current = self.clone();
        loop {
            let Some(x) = current.elements().find(|&x| current.is_beat_point(x)) else { break };
            current = current.without(x);
        }
        current
    }

    /// Relabels elements (same order); `labels` must be distinct.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Poset> {
        if labels.len() != self.len() {
            return Err(Error::DimensionMismatch(format!("{} labels for {} elements", labels.len(), self.len())));
        }
        let pairs: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (a.0, b.0)).collect();
        Poset::from_id_relations(labels, &pairs)
    }
}
