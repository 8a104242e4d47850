//! Discrete cubical chains of a poset.
//!
//! An n-cube is an order-preserving map `Q_1^n -> P`, stored as its `2^n`
//! corner values indexed by bit-vectors, with bit `i - 1` holding coordinate
//! `i`. A 2-cube is therefore written `(x00, x10, x01, x11)`.

mod enumerate;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{ElementId, Poset};

pub use enumerate::{
    cubical_boundary_matrix, cubical_homology, enumerate_cubes, CubeBasis, CubicalComplex, DEFAULT_CUBE_CAP,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Minus,
    Plus,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube {
    corners: Vec<ElementId>,
}

impl Cube {
    /// Panics unless the number of corners is a power of two.
    pub fn new(corners: Vec<ElementId>) -> Cube {
        assert!(corners.len().is_power_of_two(), "a cube has 2^n corners");
        Cube { corners }
    }

    pub fn point(x: ElementId) -> Cube {
        Cube { corners: vec![x] }
    }

    /// Parses corner labels and checks that the result is order-preserving.
    pub fn from_labels<S: AsRef<str>>(poset: &Poset, labels: &[S]) -> Result<Cube> {
        if !labels.len().is_power_of_two() {
            return Err(Error::Parse(format!("{} corners is not a power of two", labels.len())));
        }
        let corners = labels.iter().map(|l| poset.id(l.as_ref())).collect::<Result<Vec<_>>>()?;
        let cube = Cube { corners };
        if !cube.is_monotone(poset) {
            return Err(Error::Parse(format!("{} is not order-preserving", cube.display(poset))));
        }
        Ok(cube)
    }

    pub fn dim(&self) -> usize {
        self.corners.len().trailing_zeros() as usize
    }

    pub fn corners(&self) -> &[ElementId] {
        &self.corners
    }

    pub fn corner(&self, bits: usize) -> ElementId {
        self.corners[bits]
    }

    pub fn is_monotone(&self, poset: &Poset) -> bool {
        let n = self.dim();
        (0..self.corners.len())
            .all(|s| (0..n).filter(|j| s >> j & 1 == 0).all(|j| poset.leq(self.corners[s], self.corners[s | 1 << j])))
    }

    /// `f_i^-` (coordinate `i` fixed to 0) or `f_i^+` (fixed to 1), `1 <= i <= n`.
    pub fn face(&self, i: usize, sign: Sign) -> Cube {
        let n = self.dim();
        assert!(1 <= i && i <= n, "face index {i} out of range for a {n}-cube");
        let bit = i - 1;
        let fixed = match sign {
            Sign::Minus => 0,
            Sign::Plus => 1 << bit,
        };
        let low = (1 << bit) - 1;
        let corners = (0..1usize << (n - 1)).map(|t| self.corners[(t & low) | fixed | (t & !low) << 1]).collect();
        Cube { corners }
    }

    /// Some pair of opposite faces coincide.
    pub fn is_degenerate(&self) -> bool {
        let n = self.dim();
        (0..n).any(|j| {
            (0..self.corners.len()).filter(|s| s >> j & 1 == 0).all(|s| self.corners[s] == self.corners[s | 1 << j])
        })
    }

    /// `sum_i (-1)^i (f_i^- - f_i^+)` with degenerate faces dropped.
    pub fn boundary(&self) -> CubicalChain {
        let n = self.dim();
        let mut out = CubicalChain::zero(n.saturating_sub(1));
        for i in 1..=n {
            let s = if i % 2 == 0 { 1 } else { -1 };
            out.add_term(self.face(i, Sign::Minus), s);
            out.add_term(self.face(i, Sign::Plus), -s);
        }
        out
    }

    pub fn labels(&self, poset: &Poset) -> Vec<String> {
        self.corners.iter().map(|&x| poset.label(x).to_string()).collect()
    }

    pub fn display(&self, poset: &Poset) -> String {
        format!("({})", self.labels(poset).join(","))
    }
}

/// Integer combination of nondegenerate n-cubes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalChain {
    dim: usize,
    terms: BTreeMap<Cube, i64>,
}

#[derive(Serialize)]
struct TermJson {
    cube: Vec<String>,
    coeff: i64,
}

impl CubicalChain {
    pub fn zero(dim: usize) -> Self {
        CubicalChain { dim, terms: BTreeMap::new() }
    }

    pub fn from_cube(cube: Cube) -> Self {
        let mut c = CubicalChain::zero(cube.dim());
        c.add_term(cube, 1);
        c
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `coeff * cube`; degenerate cubes are zero and ignored.
    pub fn add_term(&mut self, cube: Cube, coeff: i64) {
        assert_eq!(cube.dim(), self.dim, "cube dimension differs from chain dimension");
        if coeff == 0 || cube.is_degenerate() {
            return;
        }
        match self.terms.entry(cube) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Cube, i64)> {
        self.terms.iter().map(|(c, &k)| (c, k))
    }

    pub fn coefficient(&self, cube: &Cube) -> i64 {
        self.terms.get(cube).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn boundary(&self) -> CubicalChain {
        let mut out = CubicalChain::zero(self.dim.saturating_sub(1));
        if self.dim == 0 {
            return out;
        }
        for (cube, k) in &self.terms {
            for (face, j) in cube.boundary().terms {
                out.add_term(face, k * j);
            }
        }
        out
    }

    /// Coordinates in `basis`, which must have the chain's dimension.
    pub fn to_vector(&self, basis: &CubeBasis) -> Result<Vec<BigInt>> {
        if basis.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!("{}-chain against a {}-cube basis", self.dim, basis.dim())));
        }
        let mut v = vec![BigInt::from(0); basis.len()];
        for (cube, k) in &self.terms {
            let i = basis
                .index_of(cube)
                .ok_or_else(|| Error::DimensionMismatch(format!("cube {:?} missing from basis", cube.corners)))?;
            v[i] += *k;
        }
        Ok(v)
    }

    pub fn from_vector(basis: &CubeBasis, v: &[BigInt]) -> Result<CubicalChain> {
        let mut c = CubicalChain::zero(basis.dim());
        for (cube, k) in basis.cubes().iter().zip(v) {
            let k = k.to_i64().ok_or_else(|| Error::InternalInvariantViolation("coefficient exceeds i64".into()))?;
            c.add_term(cube.clone(), k);
        }
        Ok(c)
    }

    pub fn display(&self, poset: &Poset) -> String {
        crate::simplicial::format_terms(self.terms.iter().map(|(c, &k)| (c.labels(poset), k)), ('(', ')'))
    }

    /// `[{"cube": [labels...], "coeff": k}, ...]`
    pub fn to_json(&self, poset: &Poset) -> serde_json::Value {
        let rows: Vec<TermJson> =
            self.terms.iter().map(|(c, &k)| TermJson { cube: c.labels(poset), coeff: k }).collect();
        serde_json::to_value(rows).expect("chain serializes")
    }
}

impl Add for CubicalChain {
    type Output = CubicalChain;

    fn add(mut self, rhs: CubicalChain) -> CubicalChain {
        for (c, k) in rhs.terms {
            self.add_term(c, k);
        }
        self
    }
}

impl Neg for CubicalChain {
    type Output = CubicalChain;

    fn neg(mut self) -> CubicalChain {
        for k in self.terms.values_mut() {
            *k = -*k;
        }
        self
    }
}

impl Sub for CubicalChain {
    type Output = CubicalChain;

    fn sub(self, rhs: CubicalChain) -> CubicalChain {
        self + (-rhs)
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.corners.iter().map(|x| x.0.to_string()).collect();
        write!(f, "({})", ids.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Poset {
        Poset::chain(&["a", "b", "c"])
    }

    fn cube(p: &Poset, s: &[&str]) -> Cube {
        Cube::from_labels(p, s).unwrap()
    }

    #[test]
    fn faces_follow_bit_convention() {
        let p = chain3();
        let s = cube(&p, &["a", "b", "a", "c"]);
        assert_eq!(s.face(1, Sign::Minus), cube(&p, &["a", "a"]));
        assert_eq!(s.face(1, Sign::Plus), cube(&p, &["b", "c"]));
        assert_eq!(s.face(2, Sign::Minus), cube(&p, &["a", "b"]));
        assert_eq!(s.face(2, Sign::Plus), cube(&p, &["a", "c"]));
        let k = cube(&p, &["b"; 8]);
        assert_eq!(k.face(3, Sign::Plus), cube(&p, &["b"; 4]));
    }

    #[test]
    fn degeneracy() {
        let p = chain3();
        assert!(cube(&p, &["a", "a"]).is_degenerate());
        assert!(!cube(&p, &["a", "b", "a", "c"]).is_degenerate());
        assert!(cube(&p, &["a", "c", "a", "c"]).is_degenerate());
        assert!(!cube(&p, &["b"]).is_degenerate());
    }

    #[test]
    fn boundaries() {
        let p = chain3();
        assert_eq!(cube(&p, &["a", "b"]).boundary().display(&p), "-(a) + (b)");
        let d = cube(&p, &["a", "b", "a", "c"]).boundary();
        let expected = CubicalChain::from_cube(cube(&p, &["a", "b"])) + CubicalChain::from_cube(cube(&p, &["b", "c"]))
            - CubicalChain::from_cube(cube(&p, &["a", "c"]));
        assert_eq!(d, expected);
        assert!(cube(&p, &["c"; 4]).boundary().is_zero());
        assert!(d.boundary().is_zero());
    }

    #[test]
    fn rejects_non_monotone() {
        let p = chain3();
        assert!(Cube::from_labels(&p, &["b", "a"]).is_err());
        assert!(Cube::from_labels(&p, &["a", "b", "c"]).is_err());
    }

    #[test]
    fn json_dump() {
        let p = chain3();
        let v = cube(&p, &["a", "b"]).boundary().to_json(&p);
        assert_eq!(v, serde_json::json!([{"cube": ["a"], "coeff": -1}, {"cube": ["b"], "coeff": 1}]));
    }
}
