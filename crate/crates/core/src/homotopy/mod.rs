//! Based loops on the zigzag line and the discrete Hurewicz map.
//!
//! The zigzag line is the fence on `Z`: even integers sit below their odd
//! neighbours, so a loop `f` must satisfy `f(2i) <= f(2i ± 1)`. A loop of
//! radius `r` equals its basepoint wherever `|x| >= r`.

mod grid;
mod search;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cubical::{CubicalChain, CubicalComplex};
use crate::error::{Error, Result};
use crate::linalg::{ClassCoordinates, HomologyBasis, HomologyGroup};
use crate::poset::{ElementId, Poset};

pub use grid::{phi, translate, GridMap, MAX_GRID_DIM};
pub use search::{comparable_loops, null_homotopy_search, random_loop, HomotopyCertificate, SearchOutcome};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Loop {
    basepoint: ElementId,
    radius: usize,
    /// only positions holding something other than the basepoint
    values: BTreeMap<i64, ElementId>,
}

/// Outcome of [`Loop::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopReport {
    pub valid: bool,
    pub violations: Vec<String>,
}

impl Loop {
    pub fn constant(basepoint: ElementId) -> Loop {
        Loop { basepoint, radius: 0, values: BTreeMap::new() }
    }

    /// No checks beyond dropping entries equal to the basepoint; see
    /// [`Loop::validate`].
    pub fn new(basepoint: ElementId, radius: usize, values: impl IntoIterator<Item = (i64, ElementId)>) -> Loop {
        let values = values.into_iter().filter(|(_, v)| *v != basepoint).collect();
        Loop { basepoint, radius, values }
    }

    /// Loop with the smallest radius containing the support of `values`.
    pub fn with_minimal_radius(basepoint: ElementId, values: impl IntoIterator<Item = (i64, ElementId)>) -> Loop {
        let mut f = Loop::new(basepoint, 0, values);
        f.radius = f.minimal_radius();
        f
    }

    pub fn basepoint(&self) -> ElementId {
        self.basepoint
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn value(&self, x: i64) -> ElementId {
        self.values.get(&x).copied().unwrap_or(self.basepoint)
    }

    /// Smallest `r` with the loop equal to the basepoint outside `(-r, r)`.
    pub fn minimal_radius(&self) -> usize {
        self.values.keys().map(|x| x.unsigned_abs() as usize + 1).max().unwrap_or(0)
    }

    /// The same map declared with a larger radius.
    pub fn padded(&self, radius: usize) -> Loop {
        assert!(radius >= self.radius, "padding cannot shrink the radius");
        Loop { radius, ..self.clone() }
    }

    pub fn is_constant(&self) -> bool {
        self.values.is_empty()
    }

    /// Values at `-r..=r`.
    pub fn word(&self) -> Vec<ElementId> {
        let r = self.radius as i64;
        (-r..=r).map(|x| self.value(x)).collect()
    }

    /// Checks the support bound and the zigzag inequalities everywhere.
    pub fn validate(&self, poset: &Poset) -> LoopReport {
        let mut violations = Vec::new();
        let r = self.radius as i64;
        for (&x, &v) in &self.values {
            if x.abs() >= r {
                violations.push(format!(
                    "position {x} holds {} outside radius {r}, expected basepoint {}",
                    poset.label(v),
                    poset.label(self.basepoint)
                ));
            }
        }
        let lo = self.values.keys().next().map_or(-r, |&x| x.min(-r)) - 1;
        let hi = self.values.keys().last().map_or(r, |&x| x.max(r)) + 1;
        for x in (lo..hi).filter(|x| x % 2 == 0) {
            for y in [x - 1, x + 1] {
                let (low, high) = (self.value(x), self.value(y));
                if !poset.leq(low, high) {
                    violations.push(format!(
                        "value({x}) = {} is not <= value({y}) = {}",
                        poset.label(low),
                        poset.label(high)
                    ));
                }
            }
        }
        LoopReport { valid: violations.is_empty(), violations }
    }

    pub fn is_valid(&self, poset: &Poset) -> bool {
        self.validate(poset).valid
    }

    fn require_valid(&self, poset: &Poset) -> Result<()> {
        let report = self.validate(poset);
        if report.valid {
            Ok(())
        } else {
            Err(Error::InvalidLoop(report.violations.join("; ")))
        }
    }

    /// `f^{-1}(x) = f(-x)`.
    pub fn inverse(&self) -> Loop {
        Loop {
            basepoint: self.basepoint,
            radius: self.radius,
            values: self.values.iter().map(|(&x, &v)| (-x, v)).collect(),
        }
    }

    /// `f` on the left, `g` on the right, recentred to radius `r_f + r_g`.
    /// Odd radii are first padded to the next even number so every shift is
    /// even and the zigzag parity is kept.
    pub fn concat(&self, g: &Loop) -> Result<Loop> {
        if self.basepoint != g.basepoint {
            return Err(Error::BasepointMismatch);
        }
        let rf = self.radius.next_multiple_of(2) as i64;
        let rg = g.radius.next_multiple_of(2) as i64;
        // (f.g)(x) = f(x) for x <= rf, g(x - rf - rg) beyond; then shift by -rg
        let left = self.values.iter().map(|(&x, &v)| (x - rg, v));
        let right = g.values.iter().map(|(&x, &v)| (x + rf, v));
        Ok(Loop::new(self.basepoint, (rf + rg) as usize, left.chain(right)))
    }

    /// `"b > d < a > c < b"` over positions `-r..=r`.
    pub fn display(&self, poset: &Poset) -> String {
        let r = self.radius as i64;
        let mut out = String::new();
        for x in -r..=r {
            if x > -r {
                out.push_str(if (x - 1) % 2 == 0 { " > " } else { " < " });
            }
            out.push_str(poset.label(self.value(x)));
        }
        out
    }

    /// Parses a loop literal such as `"b > d < a > c < b"`.
    ///
    /// `x > y` is an arrow `x -> y` (so `x <= y`) and puts `x` at an even
    /// position; `x < y` puts `x` at an odd one. Comparators must alternate.
    /// The word is centred (shifted one step left if the first comparator
    /// demands the other parity) and the basepoint defaults to the first token.
    pub fn parse(poset: &Poset, literal: &str, basepoint: Option<&str>) -> Result<Loop> {
        let tokens: Vec<&str> = literal.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(Error::Parse("empty loop literal".into()));
        }
        if tokens.len().is_multiple_of(2) {
            return Err(Error::Parse("loop literal must alternate labels and comparators".into()));
        }
        let labels: Vec<&str> = tokens.iter().step_by(2).copied().collect();
        let comparators: Vec<&str> = tokens.iter().skip(1).step_by(2).copied().collect();
        for c in &comparators {
            if *c != ">" && *c != "<" {
                return Err(Error::Parse(format!("expected `>` or `<`, found `{c}`")));
            }
        }
        if comparators.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse("comparators must alternate to follow the zigzag".into()));
        }
        let m = labels.len() as i64;
        let mut start = -(m / 2);
        // a leading `>` needs an even first position, a leading `<` an odd one
        if let Some(first) = comparators.first() {
            let want_even = *first == ">";
            if (start % 2 == 0) != want_even {
                start -= 1;
            }
        }
        let ids = labels.iter().map(|l| poset.id(l)).collect::<Result<Vec<_>>>()?;
        let base = match basepoint {
            Some(b) => poset.id(b)?,
            None => ids[0],
        };
        let values = ids.into_iter().enumerate().map(|(i, v)| (start + i as i64, v));
        Ok(Loop::with_minimal_radius(base, values))
    }

    pub fn from_json(poset: &Poset, s: &str) -> Result<Loop> {
        let j: LoopJson = serde_json::from_str(s)?;
        let base = poset.id(&j.basepoint)?;
        let mut values = Vec::new();
        for (k, v) in &j.values {
            let x: i64 = k.trim().parse().map_err(|_| Error::Parse(format!("position `{k}` is not an integer")))?;
            values.push((x, poset.id(v)?));
        }
        let mut f = Loop::with_minimal_radius(base, values);
        if let Some(r) = j.radius {
            f.radius = r;
        }
        Ok(f)
    }

    pub fn to_json(&self, poset: &Poset) -> String {
        let j = LoopJson {
            basepoint: poset.label(self.basepoint).to_string(),
            radius: Some(self.radius),
            values: self.values.iter().map(|(x, v)| (x.to_string(), poset.label(*v).to_string())).collect(),
        };
        serde_json::to_string(&j).expect("loop serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct LoopJson {
    basepoint: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    radius: Option<usize>,
    values: BTreeMap<String, String>,
}

/// The cubical side of the Hurewicz map for one poset: `H_1^Cube` with an
/// explicit basis, reused across many loops.
pub struct Hurewicz {
    cubes: CubicalComplex,
    basis: HomologyBasis,
}

/// `h^D([f]) = [φ(T_r f)]` for one loop.
#[derive(Clone, Debug)]
pub struct HurewiczImage {
    pub chain: CubicalChain,
    pub class: ClassCoordinates,
}

impl Hurewicz {
    pub fn new(poset: &Poset, cap: usize) -> Result<Hurewicz> {
        let cubes = CubicalComplex::build(poset, 2, cap)?;
        let basis = cubes.homology_basis(1)?;
        Ok(Hurewicz { cubes, basis })
    }

    pub fn group(&self) -> &HomologyGroup {
        &self.basis.group
    }

    pub fn cubes(&self) -> &CubicalComplex {
        &self.cubes
    }

    pub fn apply(&self, f: &Loop) -> Result<HurewiczImage> {
        let poset = self.cubes.poset();
        f.require_valid(poset)?;
        let chain = phi(poset, &translate(f))?;
        if !chain.boundary().is_zero() {
            return Err(Error::InternalInvariantViolation(format!(
                "φ(T_r f) is not a cycle: boundary {}",
                chain.boundary().display(poset)
            )));
        }
        let chain = if chain.is_zero() { CubicalChain::zero(1) } else { chain };
        let class = self.basis.class_of(&chain.to_vector(self.cubes.basis(1))?)?;
        Ok(HurewiczImage { chain, class })
    }
}

pub fn hurewicz(poset: &Poset, f: &Loop, cap: usize) -> Result<HurewiczImage> {
    Hurewicz::new(poset, cap)?.apply(f)
}

/// `H_1^Cube(P)`, which is the abelianization of the discrete fundamental
/// group of a connected poset.
pub fn pi1_abelianized(poset: &Poset, cap: usize) -> Result<HomologyGroup> {
    if poset.is_empty() {
        return Err(Error::EmptyPoset);
    }
    if !poset.is_connected() {
        return Err(Error::NotConnected);
    }
    CubicalComplex::build(poset, 2, cap)?.homology(1)
}
