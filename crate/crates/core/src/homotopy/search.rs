use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;

use super::Loop;
use crate::error::{Error, Result};
use crate::poset::{ElementId, Poset};

/// A based homotopy from a loop to the constant loop, as a sequence of loops
/// of one common radius in which neighbours are pointwise comparable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyCertificate {
    pub rows: Vec<Loop>,
}

impl HomotopyCertificate {
    /// Re-checks every row and step: valid loops of equal radius, consecutive
    /// rows comparable, starting at `f` and ending at the constant loop.
    pub fn verify(&self, poset: &Poset, f: &Loop) -> bool {
        let (Some(first), Some(last)) = (self.rows.first(), self.rows.last()) else { return false };
        let r = first.radius();
        first.word() == f.padded(r.max(f.radius())).word()
            && last.is_constant()
            && last.basepoint() == f.basepoint()
            && self.rows.iter().all(|g| g.radius() == r && g.basepoint() == f.basepoint() && g.is_valid(poset))
            && self.rows.windows(2).all(|w| pointwise_comparable(poset, &w[0], &w[1]))
    }

    pub fn display(&self, poset: &Poset) -> Vec<String> {
        self.rows.iter().map(|g| g.display(poset)).collect()
    }
}

fn pointwise_comparable(poset: &Poset, f: &Loop, g: &Loop) -> bool {
    let (wf, wg) = (f.word(), g.word());
    wf.len() == wg.len()
        && (wf.iter().zip(&wg).all(|(&x, &y)| poset.leq(x, y)) || wf.iter().zip(&wg).all(|(&x, &y)| poset.leq(y, x)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(HomotopyCertificate),
    /// No certificate among loops of radius at most the cap. `exhausted`
    /// means the whole component was explored before the step cap was hit;
    /// this still says nothing about larger radii.
    NotFoundWithinBounds {
        explored: usize,
        exhausted: bool,
    },
}

/// Interior values at positions `-r+1..r`, the state of the search.
type Word = Vec<ElementId>;

fn interior(f: &Loop, r: usize) -> Word {
    let r = r as i64;
    (-r + 1..r).map(|x| f.value(x)).collect()
}

fn from_interior(base: ElementId, r: usize, w: &[ElementId]) -> Loop {
    let start = -(r as i64) + 1;
    Loop::new(base, r, w.iter().enumerate().map(|(i, &v)| (start + i as i64, v)))
}

/// Every valid loop of radius `r` (after padding `f`) that is pointwise below
/// or pointwise above `f`, other than `f` itself.
pub fn comparable_loops(poset: &Poset, f: &Loop, r: usize) -> Vec<Loop> {
    let base = f.basepoint();
    let w = interior(f, r.max(f.radius()));
    let r = r.max(f.radius());
    let mut out = Vec::new();
    for below in [true, false] {
        let options: Vec<Vec<ElementId>> =
            w.iter().map(|&v| if below { poset.down_set(v) } else { poset.up_set(v) }).collect();
        let mut current = Vec::with_capacity(w.len());
        extend(poset, base, r, &options, &mut current, &mut |g| {
            if g != w.as_slice() {
                out.push(g.to_vec());
            }
        });
    }
    out.sort();
    out.dedup();
    out.into_iter().map(|g| from_interior(base, r, &g)).collect()
}

/// Depth-first over positions left to right, keeping the zigzag inequalities
/// with the previous position (and with the basepoint at both ends).
fn extend(
    poset: &Poset,
    base: ElementId,
    r: usize,
    options: &[Vec<ElementId>],
    current: &mut Vec<ElementId>,
    emit: &mut dyn FnMut(&[ElementId]),
) {
    let i = current.len();
    if i == options.len() {
        emit(current);
        return;
    }
    let x = -(r as i64) + 1 + i as i64;
    let prev = current.last().copied().unwrap_or(base);
    for &y in &options[i] {
        let ok_prev = if x % 2 == 0 { poset.leq(y, prev) } else { poset.leq(prev, y) };
        let ok_next = i + 1 < options.len() || if x % 2 == 0 { poset.leq(y, base) } else { poset.leq(base, y) };
        if ok_prev && ok_next {
            current.push(y);
            extend(poset, base, r, options, current, emit);
            current.pop();
        }
    }
}

/// Breadth-first search for a certificate that `f` is null-homotopic, over
/// valid loops of radius `radius_cap`, edges joining pointwise comparable
/// loops. Returns a shortest certificate, re-verified, or reports that none
/// was found after expanding at most `step_cap` loops.
pub fn null_homotopy_search(poset: &Poset, f: &Loop, radius_cap: usize, step_cap: usize) -> Result<SearchOutcome> {
    let report = f.validate(poset);
    if !report.valid {
        return Err(Error::InvalidLoop(report.violations.join("; ")));
    }
    if f.minimal_radius() > radius_cap {
        return Err(Error::InvalidLoop(format!("radius {} exceeds the radius cap {radius_cap}", f.minimal_radius())));
    }
    let r = radius_cap;
    let base = f.basepoint();
    let start = interior(f, r);
    let target = vec![base; start.len()];
    let mut parent: HashMap<Word, Option<Word>> = HashMap::from([(start.clone(), None)]);
    let mut queue = VecDeque::from([start]);
    let mut explored = 0;
    while let Some(w) = queue.pop_front() {
        if w == target {
            let mut rows = vec![from_interior(base, r, &w)];
            let mut cur = w;
            while let Some(Some(p)) = parent.get(&cur) {
                rows.push(from_interior(base, r, p));
                cur = p.clone();
            }
            rows.reverse();
            let cert = HomotopyCertificate { rows };
            if !cert.verify(poset, f) {
                return Err(Error::InternalInvariantViolation("homotopy certificate failed re-verification".into()));
            }
            return Ok(SearchOutcome::Found(cert));
        }
        if explored == step_cap {
            return Ok(SearchOutcome::NotFoundWithinBounds { explored, exhausted: false });
        }
        explored += 1;
        for g in comparable_loops(poset, &from_interior(base, r, &w), r) {
            let gw = interior(&g, r);
            if !parent.contains_key(&gw) {
                parent.insert(gw.clone(), Some(w.clone()));
                queue.push_back(gw);
            }
        }
    }
    Ok(SearchOutcome::NotFoundWithinBounds { explored, exhausted: true })
}

/// A uniformly built random valid loop of the given radius: positions are
/// filled left to right from the values compatible with the previous one,
/// restarting on a dead end at the right edge.
pub fn random_loop<R: Rng + ?Sized>(poset: &Poset, basepoint: ElementId, radius: usize, rng: &mut R) -> Loop {
    let r = radius as i64;
    let all: Vec<ElementId> = poset.elements().collect();
    'attempt: for _ in 0..10_000 {
        let mut values = Vec::new();
        let mut prev = basepoint;
        for x in -r + 1..r {
            let options: Vec<ElementId> = all
                .iter()
                .copied()
                .filter(|&y| if x % 2 == 0 { poset.leq(y, prev) } else { poset.leq(prev, y) })
                .filter(|&y| x + 1 < r || if x % 2 == 0 { poset.leq(y, basepoint) } else { poset.leq(basepoint, y) })
                .collect();
            let Some(&y) = options.choose(rng) else { continue 'attempt };
            values.push((x, y));
            prev = y;
        }
        return Loop::new(basepoint, radius, values);
    }
    Loop::constant(basepoint).padded(radius)
}
