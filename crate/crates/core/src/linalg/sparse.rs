//! Invariant factors of large sparse matrices.
//!
//! Unit pivots are eliminated first: once a pivot `±1` is the only nonzero of
//! its row (after column operations), the matrix splits as `[±1] (+) rest`, so
//! the pivot row and column are dropped and a factor `1` recorded. Pivots are
//! chosen from the shortest available column (fewest nonzeros), and within it
//! the unit whose row is least occupied. Whatever remains without a unit is
//! handed to the dense Smith normal form.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use num_bigint::BigInt;

use super::coeff::{with_fallback, Checked, Coeff};
use super::snf::{dense_snf, Dense, Track};
use super::IntMatrix;

struct SparseElim<T> {
    cols: Vec<Vec<(usize, T)>>,
    /// columns holding a nonzero in each row
    occupancy: Vec<BTreeSet<usize>>,
    alive: Vec<bool>,
    units: usize,
}

impl<T: Coeff> SparseElim<T> {
    fn new(m: &IntMatrix) -> Checked<Self> {
        let mut occupancy = vec![BTreeSet::new(); m.nrows()];
        let mut cols = Vec::with_capacity(m.ncols());
        for (j, col) in m.columns().iter().enumerate() {
            let mut c = Vec::with_capacity(col.len());
            for (i, v) in col {
                c.push((*i, T::from_big(v)?));
                occupancy[*i].insert(j);
            }
            cols.push(c);
        }
        let alive = vec![true; cols.len()];
        Ok(SparseElim { cols, occupancy, alive, units: 0 })
    }

    fn entry(&self, j: usize, row: usize) -> Option<&T> {
        self.cols[j].binary_search_by_key(&row, |(r, _)| *r).ok().map(|k| &self.cols[j][k].1)
    }

    /// `col[dst] -= c * col[src]`, keeping occupancy in sync.
    fn col_sub(&mut self, dst: usize, src: usize, c: &T) -> Checked<()> {
        let a = std::mem::take(&mut self.cols[dst]);
        let b = &self.cols[src];
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut ia, mut ib) = (0, 0);
        while ia < a.len() || ib < b.len() {
            let ra = a.get(ia).map_or(usize::MAX, |e| e.0);
            let rb = b.get(ib).map_or(usize::MAX, |e| e.0);
            if ra < rb {
                out.push(a[ia].clone());
                ia += 1;
            } else if rb < ra {
                let v = T::zero().sub_mul(c, &b[ib].1)?;
                self.occupancy[rb].insert(dst);
                out.push((rb, v));
                ib += 1;
            } else {
                let v = a[ia].1.sub_mul(c, &b[ib].1)?;
                if v.is_zero() {
                    self.occupancy[ra].remove(&dst);
                } else {
                    out.push((ra, v));
                }
                ia += 1;
                ib += 1;
            }
        }
        self.cols[dst] = out;
        Ok(())
    }

    fn remove_column(&mut self, j: usize) {
        for (r, _) in std::mem::take(&mut self.cols[j]) {
            self.occupancy[r].remove(&j);
        }
        self.alive[j] = false;
    }

    fn unit_pivot(&self, j: usize) -> Option<usize> {
        self.cols[j]
            .iter()
            .filter(|(_, v)| v.is_unit())
            .min_by_key(|(r, _)| (self.occupancy[*r].len(), *r))
            .map(|(r, _)| *r)
    }

    fn eliminate_units(&mut self) -> Checked<()> {
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
            (0..self.cols.len()).map(|j| Reverse((self.cols[j].len(), j))).collect();
        while let Some(Reverse((len, j))) = heap.pop() {
            if !self.alive[j] || self.cols[j].len() != len {
                continue; // stale heap entry
            }
            if len == 0 {
                self.alive[j] = false;
                continue;
            }
            let Some(row) = self.unit_pivot(j) else { continue };
            let pivot = self.entry(j, row).expect("pivot present").clone();
            let others: Vec<usize> = self.occupancy[row].iter().copied().filter(|&k| k != j).collect();
            for k in others {
                // pivot is a unit, so a / pivot == a * pivot
                let a = self.entry(k, row).expect("occupancy in sync").clone();
                let factor = a.mul(&pivot)?;
                self.col_sub(k, j, &factor)?;
                heap.push(Reverse((self.cols[k].len(), k)));
            }
            self.remove_column(j);
            self.units += 1;
        }
        Ok(())
    }

    fn remainder(&self) -> Dense<T> {
        let live_cols: Vec<usize> =
            (0..self.cols.len()).filter(|&j| self.alive[j] && !self.cols[j].is_empty()).collect();
        let live_rows: Vec<usize> = (0..self.occupancy.len()).filter(|&r| !self.occupancy[r].is_empty()).collect();
        let mut data = vec![vec![T::zero(); live_cols.len()]; live_rows.len()];
        for (jj, &j) in live_cols.iter().enumerate() {
            for (r, v) in &self.cols[j] {
                let ii = live_rows.binary_search(r).expect("occupied row");
                data[ii][jj] = v.clone();
            }
        }
        Dense { rows: live_rows.len(), cols: live_cols.len(), data }
    }
}

fn factors<T: Coeff>(m: &IntMatrix) -> Checked<Vec<BigInt>> {
    let mut elim = SparseElim::<T>::new(m)?;
    elim.eliminate_units()?;
    let rest = elim.remainder();
    if rest.rows > 0 && rest.cols > 0 {
        log::trace!("dense remainder {}x{} after {} unit pivots", rest.rows, rest.cols, elim.units);
    }
    let tail = dense_snf(rest, Track::NONE)?.diag;
    let mut out = vec![BigInt::from(1); elim.units];
    out.extend(tail.iter().map(Coeff::to_big));
    Ok(out)
}

/// Nonzero invariant factors `d_1 | d_2 | ...` of `m`; their count is the rank.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    with_fallback(|| factors::<i64>(m), || factors::<BigInt>(m))
}

impl IntMatrix {
    pub fn rank(&self) -> usize {
        invariant_factors(self).len()
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        invariant_factors(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::smith_normal_form;

    #[test]
    fn agrees_with_dense_snf() {
        let m = IntMatrix::from_rows(&[
            vec![1, 1, 0, 0, 2],
            vec![-1, 0, 1, 0, 0],
            vec![0, -1, -1, 2, 0],
            vec![0, 0, 0, 2, 4],
        ]);
        assert_eq!(invariant_factors(&m), smith_normal_form(&m).diagonal);
    }

    #[test]
    fn units_then_torsion() {
        let m = IntMatrix::from_rows(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(invariant_factors(&m), vec![BigInt::from(1), BigInt::from(2)]);
        assert_eq!(IntMatrix::zeros(3, 4).rank(), 0);
    }
}
