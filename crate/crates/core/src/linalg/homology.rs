use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::snf::{snf_tracked, Track};
use super::IntMatrix;
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^betti (+) Z/t_1 (+) ... (+) Z/t_k`
/// with `t_1 | t_2 | ... | t_k` and every `t_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        HomologyGroup { betti: 0, torsion: Vec::new() }
    }

    pub fn free(betti: usize) -> Self {
        HomologyGroup { betti, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn check_composable(d_n: &IntMatrix, d_np1: &IntMatrix) -> Result<()> {
    if d_n.ncols() != d_np1.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "d_n has {} columns but d_(n+1) has {} rows",
            d_n.ncols(),
            d_np1.nrows()
        )));
    }
    if !d_n.mul(d_np1)?.is_zero() {
        return Err(Error::NotAComplex(format!(
            "{}x{} times {}x{}",
            d_n.nrows(),
            d_n.ncols(),
            d_np1.nrows(),
            d_np1.ncols()
        )));
    }
    Ok(())
}

/// `ker d_n / im d_(n+1)` from the two boundary matrices around degree `n`.
pub fn homology_from_boundaries(d_n: &IntMatrix, d_np1: &IntMatrix) -> Result<HomologyGroup> {
    check_composable(d_n, d_np1)?;
    let rank_n = d_n.rank();
    let factors = d_np1.invariant_factors();
    let betti = d_n.ncols() - rank_n - factors.len();
    let torsion = factors.into_iter().filter(|d| !d.is_one()).collect();
    Ok(HomologyGroup { betti, torsion })
}

/// Coordinates of a homology class: integer coordinates on the free part and
/// residues on the cyclic torsion summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCoordinates {
    pub free: Vec<BigInt>,
    /// `(residue, order)` with `0 <= residue < order`.
    pub torsion: Vec<(BigInt, BigInt)>,
}

impl ClassCoordinates {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(|(r, _)| r.is_zero())
    }
}

/// An explicit presentation of `H_n` that can name the class of any cycle.
///
/// Built from the Smith form of `d_n` (whose trailing `V` columns form a basis
/// `Z` of the cycle lattice) and the Smith form of `d_(n+1)` rewritten in that
/// basis.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub group: HomologyGroup,
    cycles: IntMatrix,
    /// maps a cycle to its coordinates in `cycles`
    cycle_coords: IntMatrix,
    change: IntMatrix,
    change_inv: IntMatrix,
    divisors: Vec<BigInt>,
}

impl HomologyBasis {
    pub fn new(d_n: &IntMatrix, d_np1: &IntMatrix) -> Result<HomologyBasis> {
        check_composable(d_n, d_np1)?;
        let n = d_n.ncols();
        let snf = snf_tracked(d_n, Track { v: true, v_inv: true, ..Track::NONE });
        let rank = snf.diag.len();
        let kernel_idx: Vec<usize> = (rank..n).collect();
        let v = snf.v.expect("tracked");
        let v_inv = snf.v_inv.expect("tracked");
        let cycles = v.select_columns(&kernel_idx);
        let cycle_coords = v_inv.transpose().select_columns(&kernel_idx).transpose();

        // boundaries written in cycle coordinates
        let w = cycle_coords.mul(d_np1)?;
        let snf_w = snf_tracked(&w, Track { u: true, u_inv: true, ..Track::NONE });
        let divisors = snf_w.diag;
        let k = kernel_idx.len();
        let group = HomologyGroup {
            betti: k - divisors.len(),
            torsion: divisors.iter().filter(|d| !d.is_one()).cloned().collect(),
        };
        Ok(HomologyBasis {
            group,
            cycles,
            cycle_coords,
            change: snf_w.u.expect("tracked"),
            change_inv: snf_w.u_inv.expect("tracked"),
            divisors,
        })
    }

    pub fn chain_rank(&self) -> usize {
        self.cycles.nrows()
    }

    /// Basis of the cycle lattice, one column per cycle.
    pub fn cycle_basis(&self) -> &IntMatrix {
        &self.cycles
    }

    /// Coordinates of `z` in the cycle basis, checking that `z` is a cycle.
    pub fn cycle_coordinates(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        let w = self.cycle_coords.mul_vec(z)?;
        if self.cycles.mul_vec(&w)? != z {
            return Err(Error::NotACycle);
        }
        Ok(w)
    }

    pub fn class_of(&self, z: &[BigInt]) -> Result<ClassCoordinates> {
        let w = self.cycle_coordinates(z)?;
        let y = self.change.mul_vec(&w)?;
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        for (i, yi) in y.into_iter().enumerate() {
            match self.divisors.get(i) {
                Some(d) if d.is_one() => {}
                Some(d) => torsion.push((yi.mod_floor(d), d.clone())),
                None => free.push(yi),
            }
        }
        Ok(ClassCoordinates { free, torsion })
    }

    /// Representative cycles: the free generators, then one per torsion summand.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        let k = self.cycles.ncols();
        let rank = self.divisors.len();
        let order = (rank..k).chain((0..rank).filter(|&i| !self.divisors[i].is_one()));
        order
            .map(|i| {
                let w = self.change_inv.column_dense(i);
                self.cycles.mul_vec(&w).expect("shapes agree")
            })
            .collect()
    }
}
