use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{Cube, Sign};
use crate::error::{Error, Result};
use crate::linalg::{homology_from_boundaries, HomologyBasis, HomologyGroup, IntMatrix};
use crate::poset::{ElementId, Poset};

pub const DEFAULT_CUBE_CAP: usize = 1_000_000;

/// The nondegenerate n-cubes of a poset in corner-tuple order.
#[derive(Clone, Debug)]
pub struct CubeBasis {
    dim: usize,
    cubes: Vec<Cube>,
    index: HashMap<Cube, usize>,
    /// order-preserving maps that were degenerate and left out
    pub degenerate: usize,
}

impl CubeBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    /// Nondegenerate plus degenerate.
    pub fn total(&self) -> usize {
        self.cubes.len() + self.degenerate
    }

    pub fn index_of(&self, cube: &Cube) -> Option<usize> {
        self.index.get(cube).copied()
    }
}

struct Enumerator<'a> {
    poset: &'a Poset,
    n: usize,
    cap: usize,
    found: &'a AtomicUsize,
    aborted: &'a AtomicBool,
}

impl Enumerator<'_> {
    /// Extends a partial corner assignment in bit-vector order. Corners
    /// `0..2^(n-1)` form `σ⁻`, the rest `σ⁺`; each new corner must lie above
    /// every corner one bit below it, which covers both the monotonicity of
    /// `σ⁺` and `σ⁻ <= σ⁺`.
    fn extend(&self, corners: &mut Vec<ElementId>, out: &mut Vec<Cube>, degenerate: &mut usize) -> Result<()> {
        let s = corners.len();
        if s == 1 << self.n {
            let cube = Cube { corners: corners.clone() };
            if cube.is_degenerate() {
                *degenerate += 1;
            } else {
                if self.found.fetch_add(1, Ordering::Relaxed) >= self.cap {
                    self.aborted.store(true, Ordering::Relaxed);
                    return Err(Error::CapExceeded { dim: self.n, cap: self.cap, partial: self.cap + 1 });
                }
                out.push(cube);
            }
            return Ok(());
        }
        if self.aborted.load(Ordering::Relaxed) {
            return Err(Error::CapExceeded { dim: self.n, cap: self.cap, partial: self.cap + 1 });
        }
        let mut mask: Vec<u64> = Vec::new();
        for j in (0..self.n).filter(|j| s >> j & 1 == 1) {
            let row = self.poset.up_words(corners[s ^ 1 << j]);
            if mask.is_empty() {
                mask.extend_from_slice(row);
            } else {
                mask.iter_mut().zip(row).for_each(|(m, r)| *m &= r);
            }
        }
        for (w, &word) in mask.iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let y = w * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                corners.push(ElementId(y));
                self.extend(corners, out, degenerate)?;
                corners.pop();
            }
        }
        Ok(())
    }
}

/// All order-preserving maps `Q_1^n -> P`; the nondegenerate ones form the
/// basis. Work is split across threads by the value of corner `0...0`, and
/// the result does not depend on the thread count.
pub fn enumerate_cubes(poset: &Poset, n: usize, cap: usize) -> Result<CubeBasis> {
    if n >= usize::BITS as usize - 1 {
        return Err(Error::DimensionTooLarge { dim: n, max: usize::BITS as usize - 2 });
    }
    let found = AtomicUsize::new(0);
    let aborted = AtomicBool::new(false);
    let e = Enumerator { poset, n, cap, found: &found, aborted: &aborted };
    let blocks: Vec<(Vec<Cube>, usize)> = poset
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|x| {
            let (mut out, mut degenerate) = (Vec::new(), 0);
            e.extend(&mut vec![x], &mut out, &mut degenerate)?;
            Ok((out, degenerate))
        })
        .collect::<Result<_>>()?;
    let mut cubes = Vec::new();
    let mut degenerate = 0;
    for (b, d) in blocks {
        cubes.extend(b);
        degenerate += d;
    }
    let index = cubes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    Ok(CubeBasis { dim: n, cubes, index, degenerate })
}

/// `∂_n` from the n-cube basis to the (n-1)-cube basis.
pub fn cubical_boundary_matrix(basis_n: &CubeBasis, basis_nm1: &CubeBasis) -> Result<IntMatrix> {
    let n = basis_n.dim();
    if n == 0 {
        return Ok(IntMatrix::zeros(0, basis_n.len()));
    }
    if basis_nm1.dim() + 1 != n {
        return Err(Error::DimensionMismatch(format!("bases of dimension {n} and {}", basis_nm1.dim())));
    }
    let columns = basis_n
        .cubes()
        .par_iter()
        .map(|cube| {
            let mut col = Vec::with_capacity(2 * n);
            for i in 1..=n {
                let s: i64 = if i % 2 == 0 { 1 } else { -1 };
                for (sign, k) in [(Sign::Minus, s), (Sign::Plus, -s)] {
                    let face = cube.face(i, sign);
                    if let Some(row) = basis_nm1.index_of(&face) {
                        col.push((row, BigInt::from(k)));
                    } else if !face.is_degenerate() {
                        return Err(Error::InternalInvariantViolation(format!("face {face} missing from basis")));
                    }
                }
            }
            Ok(col)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_columns(basis_nm1.len(), columns))
}

/// Cube bases of a poset in dimensions `0..=top`.
#[derive(Clone, Debug)]
pub struct CubicalComplex {
    poset: Poset,
    bases: Vec<CubeBasis>,
}

impl CubicalComplex {
    pub fn build(poset: &Poset, top: usize, cap: usize) -> Result<CubicalComplex> {
        let bases = (0..=top).map(|n| enumerate_cubes(poset, n, cap)).collect::<Result<_>>()?;
        Ok(CubicalComplex { poset: poset.clone(), bases })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn top_dim(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, n: usize) -> &CubeBasis {
        &self.bases[n]
    }

    /// `∂_n`; for `n = 0` the zero map to the trivial group.
    pub fn boundary_matrix(&self, n: usize) -> Result<IntMatrix> {
        match n {
            0 => cubical_boundary_matrix(&self.bases[0], &self.bases[0]),
            _ => cubical_boundary_matrix(&self.bases[n], &self.bases[n - 1]),
        }
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n + 1 > self.top_dim() {
            return Err(Error::DimensionMismatch(format!("H_{n} needs cubes up to dimension {}", n + 1)));
        }
        Ok(())
    }

    /// `H_n`, needing bases up to `n + 1`.
    pub fn homology(&self, n: usize) -> Result<HomologyGroup> {
        self.check_degree(n)?;
        homology_from_boundaries(&self.boundary_matrix(n)?, &self.boundary_matrix(n + 1)?)
    }

    pub fn homology_basis(&self, n: usize) -> Result<HomologyBasis> {
        self.check_degree(n)?;
        HomologyBasis::new(&self.boundary_matrix(n)?, &self.boundary_matrix(n + 1)?)
    }
}

/// `H_0 .. H_max_dim` of the cubical chain complex.
pub fn cubical_homology(poset: &Poset, max_dim: usize, cap: usize) -> Result<Vec<HomologyGroup>> {
    let cx = CubicalComplex::build(poset, max_dim + 1, cap)?;
    (0..=max_dim).map(|n| cx.homology(n)).collect()
}
