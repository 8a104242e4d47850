//! Dense Smith normal form with optional transform tracking, and integer
//! linear system solving on top of it.
//!
//! Pivoting rule: the active entry of smallest nonzero absolute value, ties
//! broken by lowest row and then lowest column. With this rule `D`, `U` and
//! `V` are fully determined by the input.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::coeff::{with_fallback, Checked, Coeff};
use super::IntMatrix;
use crate::error::{Error, Result};

/// Which transforms to accumulate.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Track {
    pub u: bool,
    pub v: bool,
    pub u_inv: bool,
    pub v_inv: bool,
}

impl Track {
    pub const NONE: Track = Track { u: false, v: false, u_inv: false, v_inv: false };
    pub const UV: Track = Track { u: true, v: true, u_inv: false, v_inv: false };
}

/// Row-major dense matrix used inside the elimination kernels.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Dense<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<T>>,
}

impl<T: Coeff> Dense<T> {
    fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect();
        Dense { rows: n, cols: n, data }
    }

    pub(crate) fn from_int(m: &IntMatrix) -> Checked<Self> {
        let mut data = vec![vec![T::zero(); m.ncols()]; m.nrows()];
        for (j, col) in m.columns().iter().enumerate() {
            for (i, v) in col {
                data[*i][j] = T::from_big(v)?;
            }
        }
        Ok(Dense { rows: m.nrows(), cols: m.ncols(), data })
    }

    pub(crate) fn to_int(&self) -> IntMatrix {
        let mut columns = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    columns[j].push((i, v.to_big()));
                }
            }
        }
        IntMatrix::from_columns(self.rows, columns)
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.data {
            row.swap(a, b);
        }
    }

    /// `row[dst] += c * row[src]`
    fn row_axpy(&mut self, dst: usize, src: usize, c: &T) -> Checked<()> {
        for j in 0..self.cols {
            if !self.data[src][j].is_zero() {
                let delta = c.mul(&self.data[src][j])?;
                self.data[dst][j] = self.data[dst][j].add(&delta)?;
            }
        }
        Ok(())
    }

    /// `col[dst] += c * col[src]`
    fn col_axpy(&mut self, dst: usize, src: usize, c: &T) -> Checked<()> {
        for row in &mut self.data {
            if !row[src].is_zero() {
                let delta = c.mul(&row[src])?;
                row[dst] = row[dst].add(&delta)?;
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Checked<()> {
        for v in &mut self.data[i] {
            *v = v.neg()?;
        }
        Ok(())
    }

    fn negate_col(&mut self, j: usize) -> Checked<()> {
        for row in &mut self.data {
            row[j] = row[j].neg()?;
        }
        Ok(())
    }
}

pub(crate) struct SnfParts<T> {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub diag: Vec<T>,
    pub u: Option<Dense<T>>,
    pub v: Option<Dense<T>>,
    pub u_inv: Option<Dense<T>>,
    pub v_inv: Option<Dense<T>>,
}

struct Reducer<T> {
    a: Dense<T>,
    u: Option<Dense<T>>,
    v: Option<Dense<T>>,
    u_inv: Option<Dense<T>>,
    v_inv: Option<Dense<T>>,
}

impl<T: Coeff> Reducer<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.data.swap(i, j);
        if let Some(u) = &mut self.u {
            u.data.swap(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.data.swap(i, j);
        }
    }

    fn row_axpy(&mut self, dst: usize, src: usize, c: &T) -> Checked<()> {
        self.a.row_axpy(dst, src, c)?;
        if let Some(u) = &mut self.u {
            u.row_axpy(dst, src, c)?;
        }
        if let Some(ui) = &mut self.u_inv {
            ui.col_axpy(src, dst, &c.neg()?)?;
        }
        Ok(())
    }

    fn col_axpy(&mut self, dst: usize, src: usize, c: &T) -> Checked<()> {
        self.a.col_axpy(dst, src, c)?;
        if let Some(v) = &mut self.v {
            v.col_axpy(dst, src, c)?;
        }
        if let Some(vi) = &mut self.v_inv {
            vi.row_axpy(src, dst, &c.neg()?)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Checked<()> {
        self.a.negate_row(i)?;
        if let Some(u) = &mut self.u {
            u.negate_row(i)?;
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(i)?;
        }
        Ok(())
    }

    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = &self.a.data[i][j];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.cmp_abs(&self.a.data[bi][bj]).is_lt(),
                };
                if better {
                    best = Some((i, j));
                    if x.is_unit() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(mut self) -> Checked<SnfParts<T>> {
        let (m, n) = (self.a.rows, self.a.cols);
        let mut diag = Vec::new();
        for t in 0..m.min(n) {
            loop {
                let Some((pi, pj)) = self.pivot(t) else {
                    return Ok(self.finish(diag));
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.a.data[t][t].clone();
                let mut dirty = false;
                for i in t + 1..m {
                    if self.a.data[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a.data[i][t].quot(&p)?;
                    if !q.is_zero() {
                        self.row_axpy(i, t, &q.neg()?)?;
                    }
                    dirty |= !self.a.data[i][t].is_zero();
                }
                for j in t + 1..n {
                    if self.a.data[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a.data[t][j].quot(&p)?;
                    if !q.is_zero() {
                        self.col_axpy(j, t, &q.neg()?)?;
                    }
                    dirty |= !self.a.data[t][j].is_zero();
                }
                if dirty {
                    continue;
                }
                // row and column t are clear; enforce p | every remaining entry
                let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !p.divides(&self.a.data[i][j])));
                match offender {
                    Some(i) => self.row_axpy(t, i, &T::one())?,
                    None => break,
                }
            }
            if self.a.data[t][t].is_negative() {
                self.negate_row(t)?;
            }
            diag.push(self.a.data[t][t].clone());
        }
        Ok(self.finish(diag))
    }

    fn finish(self, diag: Vec<T>) -> SnfParts<T> {
        SnfParts { diag, u: self.u, v: self.v, u_inv: self.u_inv, v_inv: self.v_inv }
    }
}

pub(crate) fn dense_snf<T: Coeff>(a: Dense<T>, track: Track) -> Checked<SnfParts<T>> {
    let (m, n) = (a.rows, a.cols);
    let reducer = Reducer {
        u: track.u.then(|| Dense::identity(m)),
        v: track.v.then(|| Dense::identity(n)),
        u_inv: track.u_inv.then(|| Dense::identity(m)),
        v_inv: track.v_inv.then(|| Dense::identity(n)),
        a,
    };
    reducer.run()
}

/// Smith normal form of an `IntMatrix` with the requested transforms, as `BigInt` matrices.
pub(crate) struct SnfBig {
    pub diag: Vec<BigInt>,
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

pub(crate) fn snf_tracked(a: &IntMatrix, track: Track) -> SnfBig {
    fn run<T: Coeff>(a: &IntMatrix, track: Track) -> Checked<SnfBig> {
        let parts = dense_snf(Dense::<T>::from_int(a)?, track)?;
        Ok(SnfBig {
            diag: parts.diag.iter().map(Coeff::to_big).collect(),
            u: parts.u.as_ref().map(Dense::to_int),
            v: parts.v.as_ref().map(Dense::to_int),
            u_inv: parts.u_inv.as_ref().map(Dense::to_int),
            v_inv: parts.v_inv.as_ref().map(Dense::to_int),
        })
    }
    with_fallback(|| run::<i64>(a, track), || run::<BigInt>(a, track))
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ... | d_r`, all positive, followed by zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    /// The nonzero diagonal entries; `diagonal.len()` is the rank.
    pub diagonal: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| **d > BigInt::from(1)).cloned().collect()
    }
}

/// Smith normal form with both transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let snf = snf_tracked(a, Track::UV);
    let form = SmithForm {
        d: IntMatrix::from_diagonal(a.nrows(), a.ncols(), &snf.diag),
        u: snf.u.expect("tracked"),
        v: snf.v.expect("tracked"),
        diagonal: snf.diag,
    };
    if cfg!(debug_assertions) {
        let uav = form.u.mul(a).and_then(|ua| ua.mul(&form.v)).expect("shapes agree");
        assert_eq!(uav, form.d, "U*A*V != D");
        assert!(form.diagonal.windows(2).all(|w| Zero::is_zero(&(&w[1] % &w[0]))), "divisibility chain broken");
        assert!(form.diagonal.iter().all(Signed::is_positive));
    }
    form
}

/// Reusable solver for `A x = b` over the integers.
#[derive(Clone, Debug)]
pub struct IntegerSolver {
    rows: usize,
    cols: usize,
    u: IntMatrix,
    v: IntMatrix,
    diag: Vec<BigInt>,
}

impl IntegerSolver {
    pub fn new(a: &IntMatrix) -> Self {
        let snf = snf_tracked(a, Track::UV);
        IntegerSolver {
            rows: a.nrows(),
            cols: a.ncols(),
            u: snf.u.expect("tracked"),
            v: snf.v.expect("tracked"),
            diag: snf.diag,
        }
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// An integer solution, or `None` when `b` is not in the integer image.
    pub fn solve(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let y = self.u.mul_vec(b)?;
        let mut z = vec![<BigInt as Zero>::zero(); self.cols];
        for (i, yi) in y.iter().enumerate() {
            match self.diag.get(i) {
                Some(d) => {
                    if !Zero::is_zero(&(yi % d)) {
                        return Ok(None);
                    }
                    z[i] = yi / d;
                }
                None if !Zero::is_zero(yi) => return Ok(None),
                None => {}
            }
        }
        Ok(Some(self.v.mul_vec(&z)?))
    }
}

/// Solves `A x = b` over the integers; `None` certifies that no solution exists.
pub fn in_integer_image(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    IntegerSolver::new(a).solve(b)
}
