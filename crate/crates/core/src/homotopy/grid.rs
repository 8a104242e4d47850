use crate::cubical::{Cube, CubicalChain};
use crate::error::{Error, Result};
use crate::poset::{ElementId, Poset};

use super::Loop;

pub const MAX_GRID_DIM: usize = 3;

/// A map `I_{p_1} x ... x I_{p_n} -> P` on a box of fences, stored with the
/// first coordinate varying fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridMap {
    dims: Vec<usize>,
    values: Vec<ElementId>,
}

impl GridMap {
    /// Checks the shape and that the map is monotone for the product order of
    /// the fences.
    pub fn new(poset: &Poset, dims: Vec<usize>, values: Vec<ElementId>) -> Result<GridMap> {
        let size: usize = dims.iter().map(|p| p + 1).product();
        if values.len() != size {
            return Err(Error::DimensionMismatch(format!("{} values for a grid of {size} points", values.len())));
        }
        let g = GridMap { dims, values };
        if let Some(bad) = g.first_violation(poset) {
            return Err(Error::NonMonotoneInput(bad));
        }
        Ok(g)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn values(&self) -> &[ElementId] {
        &self.values
    }

    fn offset(&self, x: &[usize]) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for (xi, p) in x.iter().zip(&self.dims) {
            idx += xi * stride;
            stride *= p + 1;
        }
        idx
    }

    pub fn get(&self, x: &[usize]) -> ElementId {
        self.values[self.offset(x)]
    }

    fn points(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let dims = self.dims.clone();
        (0..self.values.len()).map(move |mut i| {
            dims.iter()
                .map(|p| {
                    let xi = i % (p + 1);
                    i /= p + 1;
                    xi
                })
                .collect()
        })
    }

    /// A point `x` with an even coordinate `x_i` whose value is not below a
    /// neighbour along axis `i`.
    fn first_violation(&self, poset: &Poset) -> Option<Vec<usize>> {
        for x in self.points() {
            for i in 0..self.dims.len() {
                if x[i] % 2 != 0 {
                    continue;
                }
                let here = self.get(&x);
                for step in [-1i64, 1] {
                    let yi = x[i] as i64 + step;
                    if yi < 0 || yi > self.dims[i] as i64 {
                        continue;
                    }
                    let mut y = x.clone();
                    y[i] = yi as usize;
                    if !poset.leq(here, self.get(&y)) {
                        return Some(x);
                    }
                }
            }
        }
        None
    }
}

/// `T_r f`: the loop shifted by `2r` and restricted to `I_{4r}`.
pub fn translate(f: &Loop) -> GridMap {
    let r = f.radius() as i64;
    let values = (0..=4 * r).map(|x| f.value(x - 2 * r)).collect();
    GridMap { dims: vec![4 * r as usize], values }
}

/// `φ(g)`: the sum of the unit cells of the grid. A cell whose base point has
/// odd coordinates is order-reversing along those axes, so it is reflected
/// there (its least corner moved to `0...0`) and counted with sign
/// `(-1)^(number of odd coordinates)`. Degenerate cells vanish.
pub fn phi(poset: &Poset, g: &GridMap) -> Result<CubicalChain> {
    let n = g.dims.len();
    if n > MAX_GRID_DIM {
        return Err(Error::DimensionTooLarge { dim: n, max: MAX_GRID_DIM });
    }
    if let Some(bad) = g.first_violation(poset) {
        return Err(Error::NonMonotoneInput(bad));
    }
    let mut out = CubicalChain::zero(n);
    if g.dims.contains(&0) {
        return Ok(out);
    }
    let count: usize = g.dims.iter().product();
    let mut x = vec![0usize; n];
    for mut i in 0..count {
        // cell base points range over I_{p_1 - 1} x ... x I_{p_n - 1}
        for (xi, p) in x.iter_mut().zip(&g.dims) {
            *xi = i % p;
            i /= p;
        }
        let odd = x.iter().filter(|&&xi| xi % 2 == 1).count();
        let corners = (0..1usize << n)
            .map(|s| {
                let y: Vec<usize> =
                    (0..n).map(|j| x[j] + if x[j] % 2 == 1 { 1 - (s >> j & 1) } else { s >> j & 1 }).collect();
                g.get(&y)
            })
            .collect();
        out.add_term(Cube::new(corners), if odd % 2 == 0 { 1 } else { -1 });
    }
    Ok(out)
}
