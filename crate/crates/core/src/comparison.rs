//! The comparison chain map ψ from cubical chains of a poset to simplicial
//! chains of its order complex, and the map it induces on homology.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::cubical::{Cube, CubeBasis, CubicalComplex};
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, HomologyBasis, HomologyGroup, IntMatrix, IntegerSolver};
use crate::poset::Poset;
use crate::simplicial::SimplicialComplex;

pub use crate::simplicial::SimplicialChain;

pub const MAX_PSI_DIM: usize = 6;

/// A monotone path `0...0 = p(0) < p(1) < ... < p(n) = 1...1` through `Q_n`
/// that sets bit `τ(i) - 1` at step `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermPath {
    /// 1-based permutation of `1..=n`
    pub tau: Vec<usize>,
    pub vertices: Vec<usize>,
    pub sign: i64,
}

/// All `n!` paths, permutations in lexicographic order.
pub fn perm_paths(n: usize) -> Result<Vec<PermPath>> {
    if n > MAX_PSI_DIM {
        return Err(Error::DimensionTooLarge { dim: n, max: MAX_PSI_DIM });
    }
    let mut tau: Vec<usize> = (1..=n).collect();
    let mut sign = 1;
    let mut out = Vec::new();
    loop {
        let mut vertices = vec![0usize];
        for &t in &tau {
            vertices.push(vertices.last().unwrap() | 1 << (t - 1));
        }
        out.push(PermPath { tau: tau.clone(), vertices, sign });
        // next permutation; the swap is one transposition and reversing a
        // suffix of length m is m/2 more
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| tau[k] < tau[k + 1]) else { break };
        let l = (k + 1..n).rev().find(|&l| tau[k] < tau[l]).expect("successor exists");
        tau.swap(k, l);
        tau[k + 1..].reverse();
        let m = n - k - 1;
        if (1 + m / 2) % 2 == 1 {
            sign = -sign;
        }
    }
    Ok(out)
}

/// `ψ(σ) = Σ_τ sign(τ) [σ(p_τ(0)), ..., σ(p_τ(n))]`, dropping paths that
/// repeat a vertex. Each surviving path is a strictly increasing chain.
pub fn psi(cube: &Cube) -> Result<SimplicialChain> {
    psi_with(cube, &perm_paths(cube.dim())?)
}

fn psi_with(cube: &Cube, paths: &[PermPath]) -> Result<SimplicialChain> {
    let mut out = SimplicialChain::new();
    for path in paths {
        let v: Vec<usize> = path.vertices.iter().map(|&s| cube.corner(s).index()).collect();
        out.add_term(&v, path.sign);
    }
    Ok(out)
}

/// `Ψ_n`: columns indexed by the n-cube basis, rows by the n-simplices of
/// the order complex.
pub fn psi_matrix(cubes: &CubeBasis, complex: &SimplicialComplex) -> Result<IntMatrix> {
    let n = cubes.dim();
    let paths = perm_paths(n)?;
    let columns = cubes
        .cubes()
        .iter()
        .map(|c| {
            let chain = psi_with(c, &paths)?;
            chain
                .terms()
                .map(|(s, k)| {
                    let row = complex.index_of(&s).filter(|_| s.dim() == n).ok_or_else(|| {
                        Error::InternalInvariantViolation(format!("ψ produced {:?}, not an {n}-simplex", s.0))
                    })?;
                    Ok((row, BigInt::from(k)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_columns(complex.num_simplices(n), columns))
}

/// `ψ_*` on `H_p`, written in the class coordinates of both sides.
#[derive(Clone, Debug, Serialize)]
pub struct InducedMap {
    pub degree: usize,
    pub cube: HomologyGroup,
    pub simpl: HomologyGroup,
    /// column `j`: coordinates of the image of the `j`-th cubical generator
    /// (free parts first, then torsion residues)
    #[serde(skip)]
    pub matrix: IntMatrix,
    pub injective: bool,
    pub surjective: bool,
    /// every (m-1)-simplex of the order complex lies in exactly two top
    /// simplices; informational only
    pub pseudomanifold: bool,
}

impl InducedMap {
    pub fn is_iso(&self) -> bool {
        self.injective && self.surjective
    }

    pub fn status(&self) -> &'static str {
        match (self.injective, self.surjective) {
            (true, true) => "iso",
            (false, true) => "surjective",
            (true, false) => "injective",
            (false, false) => "other",
        }
    }
}

/// Class coordinates as one integer vector: free part then torsion residues.
fn flat(c: crate::linalg::ClassCoordinates) -> Vec<BigInt> {
    c.free.into_iter().chain(c.torsion.into_iter().map(|(r, _)| r)).collect()
}

/// Orders of the coordinates of a group: 0 for free, `t` for `Z/t`.
fn orders(g: &HomologyGroup) -> Vec<BigInt> {
    std::iter::repeat_n(BigInt::zero(), g.betti).chain(g.torsion.iter().cloned()).collect()
}

/// Both sides and the comparison data for one degree.
pub struct Comparison {
    pub cubes: CubicalComplex,
    pub complex: SimplicialComplex,
}

impl Comparison {
    /// Builds cube bases up to `top` and the order complex.
    pub fn new(poset: &Poset, top: usize, cap: usize) -> Result<Comparison> {
        Ok(Comparison {
            cubes: CubicalComplex::build(poset, top, cap)?,
            complex: SimplicialComplex::order_complex(poset)?,
        })
    }

    pub fn psi_matrix(&self, n: usize) -> Result<IntMatrix> {
        psi_matrix(self.cubes.basis(n), &self.complex)
    }

    pub fn simplicial_boundary(&self, n: usize) -> IntMatrix {
        self.complex.boundary_matrix(n)
    }

    /// `∂^Simpl Ψ_n - Ψ_(n-1) ∂^Cube`, which must vanish.
    pub fn chain_map_defect(&self, n: usize) -> Result<IntMatrix> {
        let lhs = self.simplicial_boundary(n).mul(&self.psi_matrix(n)?)?;
        let rhs = self.psi_matrix(n - 1)?.mul(&self.cubes.boundary_matrix(n)?)?;
        lhs.sub(&rhs)
    }

    pub fn simplicial_homology_basis(&self, p: usize) -> Result<HomologyBasis> {
        HomologyBasis::new(&self.simplicial_boundary(p), &self.simplicial_boundary(p + 1))
    }

    /// `ψ_*: H_p^Cube -> H_p^Simpl`. Needs cube bases up to `p + 1`.
    pub fn induced_map(&self, p: usize) -> Result<InducedMap> {
        let hc = self.cubes.homology_basis(p)?;
        let hs = self.simplicial_homology_basis(p)?;
        let psi = self.psi_matrix(p)?;

        let columns = hc
            .generators()
            .iter()
            .map(|g| {
                let coords = flat(hs.class_of(&psi.mul_vec(g)?)?);
                Ok(coords.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        let s_orders = orders(&hs.group);
        let matrix = IntMatrix::from_columns(s_orders.len(), columns);

        // surjective: ψ(Z^Cube) + B^Simpl contains every simplicial cycle
        let span = psi.mul(hc.cycle_basis())?.hstack(&self.simplicial_boundary(p + 1))?;
        let solver = IntegerSolver::new(&span);
        let cycles = hs.cycle_basis();
        let mut surjective = true;
        for j in 0..cycles.ncols() {
            if solver.solve(&cycles.column_dense(j))?.is_none() {
                surjective = false;
                break;
            }
        }

        let injective = kernel_is_trivial(&matrix, &orders(&hc.group), &s_orders)?;
        let pseudomanifold = self.complex.is_pseudomanifold();
        Ok(InducedMap {
            degree: p,
            cube: hc.group.clone(),
            simpl: hs.group.clone(),
            matrix,
            injective,
            surjective,
            pseudomanifold,
        })
    }
}

/// Whether `M: ⊕Z/c_j -> ⊕Z/s_i` (order 0 meaning `Z`) has trivial kernel:
/// every `a` with `M a` in the relation lattice of the target must lie in the
/// relation lattice of the source.
fn kernel_is_trivial(m: &IntMatrix, src: &[BigInt], dst: &[BigInt]) -> Result<bool> {
    let k = src.len();
    if k == 0 {
        return Ok(true);
    }
    // kernel of [M | -R_dst]
    let rel: Vec<Vec<(usize, BigInt)>> =
        dst.iter().enumerate().filter(|(_, t)| !t.is_zero()).map(|(i, t)| vec![(i, -t.clone())]).collect();
    let stacked = m.hstack(&IntMatrix::from_columns(dst.len(), rel))?;
    let snf = smith_normal_form(&stacked);
    let r = snf.rank();
    for j in r..stacked.ncols() {
        let a = snf.v.column_dense(j);
        for (ai, order) in a.iter().take(k).zip(src) {
            let in_relations = if order.is_zero() { ai.is_zero() } else { ai.is_multiple_of(order) };
            if !in_relations {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `ψ_*` in degree `p`.
pub fn induced_map(poset: &Poset, p: usize, cap: usize) -> Result<InducedMap> {
    Comparison::new(poset, p + 1, cap)?.induced_map(p)
}

impl SimplicialChain {
    /// Image under ψ of a cubical chain.
    pub fn psi_of(chain: &crate::cubical::CubicalChain) -> Result<SimplicialChain> {
        let paths = perm_paths(chain.dim())?;
        let mut out = SimplicialChain::new();
        for (cube, k) in chain.terms() {
            for (s, j) in psi_with(cube, &paths)?.terms() {
                out.add_term(s.vertices(), k * j);
            }
        }
        Ok(out)
    }
}
