//! Exact integer linear algebra: sparse matrices, Smith normal form, integer
//! solving and homology of chain complexes given by boundary matrices.

mod coeff;
mod homology;
mod matrix;
mod snf;
mod sparse;

pub use homology::{homology_from_boundaries, ClassCoordinates, HomologyBasis, HomologyGroup};
pub use matrix::IntMatrix;
pub use snf::{in_integer_image, smith_normal_form, IntegerSolver, SmithForm};
pub use sparse::invariant_factors;
