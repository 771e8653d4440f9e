//! Exact scalars, dense matrices and canonical subspaces.

mod field;
mod matrix;
mod subspace;

pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use subspace::{quotient_basis, Subspace};

/// Solves `a x = b`; see [`Matrix::solve`].
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, crate::Error> {
    a.solve(b)
}

pub fn kernel(a: &Matrix) -> Subspace {
    a.kernel()
}

pub fn image(a: &Matrix) -> Subspace {
    a.image()
}
