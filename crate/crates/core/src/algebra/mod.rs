//! Complex matrices, eigenvalues and gamma-matrix representations.

mod eigen;
mod gamma;
mod matrix;

pub use eigen::{eigenvalues, sort_eigenvalues, spectral_distance, MAX_EIGEN_DIM};
pub use gamma::{build_gamma_rep, mat_exp_gamma5, GammaRep, Spacetime};
pub use matrix::{mat_mul, ComplexMatrix};
