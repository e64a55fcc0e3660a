//! Dense complex linear algebra: Hermitian eigensolver, SVD, polar
//! decomposition and positive-semidefinite functional calculus.

mod eigen;
mod functions;
mod matrix;
mod svd;

pub use eigen::{hermitian_eig, hermitian_eigenvalues, max_eigenvalue, min_eigenvalue, HermitianEigen, HERMITIAN_TOL};
pub(crate) use eigen::eigenvalues_of_hermitian;
pub use functions::{inf_lambda_distance, psd_function_apply, psd_sqrt_pinv, schatten_norm, PSD_TOL};
pub(crate) use functions::{check_schatten_p, schatten_of_values};
pub use matrix::{inner, norm, normalized, ComplexMatrix};
pub use svd::{polar_decompose, svd, Moduli, PolarDecomposition, SingularValueDecomposition, DEFAULT_RANK_TOL};
