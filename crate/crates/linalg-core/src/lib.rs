//! Dense complex linear algebra for two- and three-qubit density matrices.
//!
//! Everything here is a pure function on small matrices (dimension <= 8):
//! products, tensor products, adjoints, partial traces, Hermitian Jacobi
//! eigensolver and SVD, an exact characteristic-polynomial eigenvalue route
//! for non-normal 4x4 matrices, PSD square roots and density validation.

pub mod charpoly;
pub mod density;
pub mod error;
pub mod jacobi;
pub mod matrix;

pub use charpoly::{general_eigenvalues_4x4, product_eigenvalues_4x4};
pub use density::{
    clamp_eigenvalue, partial_trace, partial_trace_matrix, psd_sqrt, validate_density, DensityMatrix, CLAMP_FLOOR,
    DEFAULT_TOLERANCE, SQRT_NOISE_ULPS,
};
pub use error::{LinalgError, ValidationError, Violation};
pub use jacobi::{hermitian_eigen, hermitian_eigenvalues, singular_values, HermitianEigen};
pub use matrix::{dagger, kron, pauli, ComplexMatrix, PureState};
pub use num_complex::Complex64;
