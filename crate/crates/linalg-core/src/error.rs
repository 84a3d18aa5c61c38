use thiserror::Error;

/// Failures raised by the linear algebra kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("expected {expected} entries for a {dim}x{dim} matrix, got {got}")]
    BadLength { dim: usize, expected: usize, got: usize },

    #[error("matrix dimension must be positive")]
    EmptyMatrix,

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension {dim} is not supported here (expected {expected})")]
    UnsupportedDimension { dim: usize, expected: &'static str },

    #[error("cannot trace out qubit {index}: state has {qubits} qubits")]
    BadSubsystem { index: usize, qubits: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e} > {tolerance:.1e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("eigenvalue {value:.3e} is below the clamping floor {floor:.1e}")]
    NegativeEigenvalue { value: f64, floor: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("polynomial root finder did not converge: {iterations} iterations, residual {residual:.3e}")]
    RootFinding { iterations: usize, residual: f64 },

    #[error("state vector is not normalised (norm^2 = {norm_sqr})")]
    NotNormalised { norm_sqr: f64 },
}

/// One broken density-matrix invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Dimension { dim: usize },
    Hermiticity { max_deviation: f64 },
    Trace { trace_re: f64, trace_im: f64 },
    Positivity { min_eigenvalue: f64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Dimension { dim } => write!(f, "dimension {dim} is not 4 or 8"),
            Violation::Hermiticity { max_deviation } => {
                write!(f, "not Hermitian (max |m_ij - conj m_ji| = {max_deviation:.3e})")
            }
            Violation::Trace { trace_re, trace_im } => {
                write!(f, "trace is {trace_re}{trace_im:+}i, not 1")
            }
            Violation::Positivity { min_eigenvalue } => {
                write!(f, "not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")
            }
        }
    }
}

/// Every invariant a candidate density matrix failed.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid density matrix: {}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}
