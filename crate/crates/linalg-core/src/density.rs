//! Validated density matrices, partial traces and PSD square roots.

use num_complex::Complex64;

use crate::error::{LinalgError, ValidationError, Violation};
use crate::jacobi::{hermitian_eigen, hermitian_eigen_tol};
use crate::matrix::ComplexMatrix;

/// Default tolerance for the Hermitian, trace and positivity checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Eigenvalues in `[-CLAMP_FLOOR, 0)` are float noise and get clamped to zero.
pub const CLAMP_FLOOR: f64 = 1e-9;

/// A 4x4 or 8x8 matrix that passed [`validate_density`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    tolerance: f64,
}

impl DensityMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// `Tr(rho^2)`
    pub fn purity(&self) -> f64 {
        // Tr(rho rho) = sum_ij |rho_ij|^2 for Hermitian rho
        self.mat.entries().iter().map(|z| z.norm_sqr()).sum()
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.mat
    }
}

/// Check Hermiticity, unit trace and positivity, reporting every failure.
pub fn validate_density(m: ComplexMatrix, tol: f64) -> Result<DensityMatrix, ValidationError> {
    let mut violations = Vec::new();
    let dim = m.dim();
    if dim != 4 && dim != 8 {
        violations.push(Violation::Dimension { dim });
    }
    let max_deviation = m.hermiticity_deviation();
    if max_deviation > tol {
        violations.push(Violation::Hermiticity { max_deviation });
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
        violations.push(Violation::Trace { trace_re: tr.re, trace_im: tr.im });
    }
    // positivity is judged on the Hermitian part so it is reported even
    // when Hermiticity also failed
    match hermitian_eigen_tol(&m.hermitian_part(), f64::INFINITY) {
        Ok(e) => {
            let min = *e.values.last().expect("nonempty spectrum");
            if min < -tol {
                violations.push(Violation::Positivity { min_eigenvalue: min });
            }
        }
        Err(_) => violations.push(Violation::Positivity { min_eigenvalue: f64::NAN }),
    }
    if violations.is_empty() {
        Ok(DensityMatrix { mat: m, tolerance: tol })
    } else {
        Err(ValidationError { violations })
    }
}

/// Insert bit `b` for qubit `q` into the `n-1`-qubit index `r`.
fn insert_bit(r: usize, q: usize, b: usize, n: usize) -> usize {
    let low_bits = n - 1 - q;
    let high = r >> low_bits;
    let low = r & ((1 << low_bits) - 1);
    (high << (low_bits + 1)) | (b << low_bits) | low
}

/// Trace out one qubit of a `2^n`-dimensional operator (big-endian order).
pub fn partial_trace_matrix(m: &ComplexMatrix, traced_qubit: usize) -> Result<ComplexMatrix, LinalgError> {
    let n = m
        .qubits()
        .filter(|&n| n >= 2)
        .ok_or(LinalgError::UnsupportedDimension { dim: m.dim(), expected: "a power of two >= 4" })?;
    if traced_qubit >= n {
        return Err(LinalgError::BadSubsystem { index: traced_qubit, qubits: n });
    }
    let d = m.dim() / 2;
    let mut out = ComplexMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            out[(i, j)] =
                (0..2).map(|b| m[(insert_bit(i, traced_qubit, b, n), insert_bit(j, traced_qubit, b, n))]).sum();
        }
    }
    Ok(out)
}

/// Reduce a three-qubit density matrix to the remaining pair.
pub fn partial_trace(rho: &DensityMatrix, traced_qubit: usize) -> Result<DensityMatrix, LinalgError> {
    if rho.dim() != 8 {
        return Err(LinalgError::UnsupportedDimension { dim: rho.dim(), expected: "8" });
    }
    let reduced = partial_trace_matrix(&rho.mat, traced_qubit)?;
    // a partial trace of a valid state is valid; keep the caller's tolerance
    Ok(DensityMatrix { mat: reduced, tolerance: rho.tolerance })
}

/// Clamp an eigenvalue per [`CLAMP_FLOOR`]; anything more negative is an error.
pub fn clamp_eigenvalue(x: f64) -> Result<f64, LinalgError> {
    if x >= 0.0 {
        Ok(x)
    } else if x >= -CLAMP_FLOOR {
        Ok(0.0)
    } else {
        Err(LinalgError::NegativeEigenvalue { value: x, floor: CLAMP_FLOOR })
    }
}

/// Eigenvalues below this many ulps of the spectral radius are below the
/// eigensolver's accuracy and are treated as exact zeros by [`psd_sqrt`].
pub const SQRT_NOISE_ULPS: f64 = 64.0;

/// Hermitian PSD square root `V diag(sqrt(lambda)) V^dagger`.
///
/// Rounding noise in a zero eigenvalue would otherwise come back as its
/// square root, around 1e-8.
pub fn psd_sqrt(a: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let e = hermitian_eigen(a)?;
    let n = a.dim();
    let radius = e.values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let floor = SQRT_NOISE_ULPS * f64::EPSILON * radius;
    let roots: Vec<f64> = e
        .values
        .iter()
        .map(|&x| clamp_eigenvalue(x).map(|x| if x <= floor { 0.0 } else { x.sqrt() }))
        .collect::<Result<_, _>>()?;
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &r) in roots.iter().enumerate() {
                if r != 0.0 {
                    acc += e.vectors[(i, k)] * e.vectors[(j, k)].conj() * r;
                }
            }
            if i == j {
                out[(i, i)] = Complex64::new(acc.re, 0.0);
            } else {
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
        }
    }
    Ok(out)
}
