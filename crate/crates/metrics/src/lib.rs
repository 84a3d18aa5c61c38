//! Definition-level metrics of a two-qubit density matrix.
//!
//! * concurrence `C = max(0, s1 - s2 - s3 - s4)` with `s_i` the square roots
//!   of the eigenvalues of `rho * rho~`, `rho~ = (Y (x) Y) rho* (Y (x) Y)`
//! * correlation matrix `t_nm = Tr(rho sigma_n (x) sigma_m)`, `u_i` the
//!   eigenvalues of `T^T T`
//! * `N = sum sqrt(u_i)`, fidelity `f = (1 + N/3) / 2`
//! * linear entropy `L = 4/3 (1 - Tr rho^2)`
//! * CHSH `M = u_1 + u_2` (two largest)
//! * smallest eigenvalue of the partial transpose, as a PPT witness

mod concurrence;
mod correlation;
mod metric;
mod report;

pub use concurrence::{concurrence, concurrence_charpoly, spin_flip, spin_flip_eigenvalues, wootters_roots};
pub use correlation::{correlation_matrix, CorrelationMatrix};
pub use metric::{Metric, UnknownMetric};
pub use report::{Metrics, MetricsReport, StateLabel};

use linalg_core::{hermitian_eigenvalues, Complex64, ComplexMatrix, DensityMatrix, LinalgError};
use thiserror::Error;

/// Tolerance used for the X-shape flag in reports.
pub const X_STATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("two-qubit metric needs a 4x4 density matrix, got dimension {0}")]
    NotTwoQubit(usize),
    #[error("Tr(rho s{n}s{m}) has imaginary part {residue:e}")]
    ImaginaryCorrelation { n: usize, m: usize, residue: f64 },
    #[error("correlation t{n}{m} = {value} lies outside [-1, 1]")]
    CorrelationOutOfRange { n: usize, m: usize, value: f64 },
    #[error("eigenvalue {value} of rho*rho~ is not real and non-negative")]
    BadSpinFlipEigenvalue { value: Complex64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    State(#[from] states::StateError),
}

fn two_qubit(rho: &DensityMatrix) -> Result<&ComplexMatrix, MetricsError> {
    match rho.dim() {
        4 => Ok(rho.matrix()),
        d => Err(MetricsError::NotTwoQubit(d)),
    }
}

/// `(1 + N/3) / 2`
pub fn fidelity_from_n(n: f64) -> f64 {
    (1.0 + n / 3.0) / 2.0
}

pub fn n_value(rho: &DensityMatrix) -> Result<f64, MetricsError> {
    Ok(correlation_matrix(rho)?.n_value()?)
}

pub fn teleport_fidelity(rho: &DensityMatrix) -> Result<f64, MetricsError> {
    Ok(fidelity_from_n(n_value(rho)?))
}

pub fn linear_entropy(rho: &DensityMatrix) -> Result<f64, MetricsError> {
    two_qubit(rho)?;
    Ok(4.0 / 3.0 * (1.0 - rho.purity()))
}

pub fn bell_chsh_m(rho: &DensityMatrix) -> Result<f64, MetricsError> {
    Ok(correlation_matrix(rho)?.m_value()?)
}

/// Partial transpose over the second qubit:
/// `<a b| rho^TB |c d> = <a d| rho |c b>`.
pub fn partial_transpose(m: &ComplexMatrix) -> ComplexMatrix {
    let mut out = m.clone();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    out[(2 * a + b, 2 * c + d)] = m[(2 * a + d, 2 * c + b)];
                }
            }
        }
    }
    out
}

pub fn ppt_min_eigenvalue(rho: &DensityMatrix) -> Result<f64, MetricsError> {
    let pt = partial_transpose(two_qubit(rho)?);
    let ev = hermitian_eigenvalues(&pt.hermitian_part())?;
    Ok(ev[ev.len() - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use linalg_core::{validate_density, DEFAULT_TOLERANCE};
    use states::{BellKind, FamilySelector};

    pub(crate) fn density(m: ComplexMatrix) -> DensityMatrix {
        validate_density(m, DEFAULT_TOLERANCE).unwrap()
    }

    pub(crate) fn bell(kind: BellKind) -> DensityMatrix {
        density(kind.state().projector())
    }

    pub(crate) fn mixed() -> DensityMatrix {
        density(ComplexMatrix::identity(4).scale(0.25))
    }

    pub(crate) fn fam(sel: &str, x: f64) -> DensityMatrix {
        sel.parse::<FamilySelector>().unwrap().at(x).unwrap().materialize().unwrap()
    }

    #[test]
    fn rejects_three_qubit_input() {
        let rho = density(ComplexMatrix::identity(8).scale(0.125));
        assert_eq!(linear_entropy(&rho), Err(MetricsError::NotTwoQubit(8)));
    }

    #[test]
    fn fidelity_and_n_for_bell_and_mixed() {
        for b in BellKind::ALL {
            assert!((n_value(&bell(b)).unwrap() - 3.0).abs() < 1e-14);
            assert!((teleport_fidelity(&bell(b)).unwrap() - 1.0).abs() < 1e-14);
        }
        assert_eq!(n_value(&mixed()).unwrap(), 0.0);
        assert_eq!(teleport_fidelity(&mixed()).unwrap(), 0.5);
    }

    #[test]
    fn mems_w_fidelity_and_mixedness() {
        let w = fam("memsw", 0.0);
        assert!((teleport_fidelity(&w).unwrap() - 7.0 / 9.0).abs() < 1e-14);
        assert!((linear_entropy(&w).unwrap() - 16.0 / 27.0).abs() < 1e-14);
    }

    #[test]
    fn werner_fidelity_line() {
        for k in 0..=20 {
            let m = k as f64 / 20.0;
            let f = teleport_fidelity(&fam("werner", m)).unwrap();
            // below m = 1/4 the singlet weight is negative but T is still
            // isotropic with |t| = (4m-1)/3, so N = |4m-1| there
            let want = if m >= 0.25 { (1.0 + 2.0 * m) / 3.0 } else { (1.0 + (1.0 - 4.0 * m) / 3.0) / 2.0 };
            assert!((f - want).abs() < 1e-14, "m = {m}: {f} vs {want}");
        }
    }

    #[test]
    fn linear_entropy_endpoints() {
        for b in BellKind::ALL {
            assert!(linear_entropy(&bell(b)).unwrap().abs() < 1e-15);
        }
        assert!((linear_entropy(&mixed()).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn chsh_endpoints() {
        assert!((bell_chsh_m(&bell(BellKind::PhiPlus)).unwrap() - 2.0).abs() < 1e-14);
        assert_eq!(bell_chsh_m(&mixed()).unwrap(), 0.0);
    }

    #[test]
    fn chsh_rho1_phi_plus_polynomial() {
        // hand expansion: u = ((1 - 4p/3)^2, (1 - p/3)^2, (1 - 5p/3)^2)
        for k in 0..=100 {
            let p = k as f64 / 100.0;
            let u = [(1.0 - 4.0 * p / 3.0).powi(2), (1.0 - p / 3.0).powi(2), (1.0 - 5.0 * p / 3.0).powi(2)];
            let mut u = u.to_vec();
            u.sort_by(|a, b| b.total_cmp(a));
            let m = bell_chsh_m(&fam("rho1:phi+", p)).unwrap();
            assert!((m - (u[0] + u[1])).abs() < 1e-12, "p = {p}");
        }
    }

    #[test]
    fn partial_transpose_spectra() {
        let v = ppt_min_eigenvalue(&bell(BellKind::PsiMinus)).unwrap();
        assert!((v + 0.5).abs() < 1e-14);
        assert!((ppt_min_eigenvalue(&mixed()).unwrap() - 0.25).abs() < 1e-15);
        assert!((ppt_min_eigenvalue(&fam("werner", 0.25)).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn partial_transpose_is_involution() {
        let rho = fam("tau1:phi-", 0.3);
        let twice = partial_transpose(&partial_transpose(rho.matrix()));
        assert_eq!(&twice, rho.matrix());
    }
}
