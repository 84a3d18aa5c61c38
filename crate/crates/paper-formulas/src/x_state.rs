//! Literal X-state expressions over the seven X entries.

use linalg_core::{Complex64, ComplexMatrix};

/// Entries of an X-shaped two-qubit matrix: diagonal `alpha..delta`,
/// anti-diagonal `eta = rho[0][3]`, `xi = rho[1][2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XEntries {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub xi: Complex64,
    pub eta: Complex64,
}

impl XEntries {
    /// Reads the X entries of a 4x4 matrix, ignoring everything else.
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        assert_eq!(m.dim(), 4, "X entries need a 4x4 matrix");
        XEntries {
            alpha: m[(0, 0)].re,
            beta: m[(1, 1)].re,
            gamma: m[(2, 2)].re,
            delta: m[(3, 3)].re,
            xi: m[(1, 2)],
            eta: m[(0, 3)],
        }
    }

    fn z(&self) -> f64 {
        self.alpha - self.beta - self.gamma + self.delta
    }
}

pub fn x_concurrence(e: &XEntries) -> f64 {
    let a = e.xi.norm() - (e.alpha * e.delta).sqrt();
    let b = e.eta.norm() - (e.beta * e.gamma).sqrt();
    2.0 * 0f64.max(a).max(b)
}

pub fn x_fidelity(e: &XEntries) -> f64 {
    let plus = (e.eta * 2.0 + e.xi * 2.0).norm();
    let minus = (-e.eta * 2.0 + e.xi * 2.0).norm();
    0.5 + plus / 6.0 + minus / 6.0 + e.z().abs() / 6.0
}

pub fn x_mixedness(e: &XEntries) -> f64 {
    let diag = e.alpha.powi(2) + e.beta.powi(2) + e.gamma.powi(2) + e.delta.powi(2);
    4.0 / 3.0 - 4.0 / 3.0 * diag - 8.0 / 3.0 * (e.eta.norm_sqr() + e.xi.norm_sqr())
}

/// The printed eigenvalue triple of `T^T T`, in printed order.
pub fn x_ttdagger_eigs(e: &XEntries) -> [f64; 3] {
    let z2 = e.z().powi(2);
    [
        8.0 * (e.xi.norm_sqr() + e.eta.norm_sqr()),
        (-e.eta * 2.0 + e.xi * 2.0).norm_sqr() + z2,
        (e.eta * 2.0 + e.xi * 2.0).norm_sqr() + z2,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(alpha: f64, beta: f64, gamma: f64, delta: f64, xi: f64, eta: f64) -> XEntries {
        XEntries { alpha, beta, gamma, delta, xi: xi.into(), eta: eta.into() }
    }

    #[test]
    fn bell_phi_plus() {
        let e = real(0.5, 0.0, 0.0, 0.5, 0.0, 0.5);
        assert_eq!(x_concurrence(&e), 1.0);
        assert!((x_fidelity(&e) - 1.0).abs() < 1e-15);
        assert!(x_mixedness(&e).abs() < 1e-15);
        // true u would be (1, 1, 1); the printed first entry is 2
        assert_eq!(x_ttdagger_eigs(&e), [2.0, 2.0, 2.0]);
    }

    #[test]
    fn w_reduced_state() {
        let e = real(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0, 1.0 / 3.0, 0.0);
        assert!((x_concurrence(&e) - 2.0 / 3.0).abs() < 1e-15);
        assert!((x_fidelity(&e) - 7.0 / 9.0).abs() < 1e-15);
        assert!((x_mixedness(&e) - 16.0 / 27.0).abs() < 1e-15);
    }

    #[test]
    fn maximally_mixed() {
        let e = real(0.25, 0.25, 0.25, 0.25, 0.0, 0.0);
        assert_eq!(x_concurrence(&e), 0.0);
        assert_eq!(x_fidelity(&e), 0.5);
        assert!((x_mixedness(&e) - 1.0).abs() < 1e-15);
    }
}
