use linalg_core::{kron, pauli, singular_values, Complex64, ComplexMatrix, DensityMatrix, LinalgError};
use serde::Serialize;

use crate::{two_qubit, MetricsError};

const IMAG_TOL: f64 = 1e-9;
const RANGE_TOL: f64 = 1e-9;

/// `t[n][m] = Tr(rho sigma_n (x) sigma_m)`, indices 0, 1, 2 for x, y, z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationMatrix {
    t: [[f64; 3]; 3],
}

impl CorrelationMatrix {
    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.t
    }

    pub fn get(&self, n: usize, m: usize) -> f64 {
        self.t[n][m]
    }

    /// `T^T T`
    pub fn gram(&self) -> [[f64; 3]; 3] {
        let mut g = [[0.0; 3]; 3];
        for (i, row) in g.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..3).map(|k| self.t[k][i] * self.t[k][j]).sum();
            }
        }
        g
    }

    /// Singular values of `T`, descending.
    pub fn singular_values(&self) -> Result<[f64; 3], LinalgError> {
        let data = self.t.iter().flatten().map(|&x| Complex64::new(x, 0.0)).collect();
        let sv = singular_values(&ComplexMatrix::new(3, data)?)?;
        Ok([sv[0], sv[1], sv[2]])
    }

    /// Eigenvalues `u_i` of `T^T T`, descending (squares of the singular values).
    pub fn tt_eigenvalues(&self) -> Result<[f64; 3], LinalgError> {
        Ok(self.singular_values()?.map(|s| s * s))
    }

    /// `N = sum sqrt(u_i)`
    pub fn n_value(&self) -> Result<f64, LinalgError> {
        Ok(self.singular_values()?.iter().sum())
    }

    /// `M = u_1 + u_2`
    pub fn m_value(&self) -> Result<f64, LinalgError> {
        let u = self.tt_eigenvalues()?;
        Ok(u[0] + u[1])
    }
}

pub fn correlation_matrix(rho: &DensityMatrix) -> Result<CorrelationMatrix, MetricsError> {
    let r = two_qubit(rho)?;
    let sigma = pauli::xyz();
    let mut t = [[0.0; 3]; 3];
    for (n, sn) in sigma.iter().enumerate() {
        for (m, sm) in sigma.iter().enumerate() {
            let p = kron(sn, sm);
            let tr: Complex64 =
                (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| r[(i, j)] * p[(j, i)]).sum();
            if tr.im.abs() > IMAG_TOL {
                return Err(MetricsError::ImaginaryCorrelation { n: n + 1, m: m + 1, residue: tr.im });
            }
            if tr.re.abs() > 1.0 + RANGE_TOL {
                return Err(MetricsError::CorrelationOutOfRange { n: n + 1, m: m + 1, value: tr.re });
            }
            t[n][m] = tr.re;
        }
    }
    Ok(CorrelationMatrix { t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tests::{bell, fam, mixed};
    use states::BellKind;

    fn assert_diag(t: &CorrelationMatrix, d: [f64; 3]) {
        for n in 0..3 {
            for m in 0..3 {
                let want = if n == m { d[n] } else { 0.0 };
                assert!((t.get(n, m) - want).abs() < 1e-15, "t[{n}][{m}] = {}", t.get(n, m));
            }
        }
    }

    #[test]
    fn bell_correlations() {
        assert_diag(&correlation_matrix(&bell(BellKind::PhiPlus)).unwrap(), [1.0, -1.0, 1.0]);
        assert_diag(&correlation_matrix(&bell(BellKind::PsiMinus)).unwrap(), [-1.0, -1.0, -1.0]);
        assert_diag(&correlation_matrix(&mixed()).unwrap(), [0.0; 3]);
    }

    #[test]
    fn tt_eigenvalues_match_gram_trace() {
        let t = correlation_matrix(&fam("tau2:psi-", 0.37)).unwrap();
        let u = t.tt_eigenvalues().unwrap();
        let g = t.gram();
        let tr = g[0][0] + g[1][1] + g[2][2];
        assert!((u.iter().sum::<f64>() - tr).abs() < 1e-14);
        assert!(u.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn star_pair_correlations() {
        // hand contraction of (1/4)[[2,1,0,1],[1,1,0,1],[0,0,0,0],[1,1,0,1]]
        let t = correlation_matrix(&fam("tau1:phi+", 1.0)).unwrap();
        let want = [[0.5, 0.0, -0.5], [0.0, -0.5, 0.0], [0.5, 0.0, 0.5]];
        for n in 0..3 {
            for m in 0..3 {
                assert!((t.get(n, m) - want[n][m]).abs() < 1e-15, "t[{n}][{m}]");
            }
        }
        let u = t.tt_eigenvalues().unwrap();
        for (x, y) in u.iter().zip([0.5, 0.5, 0.25]) {
            assert!((x - y).abs() < 1e-15);
        }
    }
}
