use linalg_core::{
    clamp_eigenvalue, kron, pauli, product_eigenvalues_4x4, psd_sqrt, singular_values, ComplexMatrix, DensityMatrix,
};

use crate::{two_qubit, MetricsError};

/// `sigma_y (x) sigma_y`, real with anti-diagonal (-1, 1, 1, -1).
fn yy() -> ComplexMatrix {
    kron(&pauli::y(), &pauli::y())
}

fn flip(m: &ComplexMatrix) -> ComplexMatrix {
    let y = yy();
    y.matmul(&m.conj()).matmul(&y)
}

/// `rho~ = (Y (x) Y) rho* (Y (x) Y)`
pub fn spin_flip(rho: &DensityMatrix) -> Result<ComplexMatrix, MetricsError> {
    Ok(flip(two_qubit(rho)?))
}

fn from_roots(r: [f64; 4]) -> f64 {
    (r[0] - r[1] - r[2] - r[3]).max(0.0)
}

/// Square roots of the eigenvalues of `rho rho~`, descending.
///
/// Computed as the singular values of `sqrt(rho) Y conj(sqrt(rho))`, which
/// are the eigenvalues of the Hermitian `sqrt(sqrt(rho) rho~ sqrt(rho))`.
pub fn wootters_roots(rho: &DensityMatrix) -> Result<[f64; 4], MetricsError> {
    let s = psd_sqrt(&two_qubit(rho)?.hermitian_part())?;
    let m = s.matmul(&yy()).matmul(&s.conj());
    let sv = singular_values(&m)?;
    Ok([sv[0], sv[1], sv[2], sv[3]])
}

pub fn concurrence(rho: &DensityMatrix) -> Result<f64, MetricsError> {
    Ok(from_roots(wootters_roots(rho)?))
}

/// A double root of the quartic splits into a conjugate pair of order
/// sqrt(eps); the real part stays accurate.
const ROOT_IMAG_TOL: f64 = 1e-6;

/// Eigenvalues of `rho rho~` from the exact characteristic polynomial,
/// clamped and sorted descending.
pub fn spin_flip_eigenvalues(rho: &DensityMatrix) -> Result<[f64; 4], MetricsError> {
    let h = two_qubit(rho)?.hermitian_part();
    let roots = product_eigenvalues_4x4(&h, &flip(&h))?;
    let mut out = [0.0; 4];
    for (slot, z) in out.iter_mut().zip(&roots) {
        if z.im.abs() > ROOT_IMAG_TOL {
            return Err(MetricsError::BadSpinFlipEigenvalue { value: *z });
        }
        *slot = clamp_eigenvalue(z.re).map_err(|_| MetricsError::BadSpinFlipEigenvalue { value: *z })?;
    }
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

/// Concurrence through [`spin_flip_eigenvalues`]; the independent second route.
pub fn concurrence_charpoly(rho: &DensityMatrix) -> Result<f64, MetricsError> {
    Ok(from_roots(spin_flip_eigenvalues(rho)?.map(f64::sqrt)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tests::{bell, density, fam, mixed};
    use linalg_core::PureState;
    use states::BellKind;

    #[test]
    fn yy_antidiagonal() {
        let y = yy();
        for (i, want) in [-1.0, 1.0, 1.0, -1.0].into_iter().enumerate() {
            assert_eq!(y[(i, 3 - i)].re, want);
            assert_eq!(y[(i, 3 - i)].im, 0.0);
        }
    }

    #[test]
    fn spin_flip_examples() {
        let phi = bell(BellKind::PhiPlus);
        assert!(spin_flip(&phi).unwrap().max_abs_diff(phi.matrix()) < 1e-15);
        let m = mixed();
        assert!(spin_flip(&m).unwrap().max_abs_diff(m.matrix()) == 0.0);
        let zero = density(PureState::superposition(&[(1.0, "00")]).unwrap().projector());
        let one = PureState::superposition(&[(1.0, "11")]).unwrap().projector();
        assert_eq!(spin_flip(&zero).unwrap(), one);
    }

    #[test]
    fn bell_states_have_unit_concurrence() {
        for b in BellKind::ALL {
            assert!((concurrence(&bell(b)).unwrap() - 1.0).abs() < 1e-14);
            assert!((concurrence_charpoly(&bell(b)).unwrap() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn charpoly_survives_double_root() {
        // rho5:phi- at r = 3/4 has 9/64 twice in its spin-flip spectrum
        let rho = fam("rho5:phi-", 0.75);
        let ev = spin_flip_eigenvalues(&rho).unwrap();
        assert_eq!(ev.iter().filter(|&&v| (v - 9.0 / 64.0).abs() < 1e-8).count(), 2, "{ev:?}");
        assert!((concurrence_charpoly(&rho).unwrap() - concurrence(&rho).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn maximally_mixed_is_separable() {
        assert_eq!(concurrence(&mixed()).unwrap(), 0.0);
        assert_eq!(concurrence_charpoly(&mixed()).unwrap(), 0.0);
        let ev = spin_flip_eigenvalues(&mixed()).unwrap();
        assert!(ev.iter().all(|&x| (x - 1.0 / 16.0).abs() < 1e-16));
    }

    #[test]
    fn mems_w_concurrence_two_thirds() {
        let w = fam("memsw", 0.0);
        assert!((concurrence(&w).unwrap() - 2.0 / 3.0).abs() < 1e-14);
        assert!((concurrence_charpoly(&w).unwrap() - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn werner_concurrence() {
        // singlet weight F = m, C = max(0, 2m - 1)
        for k in 0..=20 {
            let m = k as f64 / 20.0;
            let rho = fam("werner", m);
            let want = (2.0 * m - 1.0).max(0.0);
            assert!((concurrence(&rho).unwrap() - want).abs() < 1e-13, "m = {m}");
            assert!((concurrence_charpoly(&rho).unwrap() - want).abs() < 1e-13, "m = {m}");
        }
    }

    #[test]
    fn star_reduction_half() {
        let star = fam("tau1:phi+", 1.0);
        assert!((concurrence(&star).unwrap() - 0.5).abs() < 1e-14);
    }
}
