//! Cyclic complex Jacobi: Hermitian eigendecomposition and one-sided SVD.
//!
//! Both routines use the same 2x2 rotation
//!
//! ```text
//!        [ c            s e^{i phi} ]
//!   J =  [ -s e^{-i phi}  c         ]   on the (p, q) plane
//! ```
//!
//! with `e^{i phi} = a_pq / |a_pq|` and `t = s/c` the smaller root of the
//! real 2x2 problem. Sweeps run until the off-diagonal mass sits at rounding
//! level, which is far below the 1e-13 the callers need.

use num_complex::Complex64;

use crate::error::LinalgError;
use crate::matrix::ComplexMatrix;

const MAX_SWEEPS: usize = 60;
/// Off-diagonal norm (relative to the Frobenius norm) at which a sweep loop stops.
const REL_STOP: f64 = 1e-17;
/// Off-diagonal norm that still counts as converged if sweeps run out.
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;
/// Default Hermiticity tolerance.
pub const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
struct Rotation {
    c: f64,
    s: f64,
    phase: Complex64,
}

impl Rotation {
    /// Rotation zeroing the off-diagonal of `[[app, apq], [conj(apq), aqq]]`.
    fn annihilating(app: f64, aqq: f64, apq: Complex64) -> Self {
        let mag = apq.norm();
        let phase = apq / mag;
        let zeta = (aqq - app) / (2.0 * mag);
        let t = if zeta >= 0.0 {
            1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
        } else {
            -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
        };
        let c = 1.0 / (1.0 + t * t).sqrt();
        Rotation { c, s: t * c, phase }
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigenvalues (descending) and matching eigenvector columns of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Full Hermitian eigendecomposition. The input must be Hermitian to
/// [`HERMITIAN_TOL`]; the exactly Hermitian part is what gets diagonalised.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigen, LinalgError> {
    hermitian_eigen_tol(a, HERMITIAN_TOL)
}

pub fn hermitian_eigen_tol(a: &ComplexMatrix, tol: f64) -> Result<HermitianEigen, LinalgError> {
    let deviation = a.hermiticity_deviation();
    if deviation > tol {
        return Err(LinalgError::NotHermitian { deviation, tolerance: tol });
    }
    let n = a.dim();
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = m.frobenius_norm();
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&m);
        if off <= REL_STOP * scale || off == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            if off <= OFF_DIAGONAL_TOL * scale.max(1.0) {
                break;
            }
            return Err(LinalgError::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.norm() == 0.0 {
                    continue;
                }
                let rot = Rotation::annihilating(m[(p, p)].re, m[(q, q)].re, apq);
                rotate_hermitian(&mut m, &mut v, p, q, rot);
            }
        }
    }
    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (m[(i, i)].re, i)).collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &(_, src)) in pairs.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(HermitianEigen { values: pairs.into_iter().map(|(x, _)| x).collect(), vectors })
}

/// `m <- J^dagger m J`, `v <- v J`.
fn rotate_hermitian(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, r: Rotation) {
    let n = m.dim();
    let sp = r.phase * r.s; // s e^{i phi}
    let spc = sp.conj(); // s e^{-i phi}
    for k in 0..n {
        let (mp, mq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = mp * r.c - spc * mq;
        m[(k, q)] = sp * mp + mq * r.c;
        let (vp, vq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vp * r.c - spc * vq;
        v[(k, q)] = sp * vp + vq * r.c;
    }
    for k in 0..n {
        let (mp, mq) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = mp * r.c - sp * mq;
        m[(q, k)] = spc * mp + mq * r.c;
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)].im = 0.0;
    m[(q, q)].im = 0.0;
}

/// Real eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>, LinalgError> {
    Ok(hermitian_eigen(a)?.values)
}

/// Singular values (descending) by one-sided Hestenes-Jacobi on the columns.
///
/// Columns are orthogonalised pairwise until every pair satisfies
/// `|<m_p, m_q>| <= eps * |m_p| |m_q|`, which keeps small singular values
/// accurate relative to their own size.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>, LinalgError> {
    let n = a.dim();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| a[(i, j)]).collect()).collect();
    let eps = f64::EPSILON;
    // columns this small are rounding noise; rotating them further only
    // drives them into subnormals where the rotation loses all accuracy
    let floor = (eps * a.frobenius_norm()).powi(2);
    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                if alpha <= floor || beta <= floor {
                    continue;
                }
                let gamma: Complex64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= eps * alpha.sqrt() * beta.sqrt() {
                    continue;
                }
                rotated = true;
                let r = Rotation::annihilating(alpha, beta, gamma);
                let sp = r.phase * r.s;
                let spc = sp.conj();
                let (left, right) = cols.split_at_mut(q);
                let (cp, cq) = (&mut left[p], &mut right[0]);
                for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                    let (xp, xq) = (*x, *y);
                    *x = xp * r.c - spc * xq;
                    *y = sp * xp + xq * r.c;
                }
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps == MAX_SWEEPS {
            let worst = worst_column_overlap(&cols, floor);
            if worst > OFF_DIAGONAL_TOL {
                return Err(LinalgError::NoConvergence { sweeps, off_norm: worst });
            }
            break;
        }
    }
    let mut values: Vec<f64> = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

fn worst_column_overlap(cols: &[Vec<Complex64>], floor: f64) -> f64 {
    let mut worst = 0.0f64;
    for p in 0..cols.len() {
        for q in p + 1..cols.len() {
            let a: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
            let b: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
            let g: Complex64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
            if a > floor && b > floor {
                worst = worst.max(g.norm() / (a.sqrt() * b.sqrt()));
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{kron, pauli};

    #[test]
    fn diagonal_input_sorted_descending() {
        let a = ComplexMatrix::from_diagonal(&[0.2, 0.4, 0.1, 0.3]);
        assert_eq!(hermitian_eigenvalues(&a).unwrap(), vec![0.4, 0.3, 0.2, 0.1]);
    }

    #[test]
    fn bell_projector_spectrum() {
        let h = 0.5;
        let a = ComplexMatrix::from_real_rows(&[
            &[h, 0.0, 0.0, h],
            &[0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
            &[h, 0.0, 0.0, h],
        ])
        .unwrap();
        let ev = hermitian_eigenvalues(&a).unwrap();
        let want = [1.0, 0.0, 0.0, 0.0];
        for (x, w) in ev.iter().zip(want) {
            assert!((x - w).abs() < 1e-15, "{ev:?}");
        }
    }

    #[test]
    fn pauli_y_eigenpairs() {
        let e = hermitian_eigen(&pauli::y()).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-15 && (e.values[1] + 1.0).abs() < 1e-15);
        // A v = lambda v column by column
        let av = pauli::y().matmul(&e.vectors);
        for col in 0..2 {
            for row in 0..2 {
                let want = e.vectors[(row, col)] * e.values[col];
                assert!((av[(row, col)] - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(hermitian_eigenvalues(&a), Err(LinalgError::NotHermitian { .. })));
    }

    #[test]
    fn singular_values_of_unitary_and_diagonal() {
        let u = kron(&pauli::y(), &pauli::x());
        for s in singular_values(&u).unwrap() {
            assert!((s - 1.0).abs() < 1e-15);
        }
        let d = ComplexMatrix::from_diagonal(&[-3.0, 0.5, 0.0, 2.0]);
        assert_eq!(singular_values(&d).unwrap(), vec![3.0, 2.0, 0.5, 0.0]);
    }

    #[test]
    fn singular_values_of_rank_one() {
        // outer product of (1, 2i) and (3, 4): single singular value sqrt(5)*5
        let i = Complex64::new(0.0, 1.0);
        let a =
            ComplexMatrix::new(2, vec![Complex64::new(3.0, 0.0), Complex64::new(4.0, 0.0), i * 6.0, i * 8.0]).unwrap();
        let s = singular_values(&a).unwrap();
        assert!((s[0] - 5.0 * 5f64.sqrt()).abs() < 1e-14);
        assert!(s[1].abs() < 1e-15);
    }

    #[test]
    fn noise_level_columns_do_not_stall() {
        // two nearly parallel columns whose difference is rounding noise
        let v = [0.4553333333333334, 0.022333333333333334, 0.022333333333333334, 0.4330000000000001];
        let mut data = Vec::new();
        for &x in &v {
            data.extend([x, x * (1.0 + f64::EPSILON), 1e-300 * x, 0.0].map(|r| Complex64::new(r, 0.0)));
        }
        let s = singular_values(&ComplexMatrix::new(4, data).unwrap()).unwrap();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((s[0] - norm * 2f64.sqrt()).abs() < 1e-15);
        assert!(s[1..].iter().all(|&x| x < 1e-15));
    }
}
