//! Dense square complex matrices and pure state vectors.
//!
//! Basis states are big-endian: for three qubits the index of `|q0 q1 q2>`
//! is `4*q0 + 2*q1 + q2`, so qubit 0 is the leftmost ket label.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::LinalgError;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major `dim x dim` complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Checked constructor: length must be `dim^2` and every entry finite.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if dim == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(LinalgError::BadLength { dim, expected: dim * dim, got: data.len() });
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NonFinite { row: k / dim, col: k % dim });
        }
        Ok(Self { dim, data })
    }

    /// Build from real rows; convenient for the many real-valued states.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self, LinalgError> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(LinalgError::BadLength { dim, expected: dim * dim, got: row.len() * dim });
            }
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::new(dim, data)
    }

    pub(crate) fn from_vec_unchecked(dim: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_vec_unchecked(dim, vec![ZERO; dim * dim])
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Number of qubits if the dimension is a power of two.
    pub fn qubits(&self) -> Option<usize> {
        self.dim.is_power_of_two().then(|| self.dim.trailing_zeros() as usize)
    }

    pub fn conj(&self) -> Self {
        Self::from_vec_unchecked(self.dim, self.data.iter().map(|z| z.conj()).collect())
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_vec_unchecked(self.dim, self.data.iter().map(|z| z * s).collect())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Matrix product; panics on dimension mismatch (use [`Self::try_mul`] otherwise).
    pub fn matmul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("matmul dimension mismatch")
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff dimension mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "frobenius_distance dimension mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }

    /// max |m_ij - conj(m_ji)|
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Exactly Hermitian copy: upper triangle averaged with the conjugated
    /// lower triangle, lower triangle mirrored, real diagonal.
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            out[(i, i)] = Complex64::new(self[(i, i)].re, 0.0);
            for j in i + 1..n {
                let h = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                out[(i, j)] = h;
                out[(j, i)] = h.conj();
            }
        }
        out
    }

    /// `U * self * U^dagger`
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.matmul(self).matmul(&u.dagger())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        ComplexMatrix::from_vec_unchecked(self.dim, self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "sub dimension mismatch");
        ComplexMatrix::from_vec_unchecked(self.dim, self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect())
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Tensor product `a (x) b`: block (i, j) is `a[i][j] * b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

pub fn dagger(a: &ComplexMatrix) -> ComplexMatrix {
    a.dagger()
}

/// Unit-norm state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: Vec<Complex64>,
}

impl PureState {
    pub const NORM_TOLERANCE: f64 = 1e-10;

    pub fn new(amps: Vec<Complex64>) -> Result<Self, LinalgError> {
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if amps.is_empty() || !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > Self::NORM_TOLERANCE {
            return Err(LinalgError::NotNormalised { norm_sqr });
        }
        Ok(Self { amps })
    }

    /// Normalise an arbitrary nonzero vector.
    pub fn normalised(amps: Vec<Complex64>) -> Result<Self, LinalgError> {
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if norm_sqr == 0.0 || !norm_sqr.is_finite() {
            return Err(LinalgError::NotNormalised { norm_sqr });
        }
        // sqrt(1/n) rounds 1/sqrt(2) correctly where 1/sqrt(n) does not
        let inv = (1.0 / norm_sqr).sqrt();
        Self::new(amps.into_iter().map(|z| z * inv).collect())
    }

    /// Equal-weight superposition of computational basis states given as
    /// bit strings, e.g. `["001", "010", "100"]`.
    pub fn uniform_superposition(kets: &[&str]) -> Result<Self, LinalgError> {
        Self::superposition(&kets.iter().map(|k| (1.0, *k)).collect::<Vec<_>>())
    }

    /// Weighted superposition `sum_k w_k |bits_k>`, normalised afterwards.
    pub fn superposition(terms: &[(f64, &str)]) -> Result<Self, LinalgError> {
        let width = terms.first().map_or(0, |(_, k)| k.len());
        let mut amps = vec![ZERO; 1 << width];
        for (w, bits) in terms {
            let idx = usize::from_str_radix(bits, 2).expect("ket labels are bit strings");
            amps[idx] += Complex64::new(*w, 0.0);
        }
        Self::normalised(amps)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// `<self|other>`
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|self><self|`
    pub fn projector(&self) -> ComplexMatrix {
        let n = self.amps.len();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self.amps[i] * self.amps[j].conj();
            }
        }
        out
    }
}

/// The 2x2 Pauli matrices and identity.
pub mod pauli {
    use super::*;

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_vec_unchecked(2, vec![ZERO, ONE, ONE, ZERO])
    }

    pub fn y() -> ComplexMatrix {
        let i = Complex64::new(0.0, 1.0);
        ComplexMatrix::from_vec_unchecked(2, vec![ZERO, -i, i, ZERO])
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_vec_unchecked(2, vec![ONE, ZERO, ZERO, -ONE])
    }

    /// (sigma_x, sigma_y, sigma_z)
    pub fn xyz() -> [ComplexMatrix; 3] {
        [x(), y(), z()]
    }
}
