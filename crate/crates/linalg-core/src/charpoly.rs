//! Eigenvalues of general (non-normal) 4x4 matrices through the
//! characteristic polynomial.
//!
//! Every finite double is a dyadic rational, so the input is lifted to
//! Gaussian integers times a common power of two and the power sums
//! `p_k = tr(A^k)` are formed without rounding. Newton's identities give the
//! coefficients, Yun's algorithm splits off repeated roots exactly, and only
//! the square-free factors are solved in floating point (closed form up to
//! degree two, Aberth-Ehrlich above). A Bell-state `rho * rho~` thus yields
//! its triple zero as an exact factor `x^3` instead of a cube-root cluster.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::LinalgError;
use crate::matrix::ComplexMatrix;

type GInt = num_complex::Complex<BigInt>;
type GRat = num_complex::Complex<BigRational>;

const ABERTH_MAX_ITER: usize = 500;

/// Matrix of Gaussian integers standing for `entries * 2^exp`.
struct ExactMatrix {
    n: usize,
    entries: Vec<GInt>,
    exp: i64,
}

/// Split a finite double into `mantissa * 2^exponent` with an integer mantissa.
fn dyadic(x: f64) -> (i64, i64) {
    if x == 0.0 {
        return (0, 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1 } else { -1 };
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    let (mant, exp) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1 << 52), raw_exp - 1075) };
    (sign * mant, exp)
}

impl ExactMatrix {
    fn from_matrix(a: &ComplexMatrix) -> Self {
        let parts: Vec<((i64, i64), (i64, i64))> = a.entries().iter().map(|z| (dyadic(z.re), dyadic(z.im))).collect();
        let exp = parts
            .iter()
            .flat_map(|&((m1, e1), (m2, e2))| [(m1, e1), (m2, e2)])
            .filter(|&(m, _)| m != 0)
            .map(|(_, e)| e)
            .min()
            .unwrap_or(0);
        let lift = |(m, e): (i64, i64)| -> BigInt {
            if m == 0 {
                BigInt::zero()
            } else {
                BigInt::from(m) << ((e - exp) as usize)
            }
        };
        let entries = parts.into_iter().map(|(re, im)| GInt::new(lift(re), lift(im))).collect();
        ExactMatrix { n: a.dim(), entries, exp }
    }

    fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        let n = self.n;
        let mut entries = vec![GInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        ExactMatrix { n, entries, exp: self.exp + other.exp }
    }

    fn trace(&self) -> GInt {
        (0..self.n).fold(GInt::zero(), |acc, i| acc + &self.entries[i * self.n + i])
    }

    /// `tr(self * other)` without forming the product.
    fn trace_of_product(&self, other: &ExactMatrix) -> GInt {
        let n = self.n;
        let mut acc = GInt::zero();
        for i in 0..n {
            for k in 0..n {
                acc += &self.entries[i * n + k] * &other.entries[k * n + i];
            }
        }
        acc
    }
}

/// Polynomial over Q(i), coefficients lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
struct Poly(Vec<GRat>);

impl Poly {
    fn trimmed(mut c: Vec<GRat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    fn monic(&self) -> Poly {
        let lead = self.0.last().expect("monic of zero polynomial").clone();
        Poly(self.0.iter().map(|c| c / &lead).collect())
    }

    fn derivative(&self) -> Poly {
        Poly::trimmed(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * GRat::from(BigRational::from_integer(BigInt::from(k))))
                .collect(),
        )
    }

    fn sub(&self, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        let z = GRat::zero();
        Poly::trimmed((0..len).map(|k| self.0.get(k).unwrap_or(&z) - other.0.get(k).unwrap_or(&z)).collect())
    }

    /// Quotient and remainder.
    fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.0.clone();
        let dd = d.degree();
        let lead = d.0.last().unwrap().clone();
        if self.0.len() < d.0.len() {
            return (Poly(vec![]), self.clone());
        }
        let mut quot = vec![GRat::zero(); self.0.len() - dd];
        for k in (0..quot.len()).rev() {
            let coef = &rem[k + dd] / &lead;
            if !coef.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&coef * dj);
                }
            }
            quot[k] = coef;
        }
        rem.truncate(dd);
        (Poly::trimmed(quot), Poly::trimmed(rem))
    }

    fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn to_f64(&self) -> Vec<Complex64> {
        self.0
            .iter()
            .map(|c| Complex64::new(c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN)))
            .collect()
    }
}

/// Square-free decomposition: `f = lead * prod_i a_i^i`, returned as `(a_i, i)`.
fn yun(f: &Poly) -> Vec<(Poly, usize)> {
    let f = f.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_rem(&a0).0;
    let c = df.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        let b_next = b.div_rem(&a).0;
        let c_next = d.div_rem(&a).0;
        d = c_next.sub(&b_next.derivative());
        if !a.is_constant() {
            out.push((a, i));
        }
        b = b_next;
        i += 1;
    }
    out
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    // value and derivative, coefficients lowest degree first
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Roots of a square-free polynomial given with f64 coefficients (lowest first).
fn squarefree_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
    // exact zero roots come off before any floating-point work
    let zeros = coeffs.iter().take_while(|x| x.norm() == 0.0).count();
    if zeros > 0 {
        let mut roots = squarefree_roots(&coeffs[zeros..])?;
        roots.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), zeros));
        return Ok(roots);
    }
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let c: Vec<Complex64> = coeffs.iter().map(|x| x / lead).collect();
    match deg {
        0 => Ok(vec![]),
        1 => Ok(vec![-c[0]]),
        2 => {
            // stable quadratic: z^2 + b z + c0
            let (b, c0) = (c[1], c[0]);
            let disc = (b * b - c0 * 4.0).sqrt();
            let q = if (b.conj() * disc).re >= 0.0 { -(b + disc) * 0.5 } else { -(b - disc) * 0.5 };
            if q.norm() == 0.0 {
                return Ok(vec![q, q]);
            }
            Ok(vec![q, c0 / q])
        }
        _ => aberth(&c),
    }
}

/// Aberth-Ehrlich simultaneous iteration for a monic polynomial.
fn aberth(c: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
    let deg = c.len() - 1;
    let mut z = newton_polygon_start(c);
    let mut iter = 0;
    loop {
        let mut max_step_rel = 0.0f64;
        for i in 0..deg {
            let (p, dp) = horner(c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..deg).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                let scale = z[i].norm().max(f64::MIN_POSITIVE);
                max_step_rel = max_step_rel.max(step.norm() / scale);
            }
        }
        iter += 1;
        if max_step_rel < 4.0 * f64::EPSILON || iter >= ABERTH_MAX_ITER {
            break;
        }
    }
    // Newton polish then residual check
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(c, *zi);
            if dp.norm() > 0.0 {
                let step = p / dp;
                if step.re.is_finite() && step.im.is_finite() {
                    *zi -= step;
                }
            }
        }
    }
    let mut worst = 0.0f64;
    for &zi in &z {
        let (p, _) = horner(c, zi);
        // residual relative to the size of the terms being summed
        let mag: f64 = c.iter().enumerate().map(|(k, ck)| ck.norm() * zi.norm().powi(k as i32)).sum();
        let rel = if mag > 0.0 { p.norm() / mag } else { 0.0 };
        if !rel.is_finite() {
            return Err(LinalgError::RootFinding { iterations: iter, residual: f64::INFINITY });
        }
        worst = worst.max(rel);
    }
    if worst > 1e-10 {
        return Err(LinalgError::RootFinding { iterations: iter, residual: worst });
    }
    Ok(z)
}

/// Starting points on circles read off the upper convex hull of
/// `(k, ln|c_k|)`: an edge from `i` to `j` gets `j - i` points at radius
/// `(|c_i| / |c_j|)^(1/(j-i))`. Roots of very different magnitudes (a
/// nearly singular `rho`) then start in the right neighbourhood.
fn newton_polygon_start(c: &[Complex64]) -> Vec<Complex64> {
    let deg = c.len() - 1;
    let pts: Vec<(usize, f64)> =
        c.iter().enumerate().filter(|(_, x)| x.norm() > 0.0).map(|(k, x)| (k, x.norm().ln())).collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b unless it lies strictly above the chord a-p
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut z = Vec::with_capacity(deg);
    for w in hull.windows(2) {
        let ((i, li), (j, lj)) = (w[0], w[1]);
        let m = j - i;
        let r = ((li - lj) / m as f64).exp();
        for k in 0..m {
            let angle = 2.0 * std::f64::consts::PI * (k as f64 / m as f64 + i as f64 / deg as f64) + 0.4;
            z.push(Complex64::from_polar(r, angle));
        }
    }
    z
}

/// Exact characteristic polynomial coefficients of `a * b` (4x4 inputs),
/// lowest degree first, as Gaussian rationals.
fn charpoly_of_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Poly, LinalgError> {
    for m in [a, b] {
        if m.dim() != 4 {
            return Err(LinalgError::UnsupportedDimension { dim: m.dim(), expected: "4" });
        }
    }
    let m1 = ExactMatrix::from_matrix(a).mul(&ExactMatrix::from_matrix(b));
    let m2 = m1.mul(&m1);
    let p1 = m1.trace();
    let p2 = m2.trace();
    let p3 = m2.trace_of_product(&m1);
    let p4 = m2.trace_of_product(&m2);
    // Newton: 24 chi(x) = 24x^4 - 24 e1 x^3 + 12 E2 x^2 - 4 E3 x + E4
    // with E2 = 2 e2, E3 = 6 e3, E4 = 24 e4 kept integral.
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let six = BigInt::from(6);
    let e1 = p1.clone();
    let big_e2 = &e1 * &p1 - &p2;
    let big_e3 = &big_e2 * &p1 - scale(&(&e1 * &p2), &two) + scale(&p3, &two);
    let big_e4 = &big_e3 * &p1 - scale(&(&big_e2 * &p2), &three) + scale(&(&e1 * &p3), &six) - scale(&p4, &six);
    // The power sums belong to the integer matrix; the true matrix is
    // 2^s times it, so the coefficient of x^{4-k} picks up 2^{s k}.
    let s = m1.exp;
    let lift = |g: GInt, num: i64, k: i64| -> GRat {
        let factor = pow2(s * k) * BigRational::from_integer(BigInt::from(num));
        GRat::new(BigRational::from_integer(g.re) * &factor, BigRational::from_integer(g.im) * &factor)
    };
    let coeffs = vec![
        lift(big_e4, 1, 4),
        lift(big_e3, -4, 3),
        lift(big_e2, 12, 2),
        lift(e1, -24, 1),
        GRat::new(BigRational::from_integer(BigInt::from(24)), BigRational::zero()),
    ];
    Ok(Poly::trimmed(coeffs))
}

fn scale(g: &GInt, k: &BigInt) -> GInt {
    GInt::new(&g.re * k, &g.im * k)
}

fn pow2(e: i64) -> BigRational {
    let one = BigInt::one();
    if e >= 0 {
        BigRational::from_integer(one << (e as usize))
    } else {
        BigRational::new(one.clone(), one << ((-e) as usize))
    }
}

/// All four eigenvalues of `a * b` with multiplicity, sorted by descending
/// real part.
pub fn product_eigenvalues_4x4(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Vec<Complex64>, LinalgError> {
    let poly = charpoly_of_product(a, b)?;
    let mut roots = Vec::with_capacity(4);
    for (factor, mult) in yun(&poly) {
        let coeffs = factor.to_f64();
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(LinalgError::RootFinding { iterations: 0, residual: f64::NAN });
        }
        for r in squarefree_roots(&coeffs)? {
            roots.extend(std::iter::repeat_n(r, mult));
        }
    }
    if roots.len() != 4 {
        return Err(LinalgError::RootFinding { iterations: 0, residual: roots.len() as f64 });
    }
    roots.sort_by(|x, y| y.re.total_cmp(&x.re));
    Ok(roots)
}

/// The four roots of the characteristic polynomial of a general 4x4 matrix.
pub fn general_eigenvalues_4x4(a: &ComplexMatrix) -> Result<Vec<Complex64>, LinalgError> {
    product_eigenvalues_4x4(a, &ComplexMatrix::identity(4))
}
