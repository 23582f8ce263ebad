//! Dense complex 2×2 matrices.
//!
//! Everything in this crate lives in a two-dimensional boundary space, so
//! the linear algebra is written out in closed form: eigenvalues come from
//! the characteristic quadratic, Hermitian functions from the spectral
//! projectors, and the operator norm from the singular-value formula.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// Complex 2×2 matrix stored row-major as `[a11, a12, a21, a22]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat2(pub [Complex64; 4]);

impl CMat2 {
    pub const fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        CMat2([a11, a12, a21, a22])
    }

    /// Matrix with real entries.
    pub fn real(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        CMat2::new(a11.into(), a12.into(), a21.into(), a22.into())
    }

    pub const fn zero() -> Self {
        CMat2([ZERO; 4])
    }

    pub const fn identity() -> Self {
        CMat2([ONE, ZERO, ZERO, ONE])
    }

    pub fn diag(d1: Complex64, d2: Complex64) -> Self {
        CMat2::new(d1, ZERO, ZERO, d2)
    }

    pub fn scalar(s: Complex64) -> Self {
        CMat2::diag(s, s)
    }

    #[inline]
    pub fn a11(&self) -> Complex64 {
        self.0[0]
    }
    #[inline]
    pub fn a12(&self) -> Complex64 {
        self.0[1]
    }
    #[inline]
    pub fn a21(&self) -> Complex64 {
        self.0[2]
    }
    #[inline]
    pub fn a22(&self) -> Complex64 {
        self.0[3]
    }

    /// Entry at `(row, col)`, zero-based.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[2 * row + col]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub(crate) fn ensure_finite(&self, what: &'static str) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite(what))
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let [a, b, c, d] = self.0;
        CMat2::new(a.conj(), c.conj(), b.conj(), d.conj())
    }

    pub fn transpose(&self) -> Self {
        let [a, b, c, d] = self.0;
        CMat2::new(a, c, b, d)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMat2(self.0.map(|z| z * s))
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0] + self.0[3]
    }

    pub fn det(&self) -> Complex64 {
        let [a, b, c, d] = self.0;
        a * d - b * c
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        let [a, b, c, d] = self.0;
        let scale = self.frobenius().powi(2);
        if scale == 0.0 || det.norm() <= 1e-14 * scale {
            return None;
        }
        Some(CMat2::new(d, -b, -c, a).scale(det.inv()))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Singular values `(s_max, s_min)`.
    pub fn singular_values(&self) -> (f64, f64) {
        let [a, b, c, d] = self.0;
        // A*A = [[p, q], [q̄, r]]; the half gap is a sum of squares, so
        // nearly equal singular values keep full precision
        let p = a.norm_sqr() + c.norm_sqr();
        let r = b.norm_sqr() + d.norm_sqr();
        let q = a.conj() * b + c.conj() * d;
        let half_gap = (0.25 * (p - r) * (p - r) + q.norm_sqr()).sqrt();
        let smax = (0.5 * (p + r) + half_gap).sqrt();
        let d = self.det().norm();
        let smin = if smax > 0.0 { d / smax } else { 0.0 };
        (smax, smin)
    }

    /// Operator 2-norm (largest singular value).
    pub fn norm2(&self) -> f64 {
        self.singular_values().0
    }

    /// Numerical rank under a relative threshold on the singular values.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let (smax, smin) = self.singular_values();
        if smax == 0.0 {
            0
        } else if smin <= rel_tol * smax {
            1
        } else {
            2
        }
    }

    /// Eigenvalues from the characteristic quadratic, ordered so that the
    /// first has the `+` sign in front of the discriminant root.
    pub fn eigenvalues(&self) -> (Complex64, Complex64) {
        let half_tr = 0.5 * self.trace();
        let [a, b, c, d] = self.0;
        let half_diff = 0.5 * (a - d);
        let root = (half_diff * half_diff + b * c).sqrt();
        // avoid cancellation in the smaller root
        let (l1, l2) = if (half_tr + root).norm() >= (half_tr - root).norm() {
            let l1 = half_tr + root;
            let l2 = if l1.norm() > 0.0 { self.det() / l1 } else { half_tr - root };
            (l1, l2)
        } else {
            let l2 = half_tr - root;
            let l1 = if l2.norm() > 0.0 { self.det() / l2 } else { half_tr + root };
            (l1, l2)
        };
        (l1, l2)
    }

    /// `‖A − A*‖` (Frobenius).
    pub fn hermitian_defect(&self) -> f64 {
        (*self - self.adjoint()).frobenius()
    }

    /// `(A + A*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale(0.5.into())
    }

    /// Spectral data of the Hermitian part: `(mean, half_gap)` so that the
    /// eigenvalues are `mean ± half_gap`.
    fn hermitian_mean_gap(&self) -> (f64, f64) {
        let h = self.hermitian_part();
        let a = h.a11().re;
        let d = h.a22().re;
        let b = h.a12();
        let mean = 0.5 * (a + d);
        let gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        (mean, gap)
    }

    /// Eigenvalues `(λ_min, λ_max)` of the Hermitian part.
    pub fn hermitian_eigenvalues(&self) -> (f64, f64) {
        let (mean, gap) = self.hermitian_mean_gap();
        (mean - gap, mean + gap)
    }

    /// `f(H)` for the Hermitian part `H`, given `f` at the centre data.
    ///
    /// With eigenvalues `m ± δ`, any matrix function reduces to
    /// `avg · I + slope · (H − m I)` where `avg = (f(m+δ)+f(m−δ))/2` and
    /// `slope` is the divided difference.
    fn hermitian_apply(&self, avg: f64, slope: f64, mean: f64) -> Self {
        let h = self.hermitian_part();
        let shifted = h - CMat2::scalar(mean.into());
        CMat2::scalar(avg.into()) + shifted.scale(slope.into())
    }

    /// Principal logarithm of the Hermitian part, which must be positive
    /// definite.
    pub fn hermitian_log(&self) -> Result<Self> {
        let (mean, gap) = self.hermitian_mean_gap();
        let lmax = mean + gap;
        if lmax <= 0.0 {
            return Err(Error::NotPositive { min_eig: mean - gap });
        }
        // λ_min via the determinant keeps relative accuracy when λ_min ≪ λ_max
        let h = self.hermitian_part();
        let lmin = h.det().re / lmax;
        if lmin.is_nan() || lmin <= 0.0 {
            return Err(Error::NotPositive { min_eig: lmin });
        }
        let (ln_max, ln_min) = (lmax.ln(), lmin.ln());
        let avg = 0.5 * (ln_max + ln_min);
        let x = gap / mean;
        let slope = if x < 1e-4 {
            // atanh(x)/(x m) series
            (1.0 + x * x / 3.0 + x.powi(4) / 5.0) / mean
        } else {
            (ln_max - ln_min) / (lmax - lmin)
        };
        Ok(self.hermitian_apply(avg, slope, mean))
    }

    /// `exp` of the Hermitian part.
    pub fn hermitian_exp(&self) -> Self {
        let (mean, gap) = self.hermitian_mean_gap();
        let e = mean.exp();
        self.hermitian_apply(e * gap.cosh(), e * sinhc(gap), mean)
    }

    /// `cosh` of the Hermitian part.
    pub fn hermitian_cosh(&self) -> Self {
        let (mean, gap) = self.hermitian_mean_gap();
        self.hermitian_apply(mean.cosh() * gap.cosh(), mean.sinh() * sinhc(gap), mean)
    }

    /// `sinh` of the Hermitian part.
    pub fn hermitian_sinh(&self) -> Self {
        let (mean, gap) = self.hermitian_mean_gap();
        self.hermitian_apply(mean.sinh() * gap.cosh(), mean.cosh() * sinhc(gap), mean)
    }

    /// Entrywise closeness in Frobenius norm.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (*self - *other).frobenius() <= tol
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let [a, b, c, d] = self.0;
        [a * v[0] + b * v[1], c * v[0] + d * v[1]]
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, mut n: u32) -> Self {
        let mut base = *self;
        let mut acc = CMat2::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }
}

/// `sinh(x)/x`, continuous at zero.
fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-5 {
        1.0 + x * x / 6.0
    } else {
        x.sinh() / x
    }
}

impl Default for CMat2 {
    fn default() -> Self {
        CMat2::zero()
    }
}

impl Add for CMat2 {
    type Output = CMat2;
    fn add(self, rhs: CMat2) -> CMat2 {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        CMat2(out)
    }
}

impl Sub for CMat2 {
    type Output = CMat2;
    fn sub(self, rhs: CMat2) -> CMat2 {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o -= r;
        }
        CMat2(out)
    }
}

impl Neg for CMat2 {
    type Output = CMat2;
    fn neg(self) -> CMat2 {
        CMat2(self.0.map(|z| -z))
    }
}

impl Mul for CMat2 {
    type Output = CMat2;
    fn mul(self, rhs: CMat2) -> CMat2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = rhs.0;
        CMat2::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    }
}

impl Mul<Complex64> for CMat2 {
    type Output = CMat2;
    fn mul(self, rhs: Complex64) -> CMat2 {
        self.scale(rhs)
    }
}

impl Mul<f64> for CMat2 {
    type Output = CMat2;
    fn mul(self, rhs: f64) -> CMat2 {
        self.scale(rhs.into())
    }
}

impl fmt::Display for CMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

// JSON layout: [[re, im], [re, im], [re, im], [re, im]], row-major.
impl Serialize for CMat2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: [[f64; 2]; 4] = self.0.map(|z| [z.re, z.im]);
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CMat2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = <[[f64; 2]; 4]>::deserialize(deserializer)?;
        let m = CMat2(pairs.map(|[re, im]| Complex64::new(re, im)));
        if !m.is_finite() {
            return Err(D::Error::custom("matrix entries must be finite"));
        }
        Ok(m)
    }
}
