//! Scalar Weyl functions and the discrete spectrum of extensions with a
//! stable C-symmetry.
//!
//! With the boundary triplet commuting with both `J` and `R`, the Weyl
//! function is scalar, `M(μ) = m(μ) I`, and the extension decouples into
//! two channels. A real `r` in the resolvent set of `A_0` is an eigenvalue
//! iff one of
//!
//! ```text
//! tan((ξ + t)/2) + m(r) = 0        (plus channel)
//! cot((ξ − t)/2) − m(r) = 0        (minus channel)
//! ```
//!
//! holds. Both are stored projectively as `a + b m(r) = 0` so the poles of
//! `tan` and `cot` need no special treatment.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmat2::CMat2;
use crate::error::{Error, Result};
use crate::extensions::{build_k, cayley_to_relation, classify_with_tol, k_eigenvalues_with_tol, ExtParams, ResolventParam, EXACT_TOL};
use crate::roots::{self, LineZeroOptions};

/// Open real interval; either end may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpenInterval {
    pub lo: f64,
    pub hi: f64,
}

impl OpenInterval {
    pub fn contains(&self, r: f64) -> bool {
        r > self.lo && r < self.hi
    }

    /// Closed-interval containment of `[a, b]` in the closure.
    pub fn covers(&self, a: f64, b: f64) -> bool {
        a >= self.lo && b <= self.hi
    }
}

/// A scalar Nevanlinna function `m(μ)` with its real regular set.
///
/// Implementations must be reentrant; sweeps evaluate them concurrently.
pub trait WeylFn: Sync {
    fn eval(&self, mu: Complex64) -> Complex64;

    /// `ρ(A_0) ∩ ℝ` as a union of open intervals.
    fn real_domain(&self) -> Vec<OpenInterval>;

    fn in_real_domain(&self, r: f64) -> bool {
        self.real_domain().iter().any(|iv| iv.contains(r))
    }

    /// Real boundary value `m(r)` for `r` in the real domain.
    fn boundary_eval(&self, r: f64) -> Result<f64> {
        if !self.in_real_domain(r) {
            return Err(Error::OutsideDomain(r));
        }
        Ok(self.eval(Complex64::new(r, 0.0)).re)
    }

    /// Scan interval suggested from the channel data, if the function
    /// knows where its bound states can lie.
    fn default_scan(&self, _channels: &[ChannelCondition]) -> Option<(f64, f64)> {
        None
    }

    /// All `μ` off the real axis with `m(μ) = w`, when an explicit inverse
    /// is available.
    fn preimage(&self, _w: Complex64) -> Option<Vec<Complex64>> {
        None
    }
}

impl<W: WeylFn + ?Sized> WeylFn for &W {
    fn eval(&self, mu: Complex64) -> Complex64 {
        (**self).eval(mu)
    }
    fn real_domain(&self) -> Vec<OpenInterval> {
        (**self).real_domain()
    }
    fn boundary_eval(&self, r: f64) -> Result<f64> {
        (**self).boundary_eval(r)
    }
    fn default_scan(&self, channels: &[ChannelCondition]) -> Option<(f64, f64)> {
        (**self).default_scan(channels)
    }
    fn preimage(&self, w: Complex64) -> Option<Vec<Complex64>> {
        (**self).preimage(w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    Plus,
    Minus,
    Both,
}

/// `a + b·m(r) = 0`, normalised to `a² + b² = 1` with the first nonzero
/// component positive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelCondition {
    pub a: f64,
    pub b: f64,
    pub channel: Channel,
}

impl ChannelCondition {
    pub fn new(a: f64, b: f64, channel: Channel) -> Self {
        let n = a.hypot(b);
        let (mut a, mut b) = (a / n, b / n);
        let lead = if a.abs() > 1e-15 { a } else { b };
        if lead < 0.0 {
            a = -a;
            b = -b;
        }
        ChannelCondition { a, b, channel }
    }

    pub fn residual(&self, m_value: f64) -> f64 {
        self.a + self.b * m_value
    }

    /// Projective agreement of the two conditions.
    pub fn coincides(&self, other: &ChannelCondition, tol: f64) -> bool {
        (self.a - other.a).abs() <= tol && (self.b - other.b).abs() <= tol
    }
}

/// Plus and minus channel conditions of a stable extension.
pub fn channel_conditions(p: &ExtParams) -> Result<(ChannelCondition, ChannelCondition)> {
    channel_conditions_with_tol(p, EXACT_TOL)
}

pub fn channel_conditions_with_tol(p: &ExtParams, tol: f64) -> Result<(ChannelCondition, ChannelCondition)> {
    let pair = k_eigenvalues_with_tol(p, tol);
    let t = pair.t.ok_or(Error::NotStable { zeta: p.zeta, phi: p.phi })?;
    let plus = 0.5 * (p.xi + t);
    let minus = 0.5 * (p.xi - t);
    Ok((
        ChannelCondition::new(plus.sin(), plus.cos(), Channel::Plus),
        ChannelCondition::new(minus.cos(), -minus.sin(), Channel::Minus),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub r: f64,
    pub mult: u8,
    pub channel: Channel,
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Bisection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<Eigenvalue>,
    pub interval: (f64, f64),
    pub method: Method,
}

impl SpectrumReport {
    pub fn values(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|e| e.r).collect()
    }

    /// Eigenvalues repeated according to multiplicity.
    pub fn values_with_multiplicity(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.r, e.mult as usize))
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SpectrumOptions {
    /// Scan interval; defaults to the Weyl function's suggestion.
    pub interval: Option<(f64, f64)>,
    /// Scan step as a fraction of the interval length.
    pub step_fraction: f64,
    pub bisect_tol: f64,
    /// Tolerance for `ζ = 0`, `φ = π/2` and the stability margin.
    pub exact_tol: f64,
    /// Channels agreeing to this tolerance are merged with multiplicity 2.
    pub coincide_tol: f64,
    /// A bracketed sign change is kept only if its residual is below this
    /// (filters poles of `m`).
    pub accept_residual: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            interval: None,
            step_fraction: 1e-3,
            bisect_tol: 1e-14,
            exact_tol: EXACT_TOL,
            coincide_tol: 1e-10,
            accept_residual: 1e-8,
        }
    }
}

/// Pull endpoints that sit on the edge of an open domain interval just
/// inside it.
fn resolve_interval<W: WeylFn + ?Sized>(m: &W, lo: f64, hi: f64) -> Result<(f64, f64)> {
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::BadInterval(lo, hi));
    }
    let dom = m
        .real_domain()
        .into_iter()
        .find(|iv| iv.covers(lo, hi))
        .ok_or(Error::BadInterval(lo, hi))?;
    let eps = 1e-12 * (hi - lo).max(1.0);
    let lo = if dom.contains(lo) { lo } else { lo + eps };
    let hi = if dom.contains(hi) { hi } else { hi - eps };
    if lo >= hi {
        return Err(Error::BadInterval(lo, hi));
    }
    Ok((lo, hi))
}

/// Real eigenvalues of a stable extension in the scan interval, found by
/// bracketing sign changes of `a + b·m(r)` for each channel.
pub fn find_discrete_spectrum<W: WeylFn + ?Sized>(m: &W, p: &ExtParams, opts: &SpectrumOptions) -> Result<SpectrumReport> {
    if !classify_with_tol(p, opts.exact_tol).is_stable {
        return Err(Error::NotStable { zeta: p.zeta, phi: p.phi });
    }
    let (plus, minus) = channel_conditions_with_tol(p, opts.exact_tol)?;
    let (lo, hi) = match opts.interval {
        Some(iv) => iv,
        None => m
            .default_scan(&[plus, minus])
            .ok_or_else(|| Error::Config("no scan interval given and the Weyl function suggests none".into()))?,
    };
    let (lo, hi) = resolve_interval(m, lo, hi)?;
    let step = opts.step_fraction * (hi - lo);
    let xs = roots::grid(lo, hi, step);

    let coincident = plus.coincides(&minus, opts.coincide_tol);
    let channels: Vec<(ChannelCondition, u8)> = if coincident {
        vec![(ChannelCondition { channel: Channel::Both, ..plus }, 2)]
    } else {
        vec![(plus, 1), (minus, 1)]
    };

    let mut eigenvalues = Vec::new();
    for (cond, mult) in channels {
        let f = |r: f64| m.boundary_eval(r).map(|v| cond.residual(v)).unwrap_or(f64::NAN);
        for r in roots::sign_change_roots(f, &xs, opts.bisect_tol) {
            let residual = f(r).abs();
            if residual <= opts.accept_residual {
                eigenvalues.push(Eigenvalue { r, mult, channel: cond.channel, residual });
            }
        }
    }
    eigenvalues.sort_by(|a, b| a.r.total_cmp(&b.r));
    Ok(SpectrumReport { eigenvalues, interval: (lo, hi), method: Method::Bisection })
}

/// `det(Ψ − m(μ) Φ)` for the boundary relation `(Φ, Ψ)`; vanishes exactly
/// at the spectrum of the extension inside `ρ(A_0)`.
pub fn det_condition<W: WeylFn + ?Sized>(m: &W, rel: &ResolventParam, mu: Complex64) -> Complex64 {
    let mv = m.eval(mu);
    (rel.psi - rel.phi * mv).det()
}

/// Real zero of [`det_condition`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetZero {
    pub r: f64,
    pub mult: u8,
}

/// Zeros of `det(Ψ − m(r) Φ)` on a real interval in the domain. This is
/// the determinant route to the discrete spectrum; it does not use the
/// channel decomposition.
pub fn det_real_zeros<W: WeylFn + ?Sized>(m: &W, rel: &ResolventParam, interval: (f64, f64), step_fraction: f64) -> Result<Vec<DetZero>> {
    let (lo, hi) = resolve_interval(m, interval.0, interval.1)?;
    let xs = roots::grid(lo, hi, step_fraction * (hi - lo));
    let f = |r: f64| match m.boundary_eval(r) {
        Ok(v) => (rel.psi - rel.phi * v).det(),
        Err(_) => Complex64::new(f64::NAN, f64::NAN),
    };
    let zeros = roots::line_zeros(f, &xs, LineZeroOptions { tol: 1e-14, accept: 1e-6 });
    Ok(zeros
        .into_iter()
        .map(|z| DetZero { r: z.x, mult: if z.double { 2 } else { 1 } })
        .collect())
}

/// Axis-aligned rectangle in the complex plane with a sampling density.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexGrid {
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub n_re: usize,
    pub n_im: usize,
}

impl ComplexGrid {
    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re.0 && z.re <= self.re.1 && z.im >= self.im.0 && z.im <= self.im.1
    }

    pub fn points(&self) -> Vec<Complex64> {
        let lin = |(a, b): (f64, f64), n: usize, k: usize| {
            if n <= 1 {
                0.5 * (a + b)
            } else {
                a + (b - a) * k as f64 / (n - 1) as f64
            }
        };
        let mut out = Vec::with_capacity(self.n_re * self.n_im);
        for j in 0..self.n_im {
            for i in 0..self.n_re {
                out.push(Complex64::new(lin(self.re, self.n_re, i), lin(self.im, self.n_im, j)));
            }
        }
        out
    }
}

/// Non-real zeros of `det(Ψ − m(μ)Φ)` inside `grid`.
///
/// If the Weyl function has an explicit inverse, the zeros are the
/// preimages of the relation's eigenvalues. Otherwise the grid is
/// searched for local minima of the modulus, refined by Newton's method.
pub fn nonreal_spectrum_probe<W: WeylFn + ?Sized>(m: &W, p: &ExtParams, grid: &ComplexGrid) -> Vec<Complex64> {
    let rel = cayley_to_relation(&build_k(p));
    let off_real = |z: Complex64| z.im.abs() > 1e-9 * (1.0 + z.norm());

    let mut closed_form: Option<Vec<Complex64>> = Some(Vec::new());
    for w in rel.eigenvalues().into_iter().flatten() {
        match m.preimage(w) {
            Some(mus) => closed_form.as_mut().unwrap().extend(mus),
            None => {
                closed_form = None;
                break;
            }
        }
    }
    let mut found = match closed_form {
        Some(mus) => mus.into_iter().filter(|&z| off_real(z) && grid.contains(z)).collect(),
        None => grid_search(m, &rel, grid),
    };
    found.retain(|&z| off_real(z));
    found.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
    found.dedup_by(|a, b| (*a - *b).norm() <= 1e-9 * (1.0 + a.norm()));
    found
}

/// Newton refinement of local minima of `|det|` on the sampling grid.
pub fn grid_search<W: WeylFn + ?Sized>(m: &W, rel: &ResolventParam, grid: &ComplexGrid) -> Vec<Complex64> {
    let f = |z: Complex64| det_condition(m, rel, z);
    let (nr, ni) = (grid.n_re.max(2), grid.n_im.max(2));
    let g = ComplexGrid { n_re: nr, n_im: ni, ..*grid };
    let pts = g.points();
    let vals: Vec<f64> = pts.iter().map(|&z| f(z).norm()).collect();
    let idx = |i: usize, j: usize| j * nr + i;
    let spacing = ((g.re.1 - g.re.0) / (nr - 1) as f64).hypot((g.im.1 - g.im.0) / (ni - 1) as f64);
    let mut out: Vec<Complex64> = Vec::new();
    for j in 0..ni {
        for i in 0..nr {
            let v = vals[idx(i, j)];
            let mut is_min = v.is_finite();
            for dj in -1i64..=1 {
                for di in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (ii, jj) = (i as i64 + di, j as i64 + dj);
                    if ii < 0 || jj < 0 || ii >= nr as i64 || jj >= ni as i64 {
                        continue;
                    }
                    if vals[idx(ii as usize, jj as usize)] < v {
                        is_min = false;
                    }
                }
            }
            if !is_min {
                continue;
            }
            if let Some(z) = newton(&f, pts[idx(i, j)], spacing) {
                let inside = z.re >= g.re.0 - spacing
                    && z.re <= g.re.1 + spacing
                    && z.im >= g.im.0 - spacing
                    && z.im <= g.im.1 + spacing;
                if inside && !out.iter().any(|&w| (w - z).norm() <= 1e-8 * (1.0 + z.norm())) {
                    out.push(z);
                }
            }
        }
    }
    out
}

fn newton<F: Fn(Complex64) -> Complex64>(f: &F, start: Complex64, spacing: f64) -> Option<Complex64> {
    let mut z = start;
    let scale = f(start).norm().max(f64::MIN_POSITIVE);
    for _ in 0..60 {
        let fz = f(z);
        if fz.norm() <= 1e-14 * scale.max(1.0) {
            return Some(z);
        }
        let h = 1e-6 * (1.0 + z.norm());
        let dz = (f(z + h) - f(z - h)) / (2.0 * h);
        if dz.norm() == 0.0 || !dz.is_finite() {
            return None;
        }
        let step = fz / dz;
        z -= step;
        if !z.is_finite() || (z - start).norm() > 4.0 * spacing {
            return None;
        }
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    let res = f(z).norm();
    (res <= 1e-10 * scale.max(1.0)).then_some(z)
}

/// Gram matrix of the Nevanlinna kernel at a point set.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelGram {
    pub n: usize,
    /// Row-major `n × n` entries.
    pub entries: Vec<Complex64>,
    pub min_eig: f64,
}

impl KernelGram {
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }
}

/// `G[i][j] = (m(μ_j) − conj m(μ_i)) / (μ_j − conj μ_i)` and its smallest
/// eigenvalue. Nonnegative for every Nevanlinna function.
pub fn kernel_gram<W: WeylFn + ?Sized>(m: &W, points: &[Complex64]) -> Result<KernelGram> {
    let n = points.len();
    for (i, z) in points.iter().enumerate() {
        if !z.is_finite() {
            return Err(Error::NonFinite("kernel point"));
        }
        if z.im == 0.0 {
            return Err(Error::RealPoint(i));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let d = points[j] - points[i].conj();
            if i != j && d.norm() <= 1e-14 * (1.0 + points[j].norm()) {
                return Err(Error::ConjugatePair(i, j));
            }
        }
    }
    let mv: Vec<Complex64> = points.iter().map(|&z| m.eval(z)).collect();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push((mv[j] - mv[i].conj()) / (points[j] - points[i].conj()));
        }
    }
    let min_eig = if n == 0 {
        0.0
    } else {
        let mat = DMatrix::from_row_slice(n, n, &entries);
        // symmetrise away rounding before the Hermitian solver
        let herm = (&mat + mat.adjoint()) * Complex64::new(0.5, 0.0);
        herm.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
    };
    Ok(KernelGram { n, entries, min_eig })
}

/// `det(m(μ) I − R)` for the matrix form of a relation.
pub fn det_matrix_form(m_value: Complex64, r: &CMat2) -> Complex64 {
    (CMat2::scalar(m_value) - *r).det()
}
