//! Scalar root location on a real interval.
//!
//! Two flavours are needed: sign-change bracketing for real-valued
//! functions, and zeros of complex-valued functions restricted to the real
//! line, where a zero is found as a local minimum of the modulus and then
//! confirmed by a sign change of the projection onto the local direction
//! of travel (simple zero) or by the modulus collapsing without one
//! (double zero).

use num_complex::Complex64;

/// Bisection on a bracket with `f(lo)` and `f(hi)` of opposite sign.
///
/// Stops when the bracket is narrower than `tol` or cannot be split
/// further in floating point; returns the endpoint with smaller `|f|`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = f(lo);
    let mut fhi = f(hi);
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 {
        return hi;
    }
    for _ in 0..200 {
        if (hi - lo).abs() <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    if flo.abs() <= fhi.abs() {
        lo
    } else {
        hi
    }
}

/// Sample points `lo, lo + step, …, hi` (the last one clamped to `hi`).
pub fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).ceil().max(1.0) as usize;
    let mut xs: Vec<f64> = (0..n).map(|k| lo + k as f64 * step).collect();
    xs.push(hi);
    xs
}

/// All sign changes of a real function over the sampled grid, each
/// refined by bisection. Exact zeros at grid points are kept once.
pub fn sign_change_roots<F: Fn(f64) -> f64>(f: F, xs: &[f64], tol: f64) -> Vec<f64> {
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut out = Vec::new();
    for k in 0..xs.len() {
        if ys[k] == 0.0 {
            out.push(xs[k]);
            continue;
        }
        if k + 1 < xs.len() && ys[k + 1] != 0.0 && (ys[k] < 0.0) != (ys[k + 1] < 0.0) {
            out.push(bisect(&f, xs[k], xs[k + 1], tol));
        }
    }
    out
}

/// A zero of a complex function on the real line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineZero {
    pub x: f64,
    /// Modulus collapsed without a sign change: a double (or unresolved
    /// pair of) zero(s).
    pub double: bool,
    /// `|f(x)|` relative to the modulus at the bracket ends.
    pub relative_residual: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct LineZeroOptions {
    pub tol: f64,
    /// Accept a candidate when `|f(x*)|` is below this fraction of the
    /// modulus at the bracket ends.
    pub accept: f64,
}

impl Default for LineZeroOptions {
    fn default() -> Self {
        LineZeroOptions { tol: 1e-12, accept: 1e-6 }
    }
}

/// Golden-section minimisation of `g` on `[a, b]`.
pub fn golden_min<G: Fn(f64) -> f64>(g: G, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut gc = g(c);
    let mut gd = g(d);
    for _ in 0..300 {
        if (b - a).abs() <= tol {
            break;
        }
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    if gc < gd {
        c
    } else {
        d
    }
}

/// Zeros of `f` on the sampled grid `xs` (ascending).
pub fn line_zeros<F: Fn(f64) -> Complex64>(f: F, xs: &[f64], opts: LineZeroOptions) -> Vec<LineZero> {
    let gs: Vec<Complex64> = xs.iter().map(|&x| f(x)).collect();
    line_zeros_sampled(f, xs, &gs, opts)
}

/// As [`line_zeros`], with the samples `gs = f(xs)` already computed.
pub fn line_zeros_sampled<F: Fn(f64) -> Complex64>(
    f: F,
    xs: &[f64],
    gs: &[Complex64],
    opts: LineZeroOptions,
) -> Vec<LineZero> {
    let n = xs.len();
    let mut out: Vec<LineZero> = Vec::new();
    if n < 2 {
        return out;
    }
    let a: Vec<f64> = gs.iter().map(|g| g.norm()).collect();
    for k in 0..n {
        if a[k] == 0.0 {
            let (lo, hi) = (xs[k.saturating_sub(1)], xs[(k + 1).min(n - 1)]);
            let double = is_even(&f, xs[k], lo, hi);
            push_unique(&mut out, LineZero { x: xs[k], double, relative_residual: 0.0 }, opts.tol);
            continue;
        }
        let left_ok = k == 0 || a[k] < a[k - 1];
        let right_ok = k + 1 == n || a[k] <= a[k + 1];
        if !(left_ok && right_ok) {
            continue;
        }
        let lo = k.saturating_sub(1);
        let hi = (k + 1).min(n - 1);
        if let Some(z) = refine(&f, xs[lo], xs[hi], gs[lo], gs[hi], opts) {
            push_unique(&mut out, z, opts.tol.max(1e-9));
        }
    }
    out.sort_by(|p, q| p.x.total_cmp(&q.x));
    out
}

fn push_unique(out: &mut Vec<LineZero>, z: LineZero, sep: f64) {
    if let Some(prev) = out.iter_mut().find(|p| (p.x - z.x).abs() <= sep) {
        prev.double |= z.double;
        return;
    }
    out.push(z);
}

fn refine<F: Fn(f64) -> Complex64>(
    f: &F,
    lo: f64,
    hi: f64,
    glo: Complex64,
    ghi: Complex64,
    opts: LineZeroOptions,
) -> Option<LineZero> {
    let scale = glo.norm().max(ghi.norm());
    if scale == 0.0 {
        return None;
    }
    let d = ghi - glo;
    if d.norm() > 0.0 {
        let u = d / d.norm();
        let proj = |x: f64| (f(x) * u.conj()).re;
        let (plo, phi) = ((glo * u.conj()).re, (ghi * u.conj()).re);
        if (plo < 0.0) != (phi < 0.0) {
            let x = bisect(proj, lo, hi, opts.tol);
            let rel = f(x).norm() / scale;
            if rel <= opts.accept {
                return Some(LineZero { x, double: is_even(f, x, lo, hi), relative_residual: rel });
            }
        }
    }
    let x = golden_min(|x| f(x).norm(), lo, hi, opts.tol);
    let rel = f(x).norm() / scale;
    (rel <= opts.accept).then_some(LineZero { x, double: is_even(f, x, lo, hi), relative_residual: rel })
}

/// A simple zero flips the direction of `f` across it, an even-order one
/// does not.
fn is_even<F: Fn(f64) -> Complex64>(f: &F, x: f64, lo: f64, hi: f64) -> bool {
    let d = 0.25 * (hi - lo);
    (f(x + d) * f(x - d).conj()).re > 0.0
}
