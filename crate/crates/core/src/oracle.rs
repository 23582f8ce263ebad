//! Finite-difference shooting oracle for the point-interaction model.
//!
//! Discretises `−f'' = r f` on `[−L, 0]` and `[0, L]` with `N` intervals
//! per side, imposes the interface condition built from `K`, and locates
//! negative eigenvalues as zeros of the 2×2 matching determinant. Nothing
//! here touches the Weyl function or the channel conditions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extensions::{build_k, ExtParams};
use crate::model::gamma_matrices;
use crate::roots::{grid, line_zeros_sampled, LineZeroOptions};
use crate::CMat2;

/// How the recursion is started at `x = ±L`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OuterBoundary {
    /// `f(±L) = 0`.
    Dirichlet,
    /// Seed the two outer nodes with `e^{−√|r| |x|}`.
    #[default]
    Decaying,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub l: f64,
    /// Intervals per side.
    pub n: usize,
    pub scan: (f64, f64),
    pub scan_step: f64,
    pub bisect_tol: f64,
    #[serde(default)]
    pub outer: OuterBoundary,
    /// Keep the sampled `(r, det)` series in the report.
    #[serde(default)]
    pub keep_trace: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            l: 20.0,
            n: 4000,
            scan: (-10.0, -1e-6),
            scan_step: 1e-3,
            bisect_tol: 1e-12,
            outer: OuterBoundary::Decaying,
            keep_trace: false,
        }
    }
}

impl OracleConfig {
    pub fn h(&self) -> f64 {
        self.l / self.n as f64
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::Config(s.to_string()));
        if !(self.l.is_finite() && self.l > 0.0) {
            return bad("L must be positive");
        }
        if self.n < 100 {
            return bad("N must be at least 100");
        }
        if self.h() >= 0.1 {
            return bad("grid step L/N must be below 0.1");
        }
        let (lo, hi) = self.scan;
        if !(lo.is_finite() && hi.is_finite() && lo < hi && hi < 0.0) {
            return Err(Error::BadInterval(lo, hi));
        }
        if !(self.scan_step.is_finite() && self.scan_step > 0.0) {
            return bad("scan step must be positive");
        }
        if !(self.bisect_tol.is_finite() && self.bisect_tol > 0.0) {
            return bad("bisection tolerance must be positive");
        }
        Ok(())
    }
}

/// `M_int = i(I+K)·G0 − (I−K)·G1`, acting on `(f(+0), f(−0), f'(+0), f'(−0))`.
pub fn interface_system(p: &ExtParams) -> [[Complex64; 4]; 2] {
    interface_system_for(&build_k(p))
}

pub fn interface_system_for(k: &CMat2) -> [[Complex64; 4]; 2] {
    let (g0, g1) = gamma_matrices();
    let id = CMat2::identity();
    let a = (id + *k) * Complex64::i();
    let b = id - *k;
    let mut m = [[Complex64::new(0.0, 0.0); 4]; 2];
    for (row, out) in m.iter_mut().enumerate() {
        for (col, entry) in out.iter_mut().enumerate() {
            *entry = (0..2).map(|s| a.get(row, s) * g0[s][col] - b.get(row, s) * g1[s][col]).sum();
        }
    }
    m
}

/// Value and outward derivative at the interface of the solution on
/// `[−L, 0]`, normalised so that `|φ(0)|² + |φ'(0)|² = 1`.
fn half_line_trace(r: f64, cfg: &OracleConfig) -> (f64, f64) {
    let h = cfg.h();
    let n = cfg.n;
    let c = 2.0 - h * h * r;
    let (mut prev, mut cur) = match cfg.outer {
        OuterBoundary::Dirichlet => (0.0, h),
        OuterBoundary::Decaying => (1.0, ((-r).sqrt() * h).exp()),
    };
    // keep the last three nodes x = −2h, −h, 0
    let mut before = prev;
    for _ in 1..n {
        let next = c * cur - prev;
        before = prev;
        prev = cur;
        cur = next;
        if cur.abs() > 1e200 {
            before *= 1e-200;
            prev *= 1e-200;
            cur *= 1e-200;
        }
    }
    let (f0, f1, f2) = (cur, prev, before);
    let df = (3.0 * f0 - 4.0 * f1 + f2) / (2.0 * h);
    let norm = f0.hypot(df);
    (f0 / norm, df / norm)
}

/// Matching determinant at `r < 0`.
///
/// The left solution is `a·φ(x)` and, by parity of the free equation, the
/// right one is `b·φ(−x)`, so the traces are
/// `(f(+0), f(−0), f'(+0), f'(−0)) = (bφ₀, aφ₀, −bφ₁, aφ₁)`.
pub fn shoot(r: f64, p: &ExtParams, cfg: &OracleConfig) -> Complex64 {
    shoot_with(r, &interface_system(p), cfg)
}

fn shoot_with(r: f64, m: &[[Complex64; 4]; 2], cfg: &OracleConfig) -> Complex64 {
    let (f0, f1) = half_line_trace(r, cfg);
    let col_a = [0.0, f0, 0.0, f1];
    let col_b = [f0, 0.0, -f1, 0.0];
    let apply = |row: usize, col: &[f64; 4]| (0..4).map(|k| m[row][k] * col[k]).sum::<Complex64>();
    apply(0, &col_a) * apply(1, &col_b) - apply(0, &col_b) * apply(1, &col_a)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MatchReport {
    /// Simple roots.
    pub roots: Vec<f64>,
    /// Roots where `|det|` touches zero without a sign change.
    pub degenerate: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub det_trace: Option<Vec<(f64, Complex64)>>,
}

impl MatchReport {
    /// All roots in ascending order, degenerate ones listed twice.
    pub fn with_multiplicity(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self.roots.clone();
        all.extend(self.degenerate.iter().flat_map(|&r| [r, r]));
        all.sort_by(f64::total_cmp);
        all
    }

    pub fn trace_csv(&self) -> Option<String> {
        let trace = self.det_trace.as_ref()?;
        let mut s = String::from("r,re_det,im_det\n");
        for (r, d) in trace {
            s.push_str(&format!("{r:e},{:e},{:e}\n", d.re, d.im));
        }
        Some(s)
    }
}

pub fn scan_spectrum(p: &ExtParams, cfg: &OracleConfig) -> Result<MatchReport> {
    cfg.validate()?;
    let m = interface_system(p);
    let f = |r: f64| shoot_with(r, &m, cfg);
    let xs = grid(cfg.scan.0, cfg.scan.1, cfg.scan_step);
    let gs: Vec<Complex64> = xs.iter().map(|&r| f(r)).collect();
    let opts = LineZeroOptions { tol: cfg.bisect_tol, ..Default::default() };
    let mut report = MatchReport::default();
    for z in line_zeros_sampled(f, &xs, &gs, opts) {
        if z.double {
            report.degenerate.push(z.x);
        } else {
            report.roots.push(z.x);
        }
    }
    if cfg.keep_trace {
        report.det_trace = Some(xs.into_iter().zip(gs).collect());
    }
    Ok(report)
}
