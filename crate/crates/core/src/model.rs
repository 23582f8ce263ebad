//! One-dimensional Laplacian with a point interaction at the origin.
//!
//! `S = −d²/dx²` on `W²₂(ℝ₋) ⊕ W²₂(ℝ₊)` with vanishing traces, `J` the
//! parity operator and `R` multiplication by `sign(x)`. The boundary maps
//! act on the even part `u` and odd part `v` of `f`:
//!
//! ```text
//! Γ0 f = (u(0), v(+0)),   Γ1 f = 2 (u'(+0), v'(0))
//! ```
//!
//! and the scalar Weyl function is `m(μ) = 2i√μ` with `Im √μ > 0`.
//! `A_0` is the Dirichlet decoupling with `σ(A_0) = [0, ∞)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extensions::{classify_with_tol, k_eigenvalues_with_tol, ExtParams, EXACT_TOL};
use crate::weyl::{Channel, ChannelCondition, Eigenvalue, Method, OpenInterval, SpectrumReport, WeylFn};

/// Square root on the branch `Im √μ ≥ 0`.
pub fn sqrt_upper(mu: Complex64) -> Complex64 {
    let tau = mu.sqrt();
    if tau.im < 0.0 {
        -tau
    } else {
        tau
    }
}

/// `m(μ) = 2i√μ` on the branch `Im √μ > 0`.
pub fn m_free(mu: Complex64) -> Complex64 {
    Complex64::new(0.0, 2.0) * sqrt_upper(mu)
}

/// Real boundary value `m(r) = −2√|r|` for `r < 0`.
pub fn m_free_real(r: f64) -> Result<f64> {
    if r < 0.0 {
        Ok(-2.0 * (-r).sqrt())
    } else {
        Err(Error::OutsideDomain(r))
    }
}

/// The point-interaction model as a [`WeylFn`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PointInteraction;

impl WeylFn for PointInteraction {
    fn eval(&self, mu: Complex64) -> Complex64 {
        m_free(mu)
    }

    fn real_domain(&self) -> Vec<OpenInterval> {
        vec![OpenInterval { lo: f64::NEG_INFINITY, hi: 0.0 }]
    }

    fn boundary_eval(&self, r: f64) -> Result<f64> {
        m_free_real(r)
    }

    /// Bound states satisfy `|r| = (a / 2b)²`, so the default interval
    /// reaches well past the deepest one.
    fn default_scan(&self, channels: &[ChannelCondition]) -> Option<(f64, f64)> {
        let deepest = channels
            .iter()
            .filter(|c| c.b.abs() > 1e-300)
            .map(|c| (c.a / (2.0 * c.b)).powi(2))
            .filter(|v| v.is_finite())
            .fold(0.0, f64::max);
        Some((-(100f64.max(2.0 * deepest)), -1e-12))
    }

    fn preimage(&self, w: Complex64) -> Option<Vec<Complex64>> {
        // 2iτ = w with Im τ > 0  ⇔  τ = −iw/2 and Re w < 0
        let tau = Complex64::new(0.0, -0.5) * w;
        Some(if tau.im > 0.0 { vec![tau * tau] } else { Vec::new() })
    }
}

/// Traces `(f(+0), f(−0), f'(+0), f'(−0))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryData {
    pub f_plus: Complex64,
    pub f_minus: Complex64,
    pub df_plus: Complex64,
    pub df_minus: Complex64,
}

impl BoundaryData {
    pub fn as_array(&self) -> [Complex64; 4] {
        [self.f_plus, self.f_minus, self.df_plus, self.df_minus]
    }
}

/// `Γ0` and `Γ1` as constant 2×4 matrices acting on
/// `(f(+0), f(−0), f'(+0), f'(−0))`.
pub fn gamma_matrices() -> ([[f64; 4]; 2], [[f64; 4]; 2]) {
    let g0 = [[0.5, 0.5, 0.0, 0.0], [0.5, -0.5, 0.0, 0.0]];
    let g1 = [[0.0, 0.0, 1.0, -1.0], [0.0, 0.0, 1.0, 1.0]];
    (g0, g1)
}

/// `(Γ0 f, Γ1 f)`.
pub fn gamma_maps(bd: &BoundaryData) -> ([Complex64; 2], [Complex64; 2]) {
    let (g0, g1) = gamma_matrices();
    let x = bd.as_array();
    let apply = |g: &[[f64; 4]; 2]| {
        [0, 1].map(|row| (0..4).map(|k| x[k] * g[row][k]).sum::<Complex64>())
    };
    (apply(&g0), apply(&g1))
}

/// Closed-form negative eigenvalues of a stable extension.
///
/// The plus channel gives `r = −tan²((ξ+t)/2)/4` when `tan((ξ+t)/2) > 0`,
/// the minus channel `r = −cot²((ξ−t)/2)/4` when `cot((ξ−t)/2) < 0`.
/// Coincident roots (the `Υ` case) are reported once with multiplicity 2.
pub fn closed_form_eigenvalues(p: &ExtParams) -> Result<SpectrumReport> {
    closed_form_eigenvalues_with_tol(p, EXACT_TOL)
}

pub fn closed_form_eigenvalues_with_tol(p: &ExtParams, tol: f64) -> Result<SpectrumReport> {
    if !classify_with_tol(p, tol).is_stable {
        return Err(Error::NotStable { zeta: p.zeta, phi: p.phi });
    }
    let t = k_eigenvalues_with_tol(p, tol).t.expect("stable parameters carry t");
    let half_plus = 0.5 * (p.xi + t);
    let half_minus = 0.5 * (p.xi - t);

    let mut roots: Vec<(f64, Channel, f64)> = Vec::new();
    // (sin, cos) of the half angle; tan = s/c, cot = c/s
    let (s, c) = half_plus.sin_cos();
    if c.abs() > 1e-15 && s / c > 0.0 {
        let tan = s / c;
        let r = -0.25 * tan * tan;
        roots.push((r, Channel::Plus, (s + c * m_free_real(r)?).abs()));
    }
    let (s, c) = half_minus.sin_cos();
    if s.abs() > 1e-15 && c / s < 0.0 {
        let cot = c / s;
        let r = -0.25 * cot * cot;
        roots.push((r, Channel::Minus, (c - s * m_free_real(r)?).abs()));
    }

    roots.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut eigenvalues: Vec<Eigenvalue> = Vec::new();
    for (r, channel, residual) in roots {
        if let Some(prev) = eigenvalues.last_mut() {
            if (prev.r - r).abs() <= 1e-10 * r.abs().max(1e-300) {
                prev.mult = 2;
                prev.channel = Channel::Both;
                prev.residual = prev.residual.max(residual);
                continue;
            }
        }
        eigenvalues.push(Eigenvalue { r, mult: 1, channel, residual });
    }
    Ok(SpectrumReport { eigenvalues, interval: (f64::NEG_INFINITY, 0.0), method: Method::ClosedForm })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::{build_k, cayley_to_relation};
    use crate::weyl::{
        channel_conditions, det_condition, det_matrix_form, det_real_zeros, find_discrete_spectrum, kernel_gram,
        nonreal_spectrum_probe, grid_search, ComplexGrid, SpectrumOptions,
    };
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

    fn p(z: f64, ph: f64, x: f64, o: f64) -> ExtParams {
        ExtParams::new(z, ph, x, o).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const R_PLUS: f64 = -0.042893218813452475; // −tan²(π/8)/4
    const R_MINUS: f64 = -1.4571067811865475; // −cot²(π/8)/4

    #[test]
    fn frozen_closed_form_constants() {
        assert!((R_PLUS + FRAC_PI_8.tan().powi(2) / 4.0).abs() < 1e-17);
        assert!((R_MINUS + (1.0 / FRAC_PI_8.tan()).powi(2) / 4.0).abs() < 1e-15);
    }

    #[test]
    fn m_free_examples() {
        assert!((m_free(c(-1.0, 0.0)) - c(-2.0, 0.0)).norm() < 1e-15);
        assert!((m_free(c(-1.0, -0.0)) - c(-2.0, 0.0)).norm() < 1e-15);
        let s = 2f64.sqrt();
        assert!((m_free(c(0.0, 1.0)) - c(-s, s)).norm() < 1e-15);
        assert!((m_free_real(-0.25).unwrap() + 1.0).abs() < 1e-15);
        assert!(matches!(m_free_real(0.0), Err(Error::OutsideDomain(_))));
        assert!(PointInteraction.boundary_eval(3.0).is_err());
    }

    #[test]
    fn gamma_examples() {
        let (cc, d) = (c(1.5, 0.2), c(-0.7, 0.0));
        let even = BoundaryData { f_plus: cc, f_minus: cc, df_plus: d, df_minus: -d };
        let (g0, g1) = gamma_maps(&even);
        assert_eq!(g0, [cc, c(0.0, 0.0)]);
        assert_eq!(g1, [2.0 * d, c(0.0, 0.0)]);

        let odd = BoundaryData { f_plus: cc, f_minus: -cc, df_plus: d, df_minus: d };
        let (g0, g1) = gamma_maps(&odd);
        assert_eq!(g0, [c(0.0, 0.0), cc]);
        assert_eq!(g1, [c(0.0, 0.0), 2.0 * d]);

        let dirichlet = BoundaryData { f_plus: c(0.0, 0.0), f_minus: c(0.0, 0.0), df_plus: d, df_minus: cc };
        assert_eq!(gamma_maps(&dirichlet).0, [c(0.0, 0.0); 2]);
    }

    #[test]
    fn channel_examples() {
        let (pl, mi) = channel_conditions(&p(0.0, FRAC_PI_2, 0.0, 1.3)).unwrap();
        assert!(pl.coincides(&mi, 1e-12));
        assert!((pl.a / pl.b - 1.0).abs() < 1e-15);

        let (pl, mi) = channel_conditions(&p(0.0, FRAC_PI_4, 0.0, 0.0)).unwrap();
        assert!((pl.a / pl.b - FRAC_PI_8.tan()).abs() < 1e-15);
        // cot(−π/8) − m = 0  ⇔  m = −a/b
        assert!((-mi.a / mi.b + 1.0 / FRAC_PI_8.tan()).abs() < 1e-14);
        assert_eq!(pl.channel, Channel::Plus);
        assert_eq!(mi.channel, Channel::Minus);

        let (pl, mi) = channel_conditions(&p(0.0, FRAC_PI_2, FRAC_PI_2, 0.0)).unwrap();
        assert!(pl.b.abs() < 1e-15 && (pl.a - 1.0).abs() < 1e-15);
        assert!(mi.b.abs() < 1e-15);

        assert!(channel_conditions(&p(1.0, PI / 3.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let rep = closed_form_eigenvalues(&p(0.0, FRAC_PI_2, 0.0, 0.0)).unwrap();
        assert_eq!(rep.eigenvalues.len(), 1);
        assert!((rep.eigenvalues[0].r + 0.25).abs() < 1e-15);
        assert_eq!(rep.eigenvalues[0].mult, 2);
        assert_eq!(rep.eigenvalues[0].channel, Channel::Both);

        let rep = closed_form_eigenvalues(&p(0.0, FRAC_PI_4, 0.0, 0.0)).unwrap();
        let v = rep.values();
        assert!((v[0] - R_MINUS).abs() < 1e-14 && (v[1] - R_PLUS).abs() < 1e-15);
        assert_eq!(rep.eigenvalues[0].channel, Channel::Minus);
        assert_eq!(rep.eigenvalues[1].channel, Channel::Plus);

        assert!(closed_form_eigenvalues(&p(0.0, FRAC_PI_2, FRAC_PI_2, 0.0)).unwrap().eigenvalues.is_empty());
        assert!(closed_form_eigenvalues(&p(1.0, PI / 3.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn bisection_examples() {
        let opts = SpectrumOptions { interval: Some((-10.0, 0.0)), ..Default::default() };
        let rep = find_discrete_spectrum(&PointInteraction, &p(0.0, FRAC_PI_4, 0.0, 0.0), &opts).unwrap();
        let v = rep.values();
        assert_eq!(v.len(), 2);
        assert!((v[0] - R_MINUS).abs() < 1e-12 && (v[1] - R_PLUS).abs() < 1e-12);
        assert!(rep.eigenvalues.iter().all(|e| e.residual < 1e-10));

        let rep = find_discrete_spectrum(&PointInteraction, &p(0.0, FRAC_PI_2, 0.0, 0.0), &opts).unwrap();
        assert_eq!(rep.values_with_multiplicity().len(), 2);
        assert!((rep.eigenvalues[0].r + 0.25).abs() < 1e-12);

        let rep = find_discrete_spectrum(&PointInteraction, &p(0.0, FRAC_PI_2, FRAC_PI_2, 0.0), &opts).unwrap();
        assert!(rep.eigenvalues.is_empty());

        let bad = SpectrumOptions { interval: Some((-1.0, 2.0)), ..Default::default() };
        assert!(matches!(
            find_discrete_spectrum(&PointInteraction, &p(0.0, FRAC_PI_4, 0.0, 0.0), &bad),
            Err(Error::BadInterval(..))
        ));
        assert!(matches!(
            find_discrete_spectrum(&PointInteraction, &p(1.0, PI / 3.0, 0.0, 0.0), &opts),
            Err(Error::NotStable { .. })
        ));
    }

    #[test]
    fn default_interval_is_derived_from_channels() {
        // deep bound state: a/2b = 30 ⇒ r = −900
        let q = p(0.0, 0.2, 0.0, 0.0);
        let rep = find_discrete_spectrum(&PointInteraction, &q, &SpectrumOptions::default()).unwrap();
        let closed = closed_form_eigenvalues(&q).unwrap();
        assert_eq!(rep.values().len(), closed.values().len());
        for (a, b) in rep.values().iter().zip(closed.values()) {
            assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0));
        }
    }

    #[test]
    fn det_condition_examples() {
        let rel = cayley_to_relation(&build_k(&p(0.0, FRAC_PI_4, 0.0, 0.0)));
        let z = det_condition(&PointInteraction, &rel, c(R_PLUS, 0.0));
        assert!(z.norm() < 1e-8);
        let r = rel.matrix.unwrap();
        assert!(det_matrix_form(m_free(c(R_PLUS, 0.0)), &r).norm() < 1e-8);

        // K = −I: R = 0, det(mI) = m², zero where m vanishes
        let rel0 = cayley_to_relation(&(-crate::CMat2::identity()));
        assert!(det_condition(&PointInteraction, &rel0, c(0.0, 0.0)).norm() < 1e-15);

        assert!(det_condition(&PointInteraction, &rel, c(1.0, 1.0)).norm() > 0.1);
    }

    #[test]
    fn det_route_matches_channel_route() {
        let q = p(0.2, 0.5, 1.1, 0.4);
        let rel = cayley_to_relation(&build_k(&q));
        let zeros = det_real_zeros(&PointInteraction, &rel, (-10.0, 0.0), 1e-4).unwrap();
        let opts = SpectrumOptions { interval: Some((-10.0, 0.0)), ..Default::default() };
        let rep = find_discrete_spectrum(&PointInteraction, &q, &opts).unwrap();
        assert_eq!(zeros.len(), rep.eigenvalues.len(), "{zeros:?} vs {rep:?}");
        for (z, e) in zeros.iter().zip(&rep.eigenvalues) {
            assert!((z.r - e.r).abs() < 1e-8);
        }

        let rel = cayley_to_relation(&build_k(&p(0.0, FRAC_PI_2, 0.0, 0.0)));
        let zeros = det_real_zeros(&PointInteraction, &rel, (-10.0, 0.0), 1e-4).unwrap();
        assert_eq!(zeros.len(), 1);
        assert_eq!(zeros[0].mult, 2);
        assert!((zeros[0].r + 0.25).abs() < 1e-7);
    }

    #[test]
    fn nonreal_probe_examples() {
        let grid = ComplexGrid { re: (-3.0, 3.0), im: (-3.0, 3.0), n_re: 61, n_im: 61 };
        let q = p(1.0, PI / 3.0, 0.0, 0.0);
        let roots = nonreal_spectrum_probe(&PointInteraction, &q, &grid);
        assert_eq!(roots.len(), 2, "{roots:?}");
        let rel = cayley_to_relation(&build_k(&q));
        for z in &roots {
            assert!(z.im.abs() > 1e-6);
            assert!(det_condition(&PointInteraction, &rel, *z).norm() < 1e-10);
        }
        assert!((roots[0] - roots[1].conj()).norm() < 1e-12);

        // the grid search (no closed-form inverse) lands on the same points
        let searched = grid_search(&PointInteraction, &rel, &grid);
        let off: Vec<_> = searched.iter().filter(|z| z.im.abs() > 1e-6).collect();
        assert_eq!(off.len(), 2, "{searched:?}");
        for z in off {
            assert!(roots.iter().any(|w| (w - z).norm() < 1e-8));
        }

        assert!(nonreal_spectrum_probe(&PointInteraction, &p(0.0, FRAC_PI_4, 0.0, 0.0), &grid).is_empty());
        assert!(nonreal_spectrum_probe(&PointInteraction, &p(0.0, FRAC_PI_2, 0.0, 0.0), &grid).is_empty());
    }

    #[test]
    fn kernel_examples() {
        let g = kernel_gram(&PointInteraction, &[c(0.0, 1.0)]).unwrap();
        assert!((g.get(0, 0).re - 2f64.sqrt()).abs() < 1e-14);
        assert!(g.min_eig > 0.0);

        let g = kernel_gram(&PointInteraction, &[c(0.0, 1.0), c(0.0, 2.0)]).unwrap();
        assert!(g.min_eig >= -1e-10);
        assert!((g.get(0, 1) - g.get(1, 0).conj()).norm() < 1e-15);

        assert!(matches!(
            kernel_gram(&PointInteraction, &[c(0.5, 1.0), c(0.5, -1.0)]),
            Err(Error::ConjugatePair(0, 1))
        ));
        assert!(matches!(kernel_gram(&PointInteraction, &[c(0.5, 0.0)]), Err(Error::RealPoint(0))));
    }

    #[test]
    fn constant_function_has_zero_kernel() {
        struct Constant;
        impl WeylFn for Constant {
            fn eval(&self, _mu: Complex64) -> Complex64 {
                c(3.0, 0.0)
            }
            fn real_domain(&self) -> Vec<OpenInterval> {
                vec![OpenInterval { lo: f64::NEG_INFINITY, hi: f64::INFINITY }]
            }
        }
        let g = kernel_gram(&Constant, &[c(0.0, 1.0), c(1.0, 2.0)]).unwrap();
        assert!(g.entries.iter().all(|z| z.norm() == 0.0));
    }
}
