//! Self-contained verification suites.
//!
//! Every check draws from a seeded generator, so a run is reproducible.
//! Expected values are computed here from elementary formulas, not taken
//! from the routines under test.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::extensions::{
    build_k, cayley_to_relation, classify, csym_of_extension, k_eigenvalues, solve_chi, ExtParams,
};
use crate::krein::{
    build_c, build_r_omega, c_from_transition, cayley_theta, factor_exponent, fundamental_symmetry,
    limit_transition, transition_from_c, transition_of, verify_csym, CsymParams,
};
use crate::model::{closed_form_eigenvalues, gamma_matrices, m_free, PointInteraction};
use crate::oracle::{scan_spectrum, OracleConfig};
use crate::weyl::{
    det_condition, det_real_zeros, find_discrete_spectrum, grid_search, kernel_gram, nonreal_spectrum_probe,
    ComplexGrid, SpectrumOptions, SpectrumReport,
};
use crate::CMat2;

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub id: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: f64,
    pub budget_ms: Option<f64>,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        let budget = match self.budget_ms {
            Some(b) => format!(" (budget {b:.0} ms)"),
            None => String::new(),
        };
        format!(
            "[{}] {} {}: {} [{:.1} ms{}]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed_ms,
            budget
        )
    }
}

fn timed(id: &str, name: &str, budget: Option<Duration>, body: impl FnOnce() -> (bool, String)) -> CheckOutcome {
    let start = Instant::now();
    let (ok, mut detail) = body();
    let elapsed = start.elapsed();
    let in_time = budget.is_none_or(|b| elapsed <= b);
    if !in_time {
        detail.push_str("; over time budget");
    }
    CheckOutcome {
        id: id.to_string(),
        name: name.to_string(),
        passed: ok && in_time,
        detail,
        elapsed_ms: elapsed.as_secs_f64() * 1e3,
        budget_ms: budget.map(|b| b.as_secs_f64() * 1e3),
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn random_ext(rng: &mut StdRng, zeta_max: f64) -> ExtParams {
    ExtParams::new(
        rng.random_range(-zeta_max..zeta_max),
        rng.random_range(0.0..PI),
        rng.random_range(-PI..PI),
        rng.random_range(0.0..2.0 * PI),
    )
    .expect("finite draw")
}

fn random_stable(rng: &mut StdRng) -> ExtParams {
    loop {
        let p = random_ext(rng, 2.0);
        if classify(&p).is_stable {
            return p;
        }
    }
}

fn random_unstable(rng: &mut StdRng) -> ExtParams {
    loop {
        let p = random_ext(rng, 2.0);
        if !classify(&p).is_stable && (p.phi - FRAC_PI_2).abs() > 1e-3 {
            return p;
        }
    }
}

/// Expected negative eigenvalues for `ζ = 0` (so `t = φ`, and the roots
/// are `−tan²/4` and `−cot²/4` of the half angles), multiplicity expanded.
fn expected_roots_self_adjoint(phi: f64, xi: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let tp = (0.5 * (xi + phi)).tan();
    if tp > 0.0 && tp.is_finite() {
        out.push(-0.25 * tp * tp);
    }
    let tm = (0.5 * (xi - phi)).tan();
    if tm < 0.0 {
        out.push(-0.25 / (tm * tm));
    }
    out.sort_by(f64::total_cmp);
    out
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn algebraic_certificates() -> CheckOutcome {
    timed("1", "algebraic certificates", secs(5), || {
        let mut rng = StdRng::seed_from_u64(1);
        let j = fundamental_symmetry();
        let id = CMat2::identity();
        let mut worst = [0.0f64; 6];
        let mut min_pos = f64::INFINITY;
        for _ in 0..1000 {
            let c = build_c(CsymParams::new(rng.random_range(-5.0..5.0), rng.random_range(0.0..2.0 * PI)).unwrap());
            let omega = rng.random_range(0.0..2.0 * PI);
            worst[0] = worst[0].max((c * c - id).norm2() / c.norm2().powi(2));
            let g = j * c;
            let (lo, _) = g.hermitian_eigenvalues();
            min_pos = min_pos.min(lo);
            worst[1] = worst[1].max(g.hermitian_defect() / g.norm2());
            worst[2] = worst[2].max(j.anticommutator(&build_r_omega(omega)).norm2());

            let p = random_ext(&mut rng, 3.0);
            let k = build_k(&p);
            let scale = k.norm2().powi(2);
            worst[3] = worst[3].max((k.adjoint() * j * k - j).norm2() / scale);
            let det = Complex64::from_polar(-1.0, -2.0 * p.xi);
            worst[4] = worst[4].max((k.det() - det).norm() / scale);
            let flipped = build_k(&ExtParams::new(-p.zeta, p.phi, p.xi, p.omega).unwrap());
            worst[5] = worst[5].max((j * k * j - flipped).norm2() / scale);
        }
        let ok = worst.iter().all(|&w| w < 1e-10) && min_pos > 0.0;
        (
            ok,
            format!(
                "max residuals C²=I {:.1e}, JC hermitian {:.1e}, anticommutator {:.1e}, K*JK=J {:.1e}, det {:.1e}, σ3 flip {:.1e}; min eig JC {:.2e}",
                worst[0], worst[1], worst[2], worst[3], worst[4], worst[5], min_pos
            ),
        )
    })
}

pub fn stability_dichotomy() -> CheckOutcome {
    timed("2", "stability dichotomy", secs(5), || {
        let mut disagreements = 0;
        let mut upsilon_points = 0;
        for i in 0..80 {
            let zeta = -2.0 + 4.0 * i as f64 / 80.0;
            for jx in 0..80 {
                let phi = PI * jx as f64 / 80.0;
                let p = ExtParams::new(zeta, phi, 0.3, 1.1).unwrap();
                let cls = classify(&p);
                upsilon_points += cls.in_upsilon as usize;
                let e = k_eigenvalues(&p);
                let unimodular = (e.k_plus.norm() - 1.0).abs() < 1e-8 && (e.k_minus.norm() - 1.0).abs() < 1e-8;
                disagreements += (unimodular != cls.is_stable) as usize;
            }
        }
        (
            disagreements == 0 && upsilon_points > 0,
            format!("{disagreements} disagreements over 6400 points ({upsilon_points} in Υ)"),
        )
    })
}

/// Smallest `‖[K, C_{χ,ω}]‖` over a dense `χ` scan, refined locally.
fn min_commutator(k: &CMat2, omega: f64) -> f64 {
    let res = |chi: f64| k.commutator(&build_c(CsymParams { chi, omega })).norm2();
    let (lo, hi, step) = (-12.0, 12.0, 2e-3);
    let n = ((hi - lo) / step) as usize;
    let (mut best_chi, mut best) = (lo, f64::INFINITY);
    for s in 0..=n {
        let chi = lo + s as f64 * step;
        let r = res(chi);
        if r < best {
            best = r;
            best_chi = chi;
        }
    }
    let refined = crate::roots::golden_min(res, best_chi - step, best_chi + step, 1e-13);
    best.min(res(refined))
}

pub fn commutant() -> CheckOutcome {
    timed("3", "commutant", None, || {
        let mut rng = StdRng::seed_from_u64(3);
        let mut worst_stable = 0.0f64;
        for _ in 0..200 {
            let p = random_stable(&mut rng);
            let k = build_k(&p);
            let c = csym_of_extension(&p).unwrap();
            // recompute χ from the closed form and compare the two routes
            let chi = solve_chi(p.zeta, p.phi).unwrap_or(0.0);
            let c2 = if classify(&p).in_upsilon { fundamental_symmetry() } else { build_c(CsymParams::new(chi, p.omega).unwrap()) };
            worst_stable = worst_stable.max(k.commutator(&c).norm2()).max((c - c2).norm2());
        }
        let mut best_unstable = f64::INFINITY;
        for _ in 0..200 {
            let p = random_unstable(&mut rng);
            best_unstable = best_unstable.min(min_commutator(&build_k(&p), p.omega));
        }
        (
            worst_stable < 1e-10 && best_unstable >= 1e-6,
            format!("stable max ‖[K,C]‖ {worst_stable:.1e}; unstable min over χ scan {best_unstable:.3e}"),
        )
    })
}

pub fn closed_form_model() -> CheckOutcome {
    timed("4", "closed-form model eigenvalues", secs(1), || {
        let t = FRAC_PI_8.tan();
        let cases = [
            (ExtParams::new(0.0, FRAC_PI_4, 0.0, 0.0).unwrap(), vec![-0.25 / (t * t), -0.25 * t * t]),
            (ExtParams::new(0.0, FRAC_PI_2, 0.0, 0.0).unwrap(), vec![-0.25, -0.25]),
            (ExtParams::new(0.0, FRAC_PI_2, FRAC_PI_2, 0.0).unwrap(), vec![]),
        ];
        let mut ok = true;
        let mut worst_exp = 0.0f64;
        let mut worst_agree = 0.0f64;
        let mut shown = Vec::new();
        for (p, expect) in &cases {
            let closed = closed_form_eigenvalues(p).unwrap();
            let opts = SpectrumOptions { interval: Some((-10.0, 0.0)), ..Default::default() };
            let solved = find_discrete_spectrum(&PointInteraction, p, &opts).unwrap();
            let cv = closed.values_with_multiplicity();
            worst_exp = worst_exp.max(max_abs_diff(&cv, expect));
            worst_agree = worst_agree.max(max_abs_diff(&cv, &solved.values_with_multiplicity()));
            shown.push(format!("{:?}", cv.iter().map(|r| format!("{r:.7}")).collect::<Vec<_>>()));
        }
        // spot values as printed to 7 decimals
        let printed = [(-1.4571068, -0.25 / (t * t)), (-0.0428932, -0.25 * t * t)];
        ok &= printed.iter().all(|(a, b)| (a - b).abs() < 5e-8);
        ok &= worst_exp < 1e-12 && worst_agree < 1e-10;
        (ok, format!("{}; closed vs expected {worst_exp:.1e}, closed vs solver {worst_agree:.1e}", shown.join(" ")))
    })
}

pub fn oracle_agreement() -> CheckOutcome {
    timed("5", "finite-difference oracle", secs(30), || {
        let mut ok = true;
        let mut worst = 0.0f64;
        let t = FRAC_PI_8.tan();
        let cases = [
            (ExtParams::new(0.0, FRAC_PI_4, 0.0, 0.0).unwrap(), vec![-0.25 / (t * t), -0.25 * t * t]),
            (ExtParams::new(0.0, FRAC_PI_2, 0.0, 0.0).unwrap(), vec![-0.25, -0.25]),
            (ExtParams::new(0.0, FRAC_PI_2, FRAC_PI_2, 0.0).unwrap(), vec![]),
        ];
        let cfg = OracleConfig::default();
        for (p, expect) in &cases {
            let found = scan_spectrum(p, &cfg).unwrap().with_multiplicity();
            if found.len() != expect.len() {
                ok = false;
                worst = f64::INFINITY;
                continue;
            }
            for (r, e) in found.iter().zip(expect) {
                worst = worst.max(((r - e) / e).abs());
            }
        }
        ok &= worst < 1e-3;

        let p = &cases[0].0;
        let errs: Vec<Vec<f64>> = [1000, 2000, 4000]
            .iter()
            .map(|&n| {
                let found = scan_spectrum(p, &OracleConfig { n, ..cfg.clone() }).unwrap().roots;
                if found.len() != 2 {
                    return vec![f64::NAN; 2];
                }
                found.iter().zip(&cases[0].1).map(|(r, e)| (r - e).abs()).collect()
            })
            .collect();
        let mut ratios = Vec::new();
        for root in 0..2 {
            for w in errs.windows(2) {
                ratios.push(w[0][root] / w[1][root]);
            }
        }
        ok &= ratios.iter().all(|r| (3.0..=5.0).contains(r));
        let ratio_text: Vec<String> = ratios.iter().map(|r| format!("{r:.3}")).collect();
        (ok, format!("max relative error {worst:.2e}; convergence ratios [{}]", ratio_text.join(", ")))
    })
}

pub fn reality_and_nonreality() -> CheckOutcome {
    timed("6", "reality and nonreality", secs(10), || {
        let mut rng = StdRng::seed_from_u64(6);
        let grid = ComplexGrid { re: (-5.0, 5.0), im: (0.05, 5.0), n_re: 40, n_im: 40 };
        let pts = grid.points();
        let mut min_det = f64::INFINITY;
        for _ in 0..20 {
            let p = random_stable(&mut rng);
            let rel = cayley_to_relation(&build_k(&p));
            for &mu in &pts {
                min_det = min_det.min(det_condition(&PointInteraction, &rel, mu).norm());
            }
        }

        let p = ExtParams::new(1.0, PI / 3.0, 0.0, 0.0).unwrap();
        let rel = cayley_to_relation(&build_k(&p));
        // μ = −w²/4 for every relation eigenvalue w with Re w < 0
        let mut expected: Vec<Complex64> = rel
            .eigenvalues()
            .iter()
            .flatten()
            .filter(|w| w.re < 0.0)
            .map(|w| -0.25 * w * w)
            .collect();
        expected.sort_by(|a, b| a.im.total_cmp(&b.im));
        let probe_grid = ComplexGrid { re: (-4.0, 4.0), im: (-4.0, 4.0), n_re: 81, n_im: 81 };
        let mut found = nonreal_spectrum_probe(&PointInteraction, &p, &probe_grid);
        found.sort_by(|a, b| a.im.total_cmp(&b.im));
        let searched = grid_search(&PointInteraction, &rel, &probe_grid);
        let mut ok = min_det > 0.0 && !expected.is_empty() && found.len() == expected.len();
        let mut worst = 0.0f64;
        for (z, e) in found.iter().zip(&expected) {
            worst = worst.max((z - e).norm());
            ok &= z.im.abs() > 1e-6;
            ok &= searched.iter().any(|s| (s - z).norm() < 1e-8);
        }
        ok &= worst < 1e-10;
        let text: Vec<String> = found.iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
        (ok, format!("stable min |det| on ℂ₊ grid {min_det:.3e}; unstable probe [{}], deviation {worst:.1e}", text.join(", ")))
    })
}

pub fn omega_invariance() -> CheckOutcome {
    timed("7", "ω-invariance", None, || {
        let bases = [
            ExtParams::new(0.0, FRAC_PI_4, 0.0, 0.0).unwrap(),
            ExtParams::new(0.2, 0.5, 1.1, 0.0).unwrap(),
            ExtParams::new(-0.4, 2.2, -2.0, 0.0).unwrap(),
        ];
        let opts = SpectrumOptions { interval: Some((-10.0, 0.0)), ..Default::default() };
        let cfg = OracleConfig::default();
        let mut worst_rep = 0.0f64;
        let mut worst_oracle = 0.0f64;
        let mut ok = true;
        for base in &bases {
            let reports: Vec<SpectrumReport> = [0.0, 1.0, PI]
                .iter()
                .map(|&w| find_discrete_spectrum(&PointInteraction, &base.with_omega(w), &opts).unwrap())
                .collect();
            let roots: Vec<Vec<f64>> = [0.0, 1.0, PI]
                .iter()
                .map(|&w| scan_spectrum(&base.with_omega(w), &cfg).unwrap().with_multiplicity())
                .collect();
            for k in 1..3 {
                ok &= reports[k].eigenvalues.len() == reports[0].eigenvalues.len();
                for (a, b) in reports[k].eigenvalues.iter().zip(&reports[0].eigenvalues) {
                    ok &= a.mult == b.mult && a.channel == b.channel;
                    worst_rep = worst_rep.max((a.r - b.r).abs());
                }
                worst_oracle = worst_oracle.max(max_abs_diff(&roots[k], &roots[0]));
            }
        }
        ok &= worst_rep < 1e-10 && worst_oracle < 1e-4;
        (ok, format!("report spread {worst_rep:.1e}, oracle spread {worst_oracle:.1e}"))
    })
}

pub fn nevanlinna_and_cayley() -> CheckOutcome {
    timed("8", "Nevanlinna kernel and Cayley image", None, || {
        let mut rng = StdRng::seed_from_u64(8);
        let mut min_eig = f64::INFINITY;
        for _ in 0..100 {
            let n = rng.random_range(1..=6);
            let pts: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.random_range(-5.0..5.0), rng.random_range(0.01..5.0)))
                .collect();
            min_eig = min_eig.min(kernel_gram(&PointInteraction, &pts).unwrap().min_eig);
        }
        let mut max_inside = 0.0f64;
        for i in 0..20 {
            for j in 1..=20 {
                let mu = Complex64::new(-5.0 + 0.5 * i as f64, 0.25 * j as f64);
                max_inside = max_inside.max(cayley_theta(m_free(mu)).unwrap().norm());
            }
        }
        let mut boundary_dev = 0.0f64;
        for k in 1..=100 {
            let r = -0.1 * k as f64;
            let theta = cayley_theta(m_free(Complex64::new(r, 0.0))).unwrap();
            boundary_dev = boundary_dev.max((theta.norm() - 1.0).abs());
        }
        (
            min_eig >= -1e-10 && max_inside < 1.0 && boundary_dev < 1e-12,
            format!("min Gram eigenvalue {min_eig:.3e}; max |θ| on ℂ₊ {max_inside:.6}; max ||θ(r)|−1| {boundary_dev:.1e}"),
        )
    })
}

pub fn limit_property() -> CheckOutcome {
    timed("9", "limit property", None, || {
        let mut ok = true;
        let mut at_20 = f64::NAN;
        let mut worst_ratio = 0.0f64;
        for chi in 1..=20 {
            let chi = chi as f64;
            let omega = 0.37 * chi;
            let direct = (transition_of(CsymParams::new(chi, omega).unwrap()) + build_r_omega(omega)).norm2();
            let closed = limit_transition(omega, chi);
            let bound = 2.0 * (-chi).exp();
            ok &= closed <= bound && direct <= bound * (1.0 + 1e-6);
            worst_ratio = worst_ratio.max(closed / bound);
            at_20 = closed;
        }
        ok &= at_20 < 1e-8;
        (ok, format!("max ‖T+R_ω‖ / 2e^(−χ) {worst_ratio:.4}; value at χ=20 {at_20:.3e}"))
    })
}

/// The nine acceptance criteria, in order.
pub fn acceptance_suite() -> Vec<CheckOutcome> {
    vec![
        algebraic_certificates(),
        stability_dichotomy(),
        commutant(),
        closed_form_model(),
        oracle_agreement(),
        reality_and_nonreality(),
        omega_invariance(),
        nevanlinna_and_cayley(),
        limit_property(),
    ]
}

/// Module invariants not already covered by the acceptance criteria.
pub fn invariant_suite() -> Vec<CheckOutcome> {
    vec![
        timed("inv-transition", "transition round trip and factor exponent", None, || {
            let mut rng = StdRng::seed_from_u64(21);
            let j = fundamental_symmetry();
            let mut worst = 0.0f64;
            for _ in 0..100 {
                let (chi, omega) = (rng.random_range(-5.0..5.0), rng.random_range(0.0..2.0 * PI));
                let c = build_c(CsymParams::new(chi, omega).unwrap());
                let t = transition_from_c(&c, &j).unwrap();
                worst = worst.max((c_from_transition(&t, &j).unwrap() - c).norm2() / c.norm2());
                let y = factor_exponent(&c, &j).unwrap();
                worst = worst.max((y - build_r_omega(omega) * chi).norm2());
                worst = worst.max(verify_csym(&c, &j, 1e-10).map(|r| if r.is_positive { 0.0 } else { 1.0 }).unwrap_or(1.0));
            }
            (worst < 1e-8, format!("max residual {worst:.1e}"))
        }),
        timed("inv-powers", "bounded powers for stable K", None, || {
            let mut rng = StdRng::seed_from_u64(22);
            let mut worst = 0.0f64;
            for _ in 0..50 {
                let p = random_stable(&mut rng);
                let k = build_k(&p);
                let c = csym_of_extension(&p).unwrap();
                let g = fundamental_symmetry() * c;
                // K is unitary in the G-metric, so ‖K^n‖ is bounded by cond(G)
                let (lo, hi) = g.hermitian_eigenvalues();
                let mut kn = CMat2::identity();
                for _ in 0..1000 {
                    kn = kn * k;
                    worst = worst.max(kn.norm2() / (hi / lo).sqrt());
                }
            }
            (worst <= 1.0 + 1e-9, format!("max ‖K^n‖ / √cond(JC) {worst:.12}"))
        }),
        timed("inv-relation", "relation is J-self-adjoint", None, || {
            let mut rng = StdRng::seed_from_u64(23);
            let mut worst = 0.0f64;
            for _ in 0..500 {
                let p = random_ext(&mut rng, 3.0);
                worst = worst.max(cayley_to_relation(&build_k(&p)).krein_defect());
            }
            (worst < 1e-10, format!("max Krein defect {worst:.1e}"))
        }),
        timed("inv-roots", "determinant zeros match channel solver", None, || {
            let mut rng = StdRng::seed_from_u64(24);
            let mut worst = 0.0f64;
            let mut count_mismatch = 0;
            for _ in 0..30 {
                let p = random_stable(&mut rng);
                let rel = cayley_to_relation(&build_k(&p));
                let zeros = det_real_zeros(&PointInteraction, &rel, (-10.0, 0.0), 1e-4).unwrap();
                let opts = SpectrumOptions { interval: Some((-10.0, 0.0)), ..Default::default() };
                let rep = find_discrete_spectrum(&PointInteraction, &p, &opts).unwrap();
                // eigenvalues hugging the scan ends are not compared
                let inner = |r: f64| r > -9.99 && r < -1e-4;
                let a: Vec<f64> = zeros.iter().filter(|z| inner(z.r)).flat_map(|z| vec![z.r; z.mult as usize]).collect();
                let b: Vec<f64> = rep.values_with_multiplicity().into_iter().filter(|&r| inner(r)).collect();
                if a.len() != b.len() {
                    count_mismatch += 1;
                } else {
                    worst = worst.max(max_abs_diff(&a, &b));
                }
            }
            (count_mismatch == 0 && worst < 1e-8, format!("{count_mismatch} count mismatches, max deviation {worst:.1e}"))
        }),
        timed("inv-selfadjoint-closed-form", "closed form for ζ = 0 against tangent formula", None, || {
            let mut rng = StdRng::seed_from_u64(25);
            let mut worst = 0.0f64;
            for _ in 0..200 {
                let p = ExtParams::new(0.0, rng.random_range(0.01..PI - 0.01), rng.random_range(-PI..PI), 0.0).unwrap();
                let got = closed_form_eigenvalues(&p).unwrap().values_with_multiplicity();
                let want = expected_roots_self_adjoint(p.phi, p.xi);
                let scale = want.iter().fold(1.0f64, |a, r| a.max(r.abs()));
                worst = worst.max(max_abs_diff(&got, &want) / scale);
            }
            (worst < 1e-12, format!("max relative deviation {worst:.1e}"))
        }),
        timed("inv-gamma", "boundary maps are invertible", None, || {
            let (g0, g1) = gamma_matrices();
            let mut m = nalgebra::Matrix4::<f64>::zeros();
            for c in 0..4 {
                m[(0, c)] = g0[0][c];
                m[(1, c)] = g0[1][c];
                m[(2, c)] = g1[0][c];
                m[(3, c)] = g1[1][c];
            }
            let det = m.determinant();
            (det.abs() > 1e-12, format!("det {det}"))
        }),
        timed("inv-oracle-box", "oracle roots stable in box size", None, || {
            let p = ExtParams::new(0.0, FRAC_PI_4, 0.0, 0.0).unwrap();
            let a = scan_spectrum(&p, &OracleConfig::default()).unwrap().roots;
            let b = scan_spectrum(&p, &OracleConfig { l: 30.0, n: 6000, ..Default::default() }).unwrap().roots;
            let d = max_abs_diff(&a, &b);
            (d < 1e-6, format!("max shift L=20 → 30: {d:.1e}"))
        }),
    ]
}
