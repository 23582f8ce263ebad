//! The four-parameter family `K(ζ, φ, ξ, ω)` of `J`-unitary boundary
//! matrices and the classification of the corresponding extensions.
//!
//! An extension `A_K` is described by the boundary condition
//! `i(I + K) Γ0 f = (I − K) Γ1 f`. It is self-adjoint iff `ζ = 0`, has a
//! stable C-symmetry iff `|tanh ζ| < |cos φ|` or it lies in `Υ`
//! (`ζ = 0`, `φ = π/2`), and in the stable case commutes with
//! `C_{χ,ω}` where `cos φ tanh χ = −tanh ζ`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmat2::{CMat2, I};
use crate::error::{Error, Result};
use crate::krein::{build_c, fundamental_symmetry, normalize_angle, CsymParams};

/// Absolute tolerance used when testing `ζ = 0` and `φ = π/2`.
pub const EXACT_TOL: f64 = 1e-12;

/// Parameters `(ζ, φ, ξ, ω)` of a `J`-unitary boundary matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawExtParams")]
pub struct ExtParams {
    pub zeta: f64,
    pub phi: f64,
    pub xi: f64,
    pub omega: f64,
}

#[derive(Deserialize)]
struct RawExtParams {
    zeta: f64,
    phi: f64,
    xi: f64,
    omega: f64,
}

impl TryFrom<RawExtParams> for ExtParams {
    type Error = Error;
    fn try_from(r: RawExtParams) -> Result<Self> {
        ExtParams::new(r.zeta, r.phi, r.xi, r.omega)
    }
}

impl ExtParams {
    /// Clamps `φ` into `[0, π]` and reduces `ξ`, `ω` into `[0, 2π)`.
    pub fn new(zeta: f64, phi: f64, xi: f64, omega: f64) -> Result<Self> {
        if ![zeta, phi, xi, omega].iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("extension parameters"));
        }
        Ok(ExtParams {
            zeta,
            phi: phi.clamp(0.0, PI),
            xi: normalize_angle(xi),
            omega: normalize_angle(omega),
        })
    }

    pub fn with_omega(self, omega: f64) -> Self {
        ExtParams { omega: normalize_angle(omega), ..self }
    }

    pub fn with_xi(self, xi: f64) -> Self {
        ExtParams { xi: normalize_angle(xi), ..self }
    }
}

/// `K(ζ,φ,ξ,ω) = e^{-iξ} [[−e^{-iφ} cosh ζ, e^{-iω} sinh ζ], [−e^{iω} sinh ζ, e^{iφ} cosh ζ]]`.
pub fn build_k(p: &ExtParams) -> CMat2 {
    let (ch, sh) = (p.zeta.cosh(), p.zeta.sinh());
    let ephi = Complex64::from_polar(1.0, p.phi);
    let eom = Complex64::from_polar(1.0, p.omega);
    let pre = Complex64::from_polar(1.0, -p.xi);
    CMat2::new(-ephi.conj() * ch, eom.conj() * sh, -eom * sh, ephi * ch).scale(pre)
}

/// Parameters of the adjoint extension: `ζ ↦ −ζ`.
pub fn adjoint_params(p: &ExtParams) -> ExtParams {
    ExtParams { zeta: -p.zeta, ..*p }
}

/// Classification of an extension.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtensionClass {
    #[serde(rename = "upsilon")]
    pub in_upsilon: bool,
    #[serde(rename = "self_adjoint")]
    pub is_self_adjoint: bool,
    #[serde(rename = "stable")]
    pub is_stable: bool,
    /// `χ` of the commuting `C_{χ,ω}`; present when stable and not in `Υ`.
    pub chi: Option<f64>,
}

/// [`classify_with_tol`] at [`EXACT_TOL`].
pub fn classify(p: &ExtParams) -> ExtensionClass {
    classify_with_tol(p, EXACT_TOL)
}

/// `tol` governs both the equality tests `ζ = 0`, `φ = π/2` and the
/// strict inequality `|tanh ζ| < |cos φ|`, which must hold with margin
/// `tol`; points on the boundary curve are unstable.
pub fn classify_with_tol(p: &ExtParams, tol: f64) -> ExtensionClass {
    let is_self_adjoint = p.zeta.abs() <= tol;
    let in_upsilon = is_self_adjoint && (p.phi - FRAC_PI_2).abs() <= tol;
    let strictly_inside = stability_margin(p.zeta, p.phi) > tol;
    let is_stable = in_upsilon || strictly_inside;
    let chi = if is_stable && !in_upsilon {
        Some(chi_unchecked(p.zeta, p.phi))
    } else {
        None
    };
    ExtensionClass { in_upsilon, is_self_adjoint, is_stable, chi }
}

/// `|cos φ| − |tanh ζ|`; positive exactly on the stable region outside `Υ`.
pub fn stability_margin(zeta: f64, phi: f64) -> f64 {
    phi.cos().abs() - zeta.tanh().abs()
}

fn chi_unchecked(zeta: f64, phi: f64) -> f64 {
    (-zeta.tanh() / phi.cos()).atanh()
}

/// The unique `χ` with `cos φ · tanh χ = −tanh ζ`.
pub fn solve_chi(zeta: f64, phi: f64) -> Result<f64> {
    if !zeta.is_finite() || !phi.is_finite() {
        return Err(Error::NonFinite("solve_chi arguments"));
    }
    if stability_margin(zeta, phi) <= EXACT_TOL {
        return Err(Error::Infeasible { zeta, phi });
    }
    Ok(chi_unchecked(zeta, phi))
}

/// Eigenvalues of `K` and, for stable parameters, the angle `t` with
/// `k+ = −e^{-iξ} e^{-it}`, `k− = e^{-iξ} e^{it}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub k_plus: Complex64,
    pub k_minus: Complex64,
    pub t: Option<f64>,
}

/// For stable parameters the labels follow the eigenprojections:
/// `(K − k± I)(I ± C_{χ,ω}) = 0`. Otherwise the raw roots of the
/// characteristic equation are returned with the `±` in front of the
/// square root.
pub fn k_eigenvalues(p: &ExtParams) -> EigenPair {
    k_eigenvalues_with_tol(p, EXACT_TOL)
}

pub fn k_eigenvalues_with_tol(p: &ExtParams, tol: f64) -> EigenPair {
    let class = classify_with_tol(p, tol);
    let pre = Complex64::from_polar(1.0, -p.xi);
    if class.is_stable {
        let chi = class.chi.unwrap_or(0.0);
        let t = if class.in_upsilon {
            FRAC_PI_2
        } else {
            let z = Complex64::new(p.phi.cos(), p.phi.sin() * chi.cosh());
            normalize_angle(z.arg())
        };
        let et = Complex64::from_polar(1.0, t);
        EigenPair { k_plus: -pre * et.conj(), k_minus: pre * et, t: Some(t) }
    } else {
        let s = p.phi.sin() * p.zeta.cosh();
        let root = Complex64::new(1.0 - s * s, 0.0).sqrt();
        let imag = I * s;
        EigenPair { k_plus: pre * (root + imag), k_minus: pre * (-root + imag), t: None }
    }
}

/// The C-symmetry shared by the extension and the symmetric operator.
///
/// Every `C_{χ,ω}` commutes with the scalar matrices of `Υ`; `σ3` is
/// returned for them.
pub fn csym_of_extension(p: &ExtParams) -> Result<CMat2> {
    csym_of_extension_with_tol(p, EXACT_TOL)
}

pub fn csym_of_extension_with_tol(p: &ExtParams, tol: f64) -> Result<CMat2> {
    let class = classify_with_tol(p, tol);
    if !class.is_stable {
        return Err(Error::NotStable { zeta: p.zeta, phi: p.phi });
    }
    match class.chi {
        Some(chi) if !class.in_upsilon => Ok(build_c(CsymParams { chi, omega: p.omega })),
        _ => Ok(fundamental_symmetry()),
    }
}

/// Boundary relation `{(Φc, Ψc) : c ∈ C²}` of an extension, with the
/// matrix form `Γ1 f = R Γ0 f` when it exists.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolventParam {
    pub phi: CMat2,
    pub psi: CMat2,
    pub matrix: Option<CMat2>,
}

impl ResolventParam {
    /// `‖Φ*JΨ − Ψ*JΦ‖`; zero for a `J`-self-adjoint relation.
    pub fn krein_defect(&self) -> f64 {
        let j = fundamental_symmetry();
        (self.phi.adjoint() * j * self.psi - self.psi.adjoint() * j * self.phi).frobenius()
    }

    /// Singular values of the stacked 4×2 matrix `(Φ; Ψ)`.
    pub fn stacked_singular_values(&self) -> (f64, f64) {
        let gram = self.phi.adjoint() * self.phi + self.psi.adjoint() * self.psi;
        let (lo, hi) = gram.hermitian_eigenvalues();
        (hi.max(0.0).sqrt(), lo.max(0.0).sqrt())
    }

    /// Roots `w` of `det(Ψ − wΦ) = 0`, i.e. the eigenvalues of the
    /// relation. `None` stands for the eigenvalue at infinity.
    pub fn eigenvalues(&self) -> [Option<Complex64>; 2] {
        let (a, b) = (self.psi, self.phi);
        // det(A − wB) = det A − w (a11 b22 + a22 b11 − a12 b21 − a21 b12) + w² det B
        let c0 = a.det();
        let c1 = -(a.a11() * b.a22() + a.a22() * b.a11() - a.a12() * b.a21() - a.a21() * b.a12());
        let c2 = b.det();
        let scale = c0.norm().max(c1.norm()).max(c2.norm());
        if c2.norm() <= 1e-13 * scale {
            if c1.norm() <= 1e-13 * scale {
                return [None, None];
            }
            return [Some(-c0 / c1), None];
        }
        let disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
        let q = if (c1.conj() * disc).re >= 0.0 { -0.5 * (c1 + disc) } else { -0.5 * (c1 - disc) };
        let w1 = q / c2;
        let w2 = if q.norm() > 0.0 { c0 / q } else { w1 };
        [Some(w1), Some(w2)]
    }
}

/// `R = i(I + K)(I − K)^{-1}` in graph form `(I − K, i(I + K))`, with the
/// stacked columns orthonormalised.
pub fn cayley_to_relation(k: &CMat2) -> ResolventParam {
    let id = CMat2::identity();
    let phi = id - *k;
    let psi = (id + *k) * I;
    let matrix = phi.inverse().map(|inv| psi * inv);
    let gram = phi.adjoint() * phi + psi.adjoint() * psi;
    // gram^{-1/2} = exp(-log(gram)/2); gram is positive definite since (Φ;Ψ) has rank 2
    let norm = match gram.hermitian_log() {
        Ok(log) => (log * -0.5).hermitian_exp(),
        Err(_) => id,
    };
    ResolventParam { phi: phi * norm, psi: psi * norm, matrix }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn p(z: f64, ph: f64, x: f64, o: f64) -> ExtParams {
        ExtParams::new(z, ph, x, o).unwrap()
    }

    #[test]
    fn k_examples() {
        let xi = 0.9;
        let k = build_k(&p(0.0, FRAC_PI_2, xi, 2.0));
        assert!(k.approx_eq(&CMat2::scalar(I * Complex64::from_polar(1.0, -xi)), 1e-15));

        let (ph, x) = (0.4, 1.3);
        let k = build_k(&p(0.0, ph, x, 5.0));
        let pre = Complex64::from_polar(1.0, -x);
        let expect = CMat2::diag(-pre * Complex64::from_polar(1.0, -ph), pre * Complex64::from_polar(1.0, ph));
        assert!(k.approx_eq(&expect, 1e-15));

        let k = build_k(&p(1.0, 0.0, 0.0, 0.0));
        let expect = CMat2::real(-1.5430806348152437, 1.1752011936438014, -1.1752011936438014, 1.5430806348152437);
        assert!(k.approx_eq(&expect, 1e-15));
    }

    #[test]
    fn params_are_normalized() {
        let q = p(0.1, 4.0, -1.0, 7.0);
        assert_eq!(q.phi, PI);
        assert!(q.xi >= 0.0 && q.xi < 2.0 * PI);
        assert!((q.omega - (7.0 - 2.0 * PI)).abs() < 1e-15);
        assert!(ExtParams::new(0.0, f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(adjoint_params(&p(0.5, 1.0, 2.0, 3.0)).zeta, -0.5);
        let q = p(0.0, 1.0, 2.0, 3.0);
        assert_eq!(adjoint_params(&q), q);
    }

    #[test]
    fn classify_examples() {
        let c = classify(&p(0.0, FRAC_PI_2, 1.0, 0.3));
        assert!(c.in_upsilon && c.is_stable && c.is_self_adjoint && c.chi.is_none());

        let c = classify(&p(0.3, 0.0, 0.0, 0.0));
        assert!(c.is_stable && !c.is_self_adjoint && !c.in_upsilon);
        assert!((c.chi.unwrap() + 0.3).abs() < 1e-14);

        let c = classify(&p(1.0, PI / 3.0, 0.0, 0.0));
        assert!(!c.is_stable && c.chi.is_none());

        // phi = pi/2 with zeta != 0 is never stable
        assert!(!classify(&p(0.2, FRAC_PI_2, 0.0, 0.0)).is_stable);
    }

    #[test]
    fn boundary_is_unstable() {
        for &zeta in &[0.1f64, 0.5, -1.2, 2.0] {
            let phi = zeta.tanh().abs().acos();
            assert!(!classify(&p(zeta, phi, 0.0, 0.0)).is_stable, "zeta={zeta}");
            assert!(!classify(&p(zeta, PI - phi, 0.0, 0.0)).is_stable, "zeta={zeta}");
        }
    }

    #[test]
    fn solve_chi_examples() {
        assert_eq!(solve_chi(0.0, 1.0).unwrap(), 0.0);
        assert!((solve_chi(0.2, 0.0).unwrap() + 0.2).abs() < 1e-15);
        let chi = solve_chi(0.5, PI / 3.0).unwrap();
        assert!((chi + 1.6174).abs() < 1e-4, "{chi}");
        assert!((chi.tanh() * (PI / 3.0).cos() + 0.5f64.tanh()).abs() < 1e-15);
        assert!(matches!(solve_chi(1.0, PI / 3.0), Err(Error::Infeasible { .. })));
        assert!(solve_chi(0.0, FRAC_PI_2).is_err());
    }

    #[test]
    fn eigen_examples() {
        let xi = 0.7;
        let e = k_eigenvalues(&p(0.0, FRAC_PI_2, xi, 1.0));
        let k = I * Complex64::from_polar(1.0, -xi);
        assert!((e.k_plus - k).norm() < 1e-15 && (e.k_minus - k).norm() < 1e-15);
        assert!((e.t.unwrap() - FRAC_PI_2).abs() < 1e-15);

        let e = k_eigenvalues(&p(1.0, PI / 3.0, 0.0, 0.0));
        assert!(e.t.is_none());
        let mut moduli = [e.k_plus.norm(), e.k_minus.norm()];
        moduli.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // s ± sqrt(s² − 1) with s = sin(π/3) cosh(1)
        assert!((moduli[0] - 0.44988023172501823).abs() < 1e-14, "{moduli:?}");
        assert!((moduli[1] - 2.2228138279506204).abs() < 1e-14);
        assert!((moduli[0] * moduli[1] - 1.0).abs() < 1e-12);

        let e = k_eigenvalues(&p(0.0, FRAC_PI_4, 0.0, 0.0));
        assert!((e.k_plus + Complex64::from_polar(1.0, -FRAC_PI_4)).norm() < 1e-15);
        assert!((e.k_minus - Complex64::from_polar(1.0, FRAC_PI_4)).norm() < 1e-15);
        assert!((e.t.unwrap() - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn eigen_labels_follow_projections_at_phi_zero() {
        // the square-root sign convention and the projector labelling differ here
        let q = p(0.3, 0.0, 0.0, 0.0);
        let e = k_eigenvalues(&q);
        let k = build_k(&q);
        let c = csym_of_extension(&q).unwrap();
        let id = CMat2::identity();
        assert!(((k - CMat2::scalar(e.k_plus)) * (id + c)).norm2() < 1e-12);
        assert!(((k - CMat2::scalar(e.k_minus)) * (id - c)).norm2() < 1e-12);
        assert!((e.k_plus + 1.0).norm() < 1e-15);
    }

    #[test]
    fn csym_examples() {
        let s3 = fundamental_symmetry();
        assert_eq!(csym_of_extension(&p(0.0, FRAC_PI_4, 0.0, 0.0)).unwrap(), s3);

        let q = p(0.3, 0.0, 0.7, 1.1);
        let c = csym_of_extension(&q).unwrap();
        assert!(c.approx_eq(&build_c(CsymParams::new(-0.3, 1.1).unwrap()), 1e-14));
        assert!(build_k(&q).commutator(&c).norm2() < 1e-10);

        let q = p(0.0, FRAC_PI_2, 0.0, 0.0);
        let c = csym_of_extension(&q).unwrap();
        assert_eq!(c, s3);
        assert!(build_k(&q).commutator(&c).norm2() < 1e-15);

        assert!(matches!(
            csym_of_extension(&p(1.0, PI / 3.0, 0.0, 0.0)),
            Err(Error::NotStable { .. })
        ));
    }

    #[test]
    fn relation_examples() {
        let id = CMat2::identity();
        let r = cayley_to_relation(&(-id));
        assert!(r.matrix.unwrap().approx_eq(&CMat2::zero(), 0.0));

        let k = build_k(&p(0.0, FRAC_PI_2, FRAC_PI_2, 0.3));
        assert!(k.approx_eq(&id, 1e-15));
        let r = cayley_to_relation(&k);
        assert!(r.matrix.is_none());
        assert!(r.phi.norm2() < 1e-15);
        // purely multivalued: Ψ spans everything
        assert_eq!(r.psi.rank(1e-12), 2);
        assert!(r.krein_defect() < 1e-14);

        let r = cayley_to_relation(&build_k(&p(0.0, FRAC_PI_4, 0.0, 0.0)));
        // i(1+k)/(1−k) at k = −e^{−iπ/4} and k = e^{iπ/4}
        let expect = CMat2::real(-(PI / 8.0).tan(), 0.0, 0.0, -1.0 / (PI / 8.0).tan());
        assert!(r.matrix.unwrap().approx_eq(&expect, 1e-14));
        let (s1, s2) = r.stacked_singular_values();
        assert!((s1 - 1.0).abs() < 1e-14 && (s2 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn relation_eigenvalues_match_matrix_form() {
        let r = cayley_to_relation(&build_k(&p(0.0, FRAC_PI_4, 0.0, 0.0)));
        let mut w: Vec<f64> = r.eigenvalues().iter().map(|w| w.unwrap().re).collect();
        w.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((w[1] + (PI / 8.0).tan()).abs() < 1e-13);
        assert!((w[0] + 1.0 / (PI / 8.0).tan()).abs() < 1e-13);

        let r = cayley_to_relation(&CMat2::identity());
        assert_eq!(r.eigenvalues(), [None, None]);
    }

    #[test]
    fn json_shapes() {
        let s = serde_json::to_string(&p(0.5, 1.0, 2.0, 3.0)).unwrap();
        assert_eq!(s, r#"{"zeta":0.5,"phi":1.0,"xi":2.0,"omega":3.0}"#);
        let back: ExtParams = serde_json::from_str(r#"{"zeta":0,"phi":9,"xi":-1,"omega":0}"#).unwrap();
        assert_eq!(back.phi, PI);
        let s = serde_json::to_string(&classify(&p(1.0, PI / 3.0, 0.0, 0.0))).unwrap();
        assert_eq!(s, r#"{"upsilon":false,"self_adjoint":false,"stable":false,"chi":null}"#);
    }
}
