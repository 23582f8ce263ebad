//! Krein-space algebra on the two-dimensional boundary space.
//!
//! The fundamental symmetry is `J = σ3` and the second anticommuting
//! symmetry is `R = σ1`. Every C-symmetry of the underlying symmetric
//! operator is represented by a member of the two-parameter family
//! `C_{χ,ω} = J exp(χ R_ω)` with `R_ω = R exp(iωJ)`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmat2::{CMat2, I, ONE, ZERO};
use crate::error::{Error, Result};

/// Default tolerance for algebraic identities in double precision.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Reduce an angle into `[0, 2π)`.
pub fn normalize_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// The Pauli matrices `(σ1, σ2, σ3)`.
///
/// In the boundary space `J ↔ σ3`, `R ↔ σ1` and `iRJ ↔ σ2`.
pub fn pauli_basis() -> (CMat2, CMat2, CMat2) {
    let s1 = CMat2::new(ZERO, ONE, ONE, ZERO);
    let s2 = CMat2::new(ZERO, -I, I, ZERO);
    let s3 = CMat2::new(ONE, ZERO, ZERO, -ONE);
    (s1, s2, s3)
}

/// `J = σ3`.
pub fn fundamental_symmetry() -> CMat2 {
    pauli_basis().2
}

/// `R_ω = σ1 exp(iωσ3) = [[0, e^{-iω}], [e^{iω}, 0]]`.
///
/// Unitary, self-adjoint and anticommuting with `σ3` for every `ω`.
pub fn build_r_omega(omega: f64) -> CMat2 {
    let e = Complex64::from_polar(1.0, omega);
    CMat2::new(ZERO, e.conj(), e, ZERO)
}

/// Parameters `(χ, ω)` of the C-symmetry `C_{χ,ω}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsymParams {
    pub chi: f64,
    pub omega: f64,
}

impl CsymParams {
    /// Validates `χ` and reduces `ω` into `[0, 2π)`.
    pub fn new(chi: f64, omega: f64) -> Result<Self> {
        if !chi.is_finite() || !omega.is_finite() {
            return Err(Error::NonFinite("C-symmetry parameters"));
        }
        Ok(CsymParams { chi, omega: normalize_angle(omega) })
    }
}

/// `C_{χ,ω} = [[cosh χ, sinh χ e^{-iω}], [-sinh χ e^{iω}, -cosh χ]]`.
pub fn build_c(p: CsymParams) -> CMat2 {
    let (ch, sh) = (p.chi.cosh(), p.chi.sinh());
    let e = Complex64::from_polar(1.0, p.omega);
    CMat2::new(ch.into(), e.conj() * sh, -e * sh, (-ch).into())
}

/// Outcome of checking `C² = I` and `JC > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositivityReport {
    pub is_involution: bool,
    pub involution_residual: f64,
    /// `‖JC − (JC)*‖`; positivity is only meaningful when this is small.
    pub hermitian_defect: f64,
    pub min_eig_jc: f64,
    pub is_positive: bool,
}

/// Checks whether `c` is a C-symmetry with respect to the fundamental
/// symmetry `j`.
pub fn verify_csym(c: &CMat2, j: &CMat2, tol: f64) -> Result<PositivityReport> {
    c.ensure_finite("C")?;
    j.ensure_finite("J")?;
    let involution_residual = (*c * *c - CMat2::identity()).norm2();
    let jc = *j * *c;
    let hermitian_defect = jc.hermitian_defect();
    let (min_eig_jc, _) = jc.hermitian_eigenvalues();
    Ok(PositivityReport {
        is_involution: involution_residual <= tol,
        involution_residual,
        hermitian_defect,
        min_eig_jc,
        is_positive: hermitian_defect <= tol && min_eig_jc > 0.0,
    })
}

/// Hermitian `Y` with `C = J e^Y`, i.e. the principal logarithm of the
/// positive matrix `JC`. For `C = C_{χ,ω}` this is `χ R_ω`.
pub fn factor_exponent(c: &CMat2, j: &CMat2) -> Result<CMat2> {
    let report = verify_csym(c, j, DEFAULT_TOL * c.norm2().max(1.0))?;
    if !report.is_positive {
        return Err(Error::NotPositive { min_eig: report.min_eig_jc });
    }
    if !report.is_involution {
        return Err(Error::NotInvolution { residual: report.involution_residual });
    }
    (*j * *c).hermitian_log()
}

/// Transition operator `T = (I − G)(I + G)^{-1}` with `G = JC`.
pub fn transition_from_c(c: &CMat2, j: &CMat2) -> Result<CMat2> {
    c.ensure_finite("C")?;
    let g = *j * *c;
    let inv = (CMat2::identity() + g)
        .inverse()
        .ok_or(Error::Singular("I + JC"))?;
    Ok((CMat2::identity() - g) * inv)
}

fn check_transition(t: &CMat2, j: &CMat2) -> Result<()> {
    t.ensure_finite("T")?;
    let scale = t.norm2().max(1.0);
    if t.hermitian_defect() > DEFAULT_TOL * scale {
        return Err(Error::NotTransition("T is not self-adjoint"));
    }
    if t.norm2() >= 1.0 {
        return Err(Error::NotTransition("T is not a strict contraction"));
    }
    if t.anticommutator(j).norm2() > DEFAULT_TOL * scale {
        return Err(Error::NotTransition("T does not anticommute with J"));
    }
    Ok(())
}

/// Inverse of [`transition_from_c`]: `C = J(I − T)(I + T)^{-1}`.
pub fn c_from_transition(t: &CMat2, j: &CMat2) -> Result<CMat2> {
    check_transition(t, j)?;
    let inv = (CMat2::identity() + *t)
        .inverse()
        .ok_or(Error::Singular("I + T"))?;
    Ok(*j * (CMat2::identity() - *t) * inv)
}

/// Closed-form transition operator of `C_{χ,ω}`: `T = −tanh(χ/2) R_ω`.
pub fn transition_of(p: CsymParams) -> CMat2 {
    build_r_omega(p.omega) * (-(0.5 * p.chi).tanh())
}

/// Projections `(P_{L+}, P_{L−})` onto the pair of subspaces described by
/// the transition operator `t`.
pub fn projections_from_t(t: &CMat2, j: &CMat2) -> Result<(CMat2, CMat2)> {
    check_transition(t, j)?;
    let id = CMat2::identity();
    let p_plus = (id + *j) * 0.5;
    let p_minus = (id - *j) * 0.5;
    let inv = (id - *t).inverse().ok_or(Error::Singular("I - T"))?;
    let pl_minus = inv * (p_minus - *t * p_plus);
    let pl_plus = inv * (p_plus - *t * p_minus);
    Ok((pl_plus, pl_minus))
}

/// `1 − tanh(x)` without cancellation for large `x`.
fn one_minus_tanh(x: f64) -> f64 {
    if x >= 0.0 {
        let e = (-2.0 * x).exp();
        2.0 * e / (1.0 + e)
    } else {
        2.0 / (1.0 + (2.0 * x).exp())
    }
}

/// `‖T_{χ,ω} + R_ω‖`, the distance of the transition operator from the
/// neutral limit `−R_ω`. Equals `1 − tanh(χ/2)`.
pub fn limit_transition(omega: f64, chi: f64) -> f64 {
    // T + R_ω = (1 − tanh(χ/2)) R_ω, formed without subtracting
    let residual = build_r_omega(omega) * one_minus_tanh(0.5 * chi);
    residual.norm2()
}

/// Cayley transform `θ = (m − i)/(m + i)` of a Weyl-function value.
pub fn cayley_theta(m_value: Complex64) -> Result<Complex64> {
    let den = m_value + I;
    if den.norm() <= f64::EPSILON * (1.0 + m_value.norm()) {
        return Err(Error::CayleyPole);
    }
    Ok((m_value - I) / den)
}

/// 4×4 block matrix `[[U00, U01], [U10, U11]]` acting on `C² ⊕ C²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockMat {
    pub u00: CMat2,
    pub u01: CMat2,
    pub u10: CMat2,
    pub u11: CMat2,
}

impl BlockMat {
    pub fn identity() -> Self {
        BlockMat::diag(CMat2::identity(), CMat2::identity())
    }

    pub fn diag(a: CMat2, b: CMat2) -> Self {
        BlockMat { u00: a, u01: CMat2::zero(), u10: CMat2::zero(), u11: b }
    }

    /// Hyperbolic rotation `[[cosh H, sinh H], [sinh H, cosh H]]` for a
    /// Hermitian generator `H`; always `Z`-unitary.
    pub fn boost(h: &CMat2) -> Self {
        let ch = h.hermitian_cosh();
        let sh = h.hermitian_sinh();
        BlockMat { u00: ch, u01: sh, u10: sh, u11: ch }
    }

    pub fn compose(&self, rhs: &BlockMat) -> BlockMat {
        BlockMat {
            u00: self.u00 * rhs.u00 + self.u01 * rhs.u10,
            u01: self.u00 * rhs.u01 + self.u01 * rhs.u11,
            u10: self.u10 * rhs.u00 + self.u11 * rhs.u10,
            u11: self.u10 * rhs.u01 + self.u11 * rhs.u11,
        }
    }

    /// `‖U* Z U − Z‖` for `Z = diag(I, −I)`, blockwise Frobenius.
    pub fn z_unitarity_residual(&self) -> f64 {
        let id = CMat2::identity();
        let b00 = self.u00.adjoint() * self.u00 - self.u10.adjoint() * self.u10 - id;
        let b01 = self.u00.adjoint() * self.u01 - self.u10.adjoint() * self.u11;
        let b10 = self.u01.adjoint() * self.u00 - self.u11.adjoint() * self.u10;
        let b11 = self.u01.adjoint() * self.u01 - self.u11.adjoint() * self.u11 + id;
        [b00, b01, b10, b11]
            .iter()
            .map(|b| b.frobenius().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    fn scale(&self) -> f64 {
        [self.u00, self.u01, self.u10, self.u11]
            .iter()
            .map(|b| b.norm2())
            .fold(1.0, f64::max)
    }
}

/// Linear-fractional action `(U10 + U11 θ)(U00 + U01 θ)^{-1}` of a
/// `Z`-unitary block matrix on a 2×2 matrix. Strict contractions are
/// mapped to strict contractions.
pub fn kshmulyan_transform(theta: &CMat2, u: &BlockMat) -> Result<CMat2> {
    theta.ensure_finite("theta")?;
    let residual = u.z_unitarity_residual();
    if !residual.is_finite() || residual > DEFAULT_TOL * u.scale().powi(2) {
        return Err(Error::NotZUnitary { residual });
    }
    let den = (u.u00 + u.u01 * *theta)
        .inverse()
        .ok_or(Error::Singular("U00 + U01 theta"))?;
    Ok((u.u10 + u.u11 * *theta) * den)
}
