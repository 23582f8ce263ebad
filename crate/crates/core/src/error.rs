use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("J*C is not positive definite (minimum eigenvalue {min_eig:e})")]
    NotPositive { min_eig: f64 },

    #[error("C is not an involution (residual {residual:e})")]
    NotInvolution { residual: f64 },

    #[error("matrix is singular: {0}")]
    Singular(&'static str),

    #[error("not a transition operator: {0}")]
    NotTransition(&'static str),

    #[error("block matrix is not Z-unitary (residual {residual:e})")]
    NotZUnitary { residual: f64 },

    #[error("Cayley transform has a pole at m = -i")]
    CayleyPole,

    #[error(
        "extension (zeta={zeta}, phi={phi}) has no stable C-symmetry: \
         requires |tanh zeta| < |cos phi| or (zeta = 0 and phi = pi/2)"
    )]
    NotStable { zeta: f64, phi: f64 },

    #[error("cos(phi) tanh(chi) = -tanh(zeta) has no solution for zeta={zeta}, phi={phi}")]
    Infeasible { zeta: f64, phi: f64 },

    #[error("point {0} lies outside the real resolvent domain")]
    OutsideDomain(f64),

    #[error("interval ({0}, {1}) is empty or not contained in the real resolvent domain")]
    BadInterval(f64, f64),

    #[error("points {0} and {1} are complex conjugates; kernel is undefined")]
    ConjugatePair(usize, usize),

    #[error("point {0} is real; kernel needs non-real points")]
    RealPoint(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("expression error: {0}")]
    Expr(String),
}
