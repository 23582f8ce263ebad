//! Numerical toolkit for `J`-self-adjoint extensions of symmetric operators
//! with defect numbers `<2,2>` that carry a stable C-symmetry.

pub mod checks;
pub mod cmat2;
pub mod error;
pub mod expr;
pub mod extensions;
pub mod krein;
pub mod model;
pub mod oracle;
pub mod roots;
pub mod weyl;

pub use cmat2::CMat2;
pub use error::{Error, Result};
pub use num_complex::Complex64;
