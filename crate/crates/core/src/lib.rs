//! Conformal geometric algebra CGA(4,1) and factorization of quadratic
//! motion polynomials in its even subalgebra.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod exec;
pub mod factor;
pub mod geometry;
pub(crate) mod linalg;
pub mod matrix_rep;
pub mod poly;
pub mod random;
pub mod tolerance;

pub use algebra::{Blade, EvenMultivector, Multivector};
pub use error::{Error, Result};
pub use exec::Execution;
pub use factor::{factorize, FactorConfig, FactorizationReport, Verdict};
pub use poly::{MotionPolynomial, MotionType, RealPolynomial};
pub use tolerance::Tolerances;
