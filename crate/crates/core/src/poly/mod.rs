//! Real polynomials and motion polynomials over the even subalgebra.

mod linear;
mod motion;
mod real;

pub use linear::{
    classify_linear, classify_linear_detailed, linear_quadrance, study_conditions,
    LinearClassification, MotionType, StudyConditions,
};
pub use motion::{LinearRemainder, MotionPolynomial};
pub use real::RealPolynomial;
