use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::EvenMultivector;
use crate::error::{Error, Result};
use crate::tolerance::{scale_of, Tolerances};

/// Type of a simple motion `t - h`, by the number of distinct real roots of
/// its quadrance polynomial.
///
/// `Transversion` covers the one-root case; Euclidean translations are its
/// rigid-body instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MotionType {
    Rotation,
    Transversion,
    Scaling,
}

impl MotionType {
    pub fn name(self) -> &'static str {
        match self {
            MotionType::Rotation => "rotation",
            MotionType::Transversion => "transversion",
            MotionType::Scaling => "scaling",
        }
    }

    pub fn distinct_real_roots(self) -> usize {
        match self {
            MotionType::Rotation => 0,
            MotionType::Transversion => 1,
            MotionType::Scaling => 2,
        }
    }
}

impl fmt::Display for MotionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of [`study_conditions`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StudyConditions {
    /// `h + rev(h)` is real.
    pub sum_real: bool,
    /// `h rev(h)` is real.
    pub quad_real: bool,
    /// Largest non-scalar coefficient of `h + rev(h)`.
    pub sum_residual: f64,
    /// Largest non-scalar coefficient of `h rev(h)`.
    pub quad_residual: f64,
}

impl StudyConditions {
    pub fn holds(&self) -> bool {
        self.sum_real && self.quad_real
    }
}

/// Checks `h + rev(h) in R` and `h rev(h) in R`; together they hold exactly
/// when `t - h` is a motion polynomial.
pub fn study_conditions(h: &EvenMultivector, tol: &Tolerances) -> StudyConditions {
    let s = scale_of([h.max_abs()]);
    let sum_residual = h.reverse_sum().non_scalar_max();
    let quad_residual = h.quadrance().non_scalar_max();
    StudyConditions {
        sum_real: sum_residual <= tol.eps * s,
        quad_real: quad_residual <= tol.eps * s * s,
        sum_residual,
        quad_residual,
    }
}

/// Quadrance polynomial of `t - h` as `(trace, norm)`, meaning
/// `t^2 - trace t + norm`.
pub fn linear_quadrance(h: &EvenMultivector, tol: &Tolerances) -> Result<(f64, f64)> {
    let sc = study_conditions(h, tol);
    if !sc.holds() {
        return Err(Error::NotAMotionPolynomial {
            reason: format!(
                "t - h fails the Study conditions (sum residual {:e}, quadrance residual {:e})",
                sc.sum_residual, sc.quad_residual
            ),
        });
    }
    Ok((h.reverse_sum().scalar_part(), h.quadrance().scalar_part()))
}

/// Classification of `t - h` together with the real roots of its quadrance.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearClassification {
    pub motion_type: MotionType,
    pub discriminant: f64,
    /// Distinct real roots, ascending.
    pub real_roots: Vec<f64>,
}

/// Classifies the simple motion `t - h` by the discriminant of
/// `t^2 - (h + rev h) t + h rev h`.
pub fn classify_linear_detailed(
    h: &EvenMultivector,
    tol: &Tolerances,
) -> Result<LinearClassification> {
    let (trace, norm) = linear_quadrance(h, tol)?;
    let disc = trace * trace - 4.0 * norm;
    let s = scale_of([h.max_abs()]);
    let band = tol.discriminant * s * s;
    let (motion_type, real_roots) = if disc.abs() <= band {
        (MotionType::Transversion, vec![trace / 2.0])
    } else if disc < 0.0 {
        (MotionType::Rotation, vec![])
    } else {
        let r = disc.sqrt();
        (
            MotionType::Scaling,
            vec![(trace - r) / 2.0, (trace + r) / 2.0],
        )
    };
    Ok(LinearClassification {
        motion_type,
        discriminant: disc,
        real_roots,
    })
}

pub fn classify_linear(h: &EvenMultivector, tol: &Tolerances) -> Result<MotionType> {
    classify_linear_detailed(h, tol).map(|c| c.motion_type)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: &str) -> EvenMultivector {
        EvenMultivector::blade(n)
    }

    #[test]
    fn catalog_factor_types() {
        let tol = Tolerances::default();
        assert_eq!(classify_linear(&e("e12"), &tol), Ok(MotionType::Rotation));
        assert_eq!(
            classify_linear(&(e("e3p") + e("e3m")), &tol),
            Ok(MotionType::Transversion)
        );
        assert_eq!(classify_linear(&-e("epm"), &tol), Ok(MotionType::Scaling));
    }

    #[test]
    fn scaling_roots() {
        let tol = Tolerances::default();
        let c = classify_linear_detailed(&(e("epm") + 1.0), &tol).unwrap();
        assert_eq!(c.real_roots, vec![0.0, 2.0]);
    }

    #[test]
    fn study_conditions_examples() {
        let tol = Tolerances::default();
        assert!(study_conditions(&e("e12"), &tol).holds());
        let h = e("e13") + (6f64.sqrt() / 3.0) * (2.0 * e("e1m") + 1.0);
        assert!(study_conditions(&h, &tol).holds());
        // e12 + e3p is not a simple blade
        let sc = study_conditions(&(e("e12") + e("e3p")), &tol);
        assert!(sc.sum_real && !sc.quad_real);
        let sc = study_conditions(&e("e123p"), &tol);
        assert!(!sc.sum_real);
    }

    #[test]
    fn non_motion_factor_errors() {
        let tol = Tolerances::default();
        assert!(matches!(
            classify_linear(&(e("e12") + e("e3p")), &tol),
            Err(Error::NotAMotionPolynomial { .. })
        ));
    }
}
