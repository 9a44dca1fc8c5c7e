use crate::algebra::EvenMultivector;
use crate::error::{Error, Result};
use crate::matrix_rep::{is_invertible_even, Invertibility};
use crate::poly::{LinearRemainder, MotionPolynomial, RealPolynomial};
use crate::tolerance::{scale_of, Tolerances};

/// Outcome of the regular step for one quadratic factor `M`.
#[derive(Clone, Debug, PartialEq)]
pub enum RightFactor {
    /// `r1` is invertible and `h = -r1^-1 r0` is a verified right root.
    Regular { h: EvenMultivector, residual: f64 },
    /// `r1` is not invertible; the remainder is handed to the irregular solver.
    Irregular(LinearRemainder),
}

/// Divides `C` by `M` and, when the remainder's leading coefficient is
/// invertible, returns the unique right root `h = -r1^-1 r0` for this `M`.
pub fn regular_right_factor(
    c: &MotionPolynomial,
    m: &RealPolynomial,
    tol: &Tolerances,
) -> Result<RightFactor> {
    let (_, rem) = c.divide_by_real_quadratic(m);
    match is_invertible_even(&rem.r1, tol)? {
        Invertibility::Singular { .. } => Ok(RightFactor::Irregular(rem)),
        Invertibility::Invertible { inverse, .. } => {
            let h = -(inverse.even_part() * rem.r0);
            let residual = c.right_evaluate(&h).max_abs();
            let s = c.scale_factor() * scale_of([h.max_abs()]).powi(2);
            if residual > tol.reconstruction * s {
                return Err(Error::RootVerificationFailed { residual });
            }
            Ok(RightFactor::Regular { h, residual })
        }
    }
}

/// Leading coefficient flag of the division route: `true` when dividing `C`
/// by `M` leaves a remainder with non-invertible `r1`.
pub fn division_flag(c: &MotionPolynomial, m: &RealPolynomial, tol: &Tolerances) -> Result<bool> {
    let (_, rem) = c.divide_by_real_quadratic(m);
    Ok(!is_invertible_even(&rem.r1, tol)?.is_invertible())
}
