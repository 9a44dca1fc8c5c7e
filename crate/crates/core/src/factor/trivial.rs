use nalgebra::{DMatrix, DVector};

use crate::algebra::{EvenMultivector, EVEN_DIM};
use crate::linalg::SortedSvd;
use crate::poly::MotionPolynomial;
use crate::tolerance::{scale_of, Tolerances};

/// Outcome of the triviality test.
#[derive(Clone, Debug, PartialEq)]
pub struct Triviality {
    pub trivial: bool,
    /// Common non-scalar direction of all coefficients, if there is one.
    pub direction: Option<EvenMultivector>,
    /// Second singular value of the stacked non-scalar parts relative to the first.
    pub rank_ratio: f64,
    /// Residual of making `c + direction` lie on the Study quadric.
    pub quadrance_residual: f64,
}

/// Checks whether `C(t) = f(t) - h` for a real function `f` and some `h` with
/// `h rev(h)` real: the non-scalar coefficient parts must span at most one
/// direction `u`, and some `c + u` must have real quadrance.
pub fn triviality(c: &MotionPolynomial, tol: &Tolerances) -> Triviality {
    let rows = c.coeffs().len().max(1);
    let k = DMatrix::from_fn(rows, EVEN_DIM - 1, |r, col| {
        c.coeffs().get(r).map_or(0.0, |x| x.coeffs()[col + 1])
    });
    let s = c.scale_factor();
    let svd = SortedSvd::new(&k);
    let s1 = svd.sigma.first().copied().unwrap_or(0.0);
    if s1 <= tol.eps * s {
        return Triviality {
            trivial: true,
            direction: None,
            rank_ratio: 0.0,
            quadrance_residual: 0.0,
        };
    }
    let s2 = svd.sigma.get(1).copied().unwrap_or(0.0);
    let rank_ratio = s2 / s1;
    let mut u = [0.0; EVEN_DIM];
    for (i, ui) in u.iter_mut().enumerate().skip(1) {
        *ui = svd.v[(i - 1, 0)];
    }
    let u = EvenMultivector::from_coeffs(u);
    // (c + u) rev(c + u) has non-scalar part c (u + rev u) + (u rev u); solve for c.
    let a = u.reverse_sum().non_scalar_part();
    let b = u.quadrance().non_scalar_part();
    let av = DVector::from_column_slice(a.coeffs());
    let bv = DVector::from_column_slice(b.coeffs());
    let denom = av.dot(&av);
    let cc = if denom > 0.0 {
        -av.dot(&bv) / denom
    } else {
        0.0
    };
    let quadrance_residual = (a * cc + b).max_abs();
    let trivial = rank_ratio <= tol.eps * scale_of([s]) && quadrance_residual <= tol.eps * 1e2;
    Triviality {
        trivial,
        direction: Some(u),
        rank_ratio,
        quadrance_residual,
    }
}

pub fn is_trivial(c: &MotionPolynomial, tol: &Tolerances) -> bool {
    triviality(c, tol).trivial
}
