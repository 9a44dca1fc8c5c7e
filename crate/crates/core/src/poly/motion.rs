use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::real::RealPolynomial;
use crate::algebra::EvenMultivector;
use crate::error::{Error, Result};
use crate::matrix_rep::is_invertible_even;
use crate::tolerance::{scale_of, Tolerances};

/// A polynomial in a central real indeterminate `t` with coefficients in the
/// even subalgebra, lowest degree first.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct MotionPolynomial {
    coeffs: Vec<EvenMultivector>,
}

impl MotionPolynomial {
    /// Trailing exactly-zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<EvenMultivector>) -> Self {
        while coeffs.last().is_some_and(|c| c.max_abs() == 0.0) {
            coeffs.pop();
        }
        MotionPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        MotionPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: EvenMultivector) -> Self {
        Self::new(vec![c])
    }

    /// The simple motion `t - h`.
    pub fn linear(h: EvenMultivector) -> Self {
        Self::new(vec![-h, EvenMultivector::one()])
    }

    /// `(t - h_1)(t - h_2)...(t - h_n)`.
    pub fn from_factors(factors: &[EvenMultivector]) -> Self {
        factors
            .iter()
            .fold(Self::constant(EvenMultivector::one()), |acc, h| {
                acc.multiply(&Self::linear(*h))
            })
    }

    /// Embeds a real polynomial as scalar coefficients.
    pub fn from_real(p: &RealPolynomial) -> Self {
        Self::new(
            p.coeffs()
                .iter()
                .map(|c| EvenMultivector::scalar(*c))
                .collect(),
        )
    }

    /// Monic quadratic `t^2 + a t + b`.
    pub fn monic_quadratic(a: EvenMultivector, b: EvenMultivector) -> Self {
        Self::new(vec![b, a, EvenMultivector::one()])
    }

    pub fn coeffs(&self) -> &[EvenMultivector] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> EvenMultivector {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> EvenMultivector {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == EvenMultivector::one()
    }

    /// Cauchy product; coefficients multiply left to right.
    pub fn multiply(&self, rhs: &MotionPolynomial) -> MotionPolynomial {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![EvenMultivector::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a.gp(b);
            }
        }
        Self::new(out)
    }

    /// Coefficientwise reversion.
    pub fn reverse(&self) -> MotionPolynomial {
        Self::new(self.coeffs.iter().map(|c| c.reverse()).collect())
    }

    pub fn scale(&self, s: f64) -> MotionPolynomial {
        Self::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    /// Left multiplication by a constant.
    pub fn left_mul(&self, c: &EvenMultivector) -> MotionPolynomial {
        Self::new(self.coeffs.iter().map(|x| c.gp(x)).collect())
    }

    /// Value at a real parameter.
    pub fn eval(&self, t: f64) -> EvenMultivector {
        self.coeffs
            .iter()
            .rev()
            .fold(EvenMultivector::zero(), |acc, c| acc * t + *c)
    }

    /// Right evaluation `sum c_i h^i`.
    pub fn right_evaluate(&self, h: &EvenMultivector) -> EvenMultivector {
        // Horner with h on the right: ((c_n h + c_{n-1}) h + ...) h + c_0.
        self.coeffs
            .iter()
            .rev()
            .fold(EvenMultivector::zero(), |acc, c| acc.gp(h) + *c)
    }

    /// Largest absolute coefficient of any blade in any degree.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.max_abs()))
    }

    /// `max(1, max_abs)`.
    pub fn scale_factor(&self) -> f64 {
        scale_of([self.max_abs()])
    }

    pub fn approx_eq(&self, other: &MotionPolynomial, tol: f64) -> bool {
        (self.clone() - other.clone()).max_abs() <= tol
    }

    /// The real polynomial `C rev(C)`, provided it is real, nonzero and equal
    /// to `rev(C) C`.
    pub fn quadrance_poly(&self, tol: &Tolerances) -> Result<RealPolynomial> {
        let rev = self.reverse();
        let right = self.multiply(&rev);
        let left = rev.multiply(self);
        let s = self.scale_factor();
        let bound = tol.eps * s * s;
        let non_real = right
            .coeffs
            .iter()
            .fold(0.0f64, |m, c| m.max(c.non_scalar_max()));
        if non_real > bound {
            return Err(Error::NotAMotionPolynomial {
                reason: format!("C rev(C) has a non-scalar part of size {non_real:e}"),
            });
        }
        let mismatch = (right.clone() - left).max_abs();
        if mismatch > bound {
            return Err(Error::NotAMotionPolynomial {
                reason: format!("left and right quadrance differ by {mismatch:e}"),
            });
        }
        let p: Vec<f64> = right.coeffs.iter().map(|c| c.scalar_part()).collect();
        if p.iter().all(|c| c.abs() <= bound) {
            return Err(Error::ZeroQuadrance);
        }
        Ok(RealPolynomial::new(p))
    }

    pub fn is_motion_polynomial(&self, tol: &Tolerances) -> bool {
        self.quadrance_poly(tol).is_ok()
    }

    /// `C = Q M + R` for a monic real quadratic `M`; returns `(Q, R)` with
    /// `deg R < 2`.
    ///
    /// Panics if `M` is not a monic quadratic.
    pub fn divide_by_real_quadratic(
        &self,
        m: &RealPolynomial,
    ) -> (MotionPolynomial, LinearRemainder) {
        assert!(
            m.degree() == Some(2) && m.leading() == 1.0,
            "divisor must be a monic quadratic"
        );
        let (m1, m0) = (m.coeff(1), m.coeff(0));
        let mut r = self.coeffs.clone();
        if r.len() < 3 {
            r.resize(2, EvenMultivector::zero());
            return (Self::zero(), LinearRemainder { r1: r[1], r0: r[0] });
        }
        let mut q = vec![EvenMultivector::zero(); r.len() - 2];
        for k in (0..q.len()).rev() {
            let c = r[k + 2];
            q[k] = c;
            r[k + 1] -= c * m1;
            r[k] -= c * m0;
        }
        (Self::new(q), LinearRemainder { r1: r[1], r0: r[0] })
    }

    /// Right division by `t - h`: `C = Q (t - h) + r` with `r = C(h)`.
    pub fn divide_right_linear(&self, h: &EvenMultivector) -> (MotionPolynomial, EvenMultivector) {
        let n = self.coeffs.len();
        if n < 2 {
            return (Self::zero(), self.coeff(0));
        }
        let mut q = vec![EvenMultivector::zero(); n - 1];
        q[n - 2] = self.coeffs[n - 1];
        for i in (1..n - 1).rev() {
            q[i - 1] = self.coeffs[i] + q[i].gp(h);
        }
        let rem = self.coeffs[0] + q[0].gp(h);
        (Self::new(q), rem)
    }

    /// Left division by `t - h`: `C = (t - h) Q + r`.
    pub fn divide_left_linear(&self, h: &EvenMultivector) -> (MotionPolynomial, EvenMultivector) {
        let n = self.coeffs.len();
        if n < 2 {
            return (Self::zero(), self.coeff(0));
        }
        let mut q = vec![EvenMultivector::zero(); n - 1];
        q[n - 2] = self.coeffs[n - 1];
        for i in (1..n - 1).rev() {
            q[i - 1] = self.coeffs[i] + h.gp(&q[i]);
        }
        let rem = self.coeffs[0] + h.gp(&q[0]);
        (Self::new(q), rem)
    }

    /// Left-multiplies by the inverse of the leading coefficient, returning
    /// the monic polynomial and the factored-out leading coefficient.
    pub fn to_monic(&self, tol: &Tolerances) -> Result<(MotionPolynomial, EvenMultivector)> {
        let lead = self.leading();
        if self.is_monic() {
            return Ok((self.clone(), lead));
        }
        let inv = is_invertible_even(&lead, tol)?;
        let inv = inv
            .inverse()
            .ok_or(Error::NonInvertibleLeadingCoefficient)?
            .even_part();
        let mut monic = self.left_mul(&inv);
        if let Some(last) = monic.coeffs.last_mut() {
            *last = EvenMultivector::one();
        }
        Ok((monic, lead))
    }
}

/// The remainder `R = r1 t + r0` of a division by a real quadratic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearRemainder {
    pub r1: EvenMultivector,
    pub r0: EvenMultivector,
}

impl LinearRemainder {
    pub fn to_polynomial(&self) -> MotionPolynomial {
        MotionPolynomial::new(vec![self.r0, self.r1])
    }

    /// `R(h) = r1 h + r0`.
    pub fn right_evaluate(&self, h: &EvenMultivector) -> EvenMultivector {
        self.r1.gp(h) + self.r0
    }
}

impl Add for MotionPolynomial {
    type Output = MotionPolynomial;
    fn add(self, rhs: MotionPolynomial) -> MotionPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for MotionPolynomial {
    type Output = MotionPolynomial;
    fn sub(self, rhs: MotionPolynomial) -> MotionPolynomial {
        self + (-rhs)
    }
}

impl Neg for MotionPolynomial {
    type Output = MotionPolynomial;
    fn neg(self) -> MotionPolynomial {
        self.scale(-1.0)
    }
}

impl Mul for MotionPolynomial {
    type Output = MotionPolynomial;
    fn mul(self, rhs: MotionPolynomial) -> MotionPolynomial {
        self.multiply(&rhs)
    }
}

impl fmt::Display for MotionPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.max_abs() == 0.0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for MotionPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MotionPolynomial({self})")
    }
}
