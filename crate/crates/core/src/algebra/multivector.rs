use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use super::blade::{Blade, BLADES, PRODUCT};
use super::even::EvenMultivector;

/// A dense element of CGA(4,1): 32 coefficients indexed by blade bitmask.
#[derive(Clone, Copy, PartialEq)]
pub struct Multivector {
    coeffs: [f64; BLADES],
}

impl Default for Multivector {
    fn default() -> Self {
        Self::zero()
    }
}

impl Multivector {
    pub const fn zero() -> Self {
        Multivector {
            coeffs: [0.0; BLADES],
        }
    }

    pub fn scalar(s: f64) -> Self {
        let mut m = Self::zero();
        m.coeffs[0] = s;
        m
    }

    pub fn one() -> Self {
        Self::scalar(1.0)
    }

    /// The basis blade `b` with unit coefficient.
    pub fn basis(b: Blade) -> Self {
        Self::term(b, 1.0)
    }

    pub fn term(b: Blade, value: f64) -> Self {
        let mut m = Self::zero();
        m.coeffs[b.index()] = value;
        m
    }

    /// Basis blade by canonical name (`"e12"`, `"e3p"`, ...).
    ///
    /// Panics on an invalid name; meant for literals.
    pub fn blade(name: &str) -> Self {
        Self::basis(Blade::parse(name).unwrap_or_else(|| panic!("invalid blade name {name:?}")))
    }

    /// Grade-1 element `x e1 + y e2 + z e3 + p e+ + m e-`.
    pub fn vector(v: [f64; 5]) -> Self {
        let mut m = Self::zero();
        for (i, x) in v.iter().enumerate() {
            m.coeffs[1 << i] = *x;
        }
        m
    }

    pub fn from_coeffs(coeffs: [f64; BLADES]) -> Self {
        Multivector { coeffs }
    }

    pub fn coeffs(&self) -> &[f64; BLADES] {
        &self.coeffs
    }

    pub fn get(&self, b: Blade) -> f64 {
        self.coeffs[b.index()]
    }

    pub fn set(&mut self, b: Blade, value: f64) {
        self.coeffs[b.index()] = value;
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Geometric product.
    pub fn gp(&self, rhs: &Multivector) -> Multivector {
        let mut out = [0.0; BLADES];
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            let row = &PRODUCT[a];
            for (b, &y) in rhs.coeffs.iter().enumerate() {
                if y == 0.0 {
                    continue;
                }
                let (sign, c) = row[b];
                out[c as usize] += f64::from(sign) * x * y;
            }
        }
        Multivector { coeffs: out }
    }

    /// Reversion: grade-k part scaled by `(-1)^(k(k-1)/2)`.
    pub fn reverse(&self) -> Multivector {
        let mut out = self.coeffs;
        for (i, c) in out.iter_mut().enumerate() {
            *c *= f64::from(Blade::from_bits(i as u8).reversion_sign());
        }
        Multivector { coeffs: out }
    }

    /// Outer product: the grade-raising part of the geometric product of blades.
    pub fn wedge(&self, rhs: &Multivector) -> Multivector {
        let mut out = [0.0; BLADES];
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (b, &y) in rhs.coeffs.iter().enumerate() {
                if y == 0.0 || a & b != 0 {
                    continue;
                }
                let (sign, c) = PRODUCT[a][b];
                out[c as usize] += f64::from(sign) * x * y;
            }
        }
        Multivector { coeffs: out }
    }

    /// `a rev(a)`; real exactly on the Study variety.
    pub fn quadrance(&self) -> Multivector {
        self.gp(&self.reverse())
    }

    /// Projection onto grade `k`.
    pub fn grade(&self, k: u32) -> Multivector {
        let mut out = [0.0; BLADES];
        for (i, c) in self.coeffs.iter().enumerate() {
            if (i as u8).count_ones() == k {
                out[i] = *c;
            }
        }
        Multivector { coeffs: out }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Largest absolute non-scalar coefficient.
    pub fn non_scalar_max(&self) -> f64 {
        self.coeffs[1..].iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// True if every non-scalar coefficient is at most `tol`.
    pub fn is_scalar(&self, tol: f64) -> bool {
        self.non_scalar_max() <= tol
    }

    /// Largest absolute odd-grade coefficient.
    pub fn odd_max(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(i, _)| (*i as u8).count_ones() % 2 == 1)
            .fold(0.0, |m, (_, c)| m.max(c.abs()))
    }

    /// Even part as an [`EvenMultivector`]; odd coefficients are dropped.
    pub fn even_part(&self) -> EvenMultivector {
        EvenMultivector::from_multivector_lossy(self)
    }

    /// The even part, provided all odd coefficients are at most `tol`.
    pub fn to_even(&self, tol: f64) -> Option<EvenMultivector> {
        (self.odd_max() <= tol).then(|| self.even_part())
    }

    pub fn scale(&self, s: f64) -> Multivector {
        let mut out = self.coeffs;
        out.iter_mut().for_each(|c| *c *= s);
        Multivector { coeffs: out }
    }

    /// Non-zero terms in canonical blade order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, f64)> + '_ {
        Blade::canonical_order()
            .iter()
            .map(|b| (*b, self.coeffs[b.index()]))
            .filter(|(_, c)| *c != 0.0)
    }

    /// Componentwise closeness, absolute.
    pub fn approx_eq(&self, other: &Multivector, tol: f64) -> bool {
        (*self - *other).max_abs() <= tol
    }
}

impl Index<Blade> for Multivector {
    type Output = f64;
    fn index(&self, b: Blade) -> &f64 {
        &self.coeffs[b.index()]
    }
}

impl IndexMut<Blade> for Multivector {
    fn index_mut(&mut self, b: Blade) -> &mut f64 {
        &mut self.coeffs[b.index()]
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Multivector) -> Multivector {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Multivector) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: Multivector) -> Multivector {
        self -= rhs;
        self
    }
}

impl SubAssign for Multivector {
    fn sub_assign(&mut self, rhs: Multivector) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.gp(&rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        rhs.scale(self)
    }
}

impl Add<f64> for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: f64) -> Multivector {
        self.coeffs[0] += rhs;
        self
    }
}

impl Sub<f64> for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: f64) -> Multivector {
        self.coeffs[0] -= rhs;
        self
    }
}

pub(crate) fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (Blade, f64)>,
) -> fmt::Result {
    let mut first = true;
    for (b, c) in terms {
        let (sign, mag) = if c < 0.0 { ("-", -c) } else { ("+", c) };
        if first {
            if sign == "-" {
                f.write_str("-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        if b == Blade::SCALAR {
            write!(f, "{mag}")?;
        } else if mag == 1.0 {
            write!(f, "{b}")?;
        } else {
            write!(f, "{mag}*{b}")?;
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms())
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(name: &str) -> Multivector {
        Multivector::blade(name)
    }

    #[test]
    fn bivector_and_em_square_to_minus_one() {
        assert_eq!(e("e12") * e("e12"), Multivector::scalar(-1.0));
        assert_eq!(e("em") * e("em"), Multivector::scalar(-1.0));
        assert_eq!(e("ep") * e("ep"), Multivector::scalar(1.0));
    }

    #[test]
    fn reversion_examples() {
        assert_eq!(e("e12").reverse(), -e("e12"));
        assert_eq!(e("e123p").reverse(), e("e123p"));
        assert_eq!(e("e123").reverse(), -e("e123"));
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(e("e3").wedge(&e("ep")), e("e3p"));
        assert_eq!(e("e1").wedge(&e("e1")), Multivector::zero());
        assert_eq!(e("e12").wedge(&e("e3")), e("e123"));
        assert_eq!(e("e12").wedge(&e("e2")), Multivector::zero());
    }

    #[test]
    fn quadrance_examples() {
        assert_eq!(e("e12").quadrance(), Multivector::scalar(1.0));
        assert!((e("e3p") + e("e3m")).quadrance().max_abs() < 1e-15);
        let a = Multivector::scalar(2.0) + e("e12");
        assert_eq!(a.quadrance(), Multivector::scalar(5.0));
    }

    #[test]
    fn grade_projection() {
        let a = Multivector::scalar(1.0) + e("e1") + e("e12") + e("e123pm");
        assert_eq!(a.grade(1), e("e1"));
        assert_eq!(a.grade(5), e("e123pm"));
        assert_eq!(a.grade(3), Multivector::zero());
    }

    #[test]
    fn display_format() {
        let a = Multivector::scalar(2.0) - e("e12") + e("e3p") * 0.5;
        assert_eq!(a.to_string(), "2 - e12 + 0.5*e3p");
        assert_eq!(Multivector::zero().to_string(), "0");
    }
}
