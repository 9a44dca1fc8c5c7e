use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::blade::{Blade, BLADES, PRODUCT};
use super::multivector::{write_terms, Multivector};

/// Number of even-grade basis blades (1 scalar, 10 bivectors, 5 quadvectors).
pub const EVEN_DIM: usize = 16;

// canonical order restricted to even grades
const EVEN_BLADES: [u8; EVEN_DIM] = [
    0b00000, // s
    0b00011, // e12
    0b00101, // e13
    0b01001, // e1p
    0b10001, // e1m
    0b00110, // e23
    0b01010, // e2p
    0b10010, // e2m
    0b01100, // e3p
    0b10100, // e3m
    0b11000, // epm
    0b01111, // e123p
    0b10111, // e123m
    0b11011, // e12pm
    0b11101, // e13pm
    0b11110, // e23pm
];

const fn build_slot_of() -> [i8; BLADES] {
    let mut slots = [-1i8; BLADES];
    let mut i = 0;
    while i < EVEN_DIM {
        slots[EVEN_BLADES[i] as usize] = i as i8;
        i += 1;
    }
    slots
}

const SLOT_OF: [i8; BLADES] = build_slot_of();

const fn build_even_table() -> [[(f64, u8); EVEN_DIM]; EVEN_DIM] {
    let mut t = [[(0.0, 0u8); EVEN_DIM]; EVEN_DIM];
    let mut i = 0;
    while i < EVEN_DIM {
        let mut j = 0;
        while j < EVEN_DIM {
            let (sign, c) = PRODUCT[EVEN_BLADES[i] as usize][EVEN_BLADES[j] as usize];
            t[i][j] = (sign as f64, SLOT_OF[c as usize] as u8);
            j += 1;
        }
        i += 1;
    }
    t
}

static EVEN_PRODUCT: [[(f64, u8); EVEN_DIM]; EVEN_DIM] = build_even_table();

const REV_SIGN: [f64; EVEN_DIM] = [
    1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 1.0, 1.0,
];

/// Slots holding the five grade-4 coefficients.
pub const QUADVECTOR_SLOTS: std::ops::Range<usize> = 11..16;
/// Slots holding the ten bivector coefficients.
pub const BIVECTOR_SLOTS: std::ops::Range<usize> = 1..11;

/// An element of the even subalgebra CGA+ (grades 0, 2, 4).
///
/// Coefficients are stored in canonical blade order:
/// `s, e12, e13, e1p, e1m, e23, e2p, e2m, e3p, e3m, epm, e123p, e123m, e12pm, e13pm, e23pm`.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct EvenMultivector {
    coeffs: [f64; EVEN_DIM],
}

impl EvenMultivector {
    pub const fn zero() -> Self {
        EvenMultivector {
            coeffs: [0.0; EVEN_DIM],
        }
    }

    pub fn scalar(s: f64) -> Self {
        let mut e = Self::zero();
        e.coeffs[0] = s;
        e
    }

    pub fn one() -> Self {
        Self::scalar(1.0)
    }

    pub fn from_coeffs(coeffs: [f64; EVEN_DIM]) -> Self {
        EvenMultivector { coeffs }
    }

    pub fn from_slice(coeffs: &[f64]) -> Self {
        let mut c = [0.0; EVEN_DIM];
        c.copy_from_slice(coeffs);
        EvenMultivector { coeffs: c }
    }

    pub fn coeffs(&self) -> &[f64; EVEN_DIM] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64; EVEN_DIM] {
        &mut self.coeffs
    }

    /// Blade stored in `slot`.
    pub fn slot_blade(slot: usize) -> Blade {
        Blade::from_bits(EVEN_BLADES[slot])
    }

    /// Slot of an even blade, `None` for odd blades.
    pub fn slot_of(b: Blade) -> Option<usize> {
        let s = SLOT_OF[b.index()];
        (s >= 0).then_some(s as usize)
    }

    /// Basis element for `slot`.
    pub fn unit(slot: usize) -> Self {
        let mut e = Self::zero();
        e.coeffs[slot] = 1.0;
        e
    }

    /// Even basis blade by canonical name. Panics on odd or invalid names.
    pub fn blade(name: &str) -> Self {
        let b = Blade::parse(name).unwrap_or_else(|| panic!("invalid blade name {name:?}"));
        let slot = Self::slot_of(b).unwrap_or_else(|| panic!("{name} is not an even blade"));
        Self::unit(slot)
    }

    pub fn get(&self, b: Blade) -> f64 {
        Self::slot_of(b).map_or(0.0, |s| self.coeffs[s])
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Drops odd-grade coefficients of `m`.
    pub fn from_multivector_lossy(m: &Multivector) -> Self {
        let mut c = [0.0; EVEN_DIM];
        for (slot, bits) in EVEN_BLADES.iter().enumerate() {
            c[slot] = m.coeffs()[*bits as usize];
        }
        EvenMultivector { coeffs: c }
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut c = [0.0; BLADES];
        for (slot, bits) in EVEN_BLADES.iter().enumerate() {
            c[*bits as usize] = self.coeffs[slot];
        }
        Multivector::from_coeffs(c)
    }

    /// Geometric product within the even subalgebra.
    pub fn gp(&self, rhs: &EvenMultivector) -> EvenMultivector {
        let mut out = [0.0; EVEN_DIM];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            let row = &EVEN_PRODUCT[i];
            for (j, &y) in rhs.coeffs.iter().enumerate() {
                let (sign, k) = row[j];
                out[k as usize] += sign * x * y;
            }
        }
        EvenMultivector { coeffs: out }
    }

    pub fn reverse(&self) -> EvenMultivector {
        let mut out = self.coeffs;
        for (c, s) in out.iter_mut().zip(REV_SIGN.iter()) {
            *c *= s;
        }
        EvenMultivector { coeffs: out }
    }

    /// `self * rev(self)`.
    pub fn quadrance(&self) -> EvenMultivector {
        self.gp(&self.reverse())
    }

    /// `h + rev(h)`, twice the scalar-plus-quadvector part.
    pub fn reverse_sum(&self) -> EvenMultivector {
        *self + self.reverse()
    }

    pub fn scale(&self, s: f64) -> EvenMultivector {
        let mut out = self.coeffs;
        out.iter_mut().for_each(|c| *c *= s);
        EvenMultivector { coeffs: out }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn non_scalar_max(&self) -> f64 {
        self.coeffs[1..].iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_scalar(&self, tol: f64) -> bool {
        self.non_scalar_max() <= tol
    }

    /// Copy with the scalar coefficient zeroed.
    pub fn non_scalar_part(&self) -> EvenMultivector {
        let mut out = *self;
        out.coeffs[0] = 0.0;
        out
    }

    /// Commutator `ab - ba`.
    pub fn commutator(&self, rhs: &EvenMultivector) -> EvenMultivector {
        self.gp(rhs) - rhs.gp(self)
    }

    pub fn approx_eq(&self, other: &EvenMultivector, tol: f64) -> bool {
        (*self - *other).max_abs() <= tol
    }

    /// Matrix of `y -> self * y` on the even subalgebra, row-major
    /// `[row][col]`, columns indexed by the input slot.
    pub fn left_mul_matrix(&self) -> [[f64; EVEN_DIM]; EVEN_DIM] {
        let mut m = [[0.0; EVEN_DIM]; EVEN_DIM];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (j, &(sign, k)) in EVEN_PRODUCT[i].iter().enumerate() {
                m[k as usize][j] += sign * x;
            }
        }
        m
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(s, c)| (Self::slot_blade(s), *c))
            .filter(|(_, c)| *c != 0.0)
    }
}

impl From<EvenMultivector> for Multivector {
    fn from(e: EvenMultivector) -> Multivector {
        e.to_multivector()
    }
}

impl Add for EvenMultivector {
    type Output = EvenMultivector;
    fn add(mut self, rhs: EvenMultivector) -> EvenMultivector {
        self += rhs;
        self
    }
}

impl AddAssign for EvenMultivector {
    fn add_assign(&mut self, rhs: EvenMultivector) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
    }
}

impl Sub for EvenMultivector {
    type Output = EvenMultivector;
    fn sub(mut self, rhs: EvenMultivector) -> EvenMultivector {
        self -= rhs;
        self
    }
}

impl SubAssign for EvenMultivector {
    fn sub_assign(&mut self, rhs: EvenMultivector) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
    }
}

impl Neg for EvenMultivector {
    type Output = EvenMultivector;
    fn neg(self) -> EvenMultivector {
        self.scale(-1.0)
    }
}

impl Mul for EvenMultivector {
    type Output = EvenMultivector;
    fn mul(self, rhs: EvenMultivector) -> EvenMultivector {
        self.gp(&rhs)
    }
}

impl Mul<f64> for EvenMultivector {
    type Output = EvenMultivector;
    fn mul(self, rhs: f64) -> EvenMultivector {
        self.scale(rhs)
    }
}

impl Mul<EvenMultivector> for f64 {
    type Output = EvenMultivector;
    fn mul(self, rhs: EvenMultivector) -> EvenMultivector {
        rhs.scale(self)
    }
}

impl Add<f64> for EvenMultivector {
    type Output = EvenMultivector;
    fn add(mut self, rhs: f64) -> EvenMultivector {
        self.coeffs[0] += rhs;
        self
    }
}

impl Sub<f64> for EvenMultivector {
    type Output = EvenMultivector;
    fn sub(mut self, rhs: f64) -> EvenMultivector {
        self.coeffs[0] -= rhs;
        self
    }
}

impl fmt::Display for EvenMultivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms())
    }
}

impl fmt::Debug for EvenMultivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Even({self})")
    }
}
