//! Faithful representation of CGA(4,1) by 4x4 complex matrices and the
//! invertibility test built on it.
//!
//! For an element `a`, the product `x = a rev(a)` is self-reverse and lives in
//! grades 0, 1, 4 and 5. Its determinant has the closed form `(q - 2im)^2`
//! with two real quadratic forms `q` and `m`, so `a` is invertible exactly when
//! `q` and `m` do not both vanish. The inverse is then `rev(a) x^-1`.

use std::sync::LazyLock;

use nalgebra::{DMatrix, DVector, Matrix4};
use num_complex::Complex64;

use crate::algebra::{Blade, EvenMultivector, Multivector, BLADES};
use crate::error::{Error, Result};
use crate::linalg::SortedSvd;
use crate::tolerance::Tolerances;

/// A 4x4 complex matrix image of an algebra element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepMatrix(pub Matrix4<Complex64>);

const O: Complex64 = Complex64::new(0.0, 0.0);
const R1: Complex64 = Complex64::new(1.0, 0.0);
const RN: Complex64 = Complex64::new(-1.0, 0.0);
const I1: Complex64 = Complex64::new(0.0, 1.0);
const IN: Complex64 = Complex64::new(0.0, -1.0);

/// Images of `e1, e2, e3, e+, e-`, row-major.
pub const GENERATORS: [[[Complex64; 4]; 4]; 5] = [
    [[O, IN, O, O], [I1, O, O, O], [O, O, O, IN], [O, O, I1, O]],
    [[RN, O, O, O], [O, R1, O, O], [O, O, RN, O], [O, O, O, R1]],
    [[O, O, O, R1], [O, O, R1, O], [O, R1, O, O], [R1, O, O, O]],
    [[O, R1, O, O], [R1, O, O, O], [O, O, O, RN], [O, O, RN, O]],
    [[O, O, O, R1], [O, O, R1, O], [O, RN, O, O], [RN, O, O, O]],
];

fn generator(i: usize) -> Matrix4<Complex64> {
    Matrix4::from_fn(|r, c| GENERATORS[i][r][c])
}

static BLADE_MATRICES: LazyLock<[Matrix4<Complex64>; BLADES]> = LazyLock::new(|| {
    std::array::from_fn(|bits| {
        // product of generators in canonical (ascending) order
        let mut m = Matrix4::identity();
        for i in 0..5 {
            if bits & (1 << i) != 0 {
                m *= generator(i);
            }
        }
        m
    })
});

impl RepMatrix {
    pub fn identity() -> Self {
        RepMatrix(Matrix4::identity())
    }

    pub fn determinant(&self) -> Complex64 {
        self.0.determinant()
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &RepMatrix) -> f64 {
        (self.0 - other.0).iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Singular values in decreasing order.
    pub fn singular_values(&self) -> [f64; 4] {
        let sv = self.0.svd(false, false).singular_values;
        let mut s = [sv[0], sv[1], sv[2], sv[3]];
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }
}

impl std::ops::Mul for RepMatrix {
    type Output = RepMatrix;
    fn mul(self, rhs: RepMatrix) -> RepMatrix {
        RepMatrix(self.0 * rhs.0)
    }
}

/// Matrix image of a basis blade.
pub fn blade_matrix(b: Blade) -> RepMatrix {
    RepMatrix(BLADE_MATRICES[b.index()])
}

/// The representation `CGA(4,1) -> Mat_4(C)`; real-linear and multiplicative.
pub fn represent(a: &Multivector) -> RepMatrix {
    let mut m = Matrix4::zeros();
    for (i, &c) in a.coeffs().iter().enumerate() {
        if c != 0.0 {
            m += BLADE_MATRICES[i] * Complex64::new(c, 0.0);
        }
    }
    RepMatrix(m)
}

/// An element with only grade 0, 1, 4 and 5 parts, as produced by `a rev(a)`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct SelfReverseElement {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub xp: f64,
    pub xm: f64,
    pub x123p: f64,
    pub x123m: f64,
    pub x12pm: f64,
    pub x13pm: f64,
    pub x23pm: f64,
    pub x123pm: f64,
}

/// Blades spanning the self-reverse subspace, in field order.
pub const SELF_REVERSE_BLADES: [&str; 12] = [
    "s", "e1", "e2", "e3", "ep", "em", "e123p", "e123m", "e12pm", "e13pm", "e23pm", "e123pm",
];

impl SelfReverseElement {
    pub fn from_array(c: [f64; 12]) -> Self {
        SelfReverseElement {
            x0: c[0],
            x1: c[1],
            x2: c[2],
            x3: c[3],
            xp: c[4],
            xm: c[5],
            x123p: c[6],
            x123m: c[7],
            x12pm: c[8],
            x13pm: c[9],
            x23pm: c[10],
            x123pm: c[11],
        }
    }

    pub fn to_array(&self) -> [f64; 12] {
        [
            self.x0,
            self.x1,
            self.x2,
            self.x3,
            self.xp,
            self.xm,
            self.x123p,
            self.x123m,
            self.x12pm,
            self.x13pm,
            self.x23pm,
            self.x123pm,
        ]
    }

    /// Reads the grade 0, 1, 4, 5 coefficients of `x`; other grades are ignored.
    pub fn from_multivector(x: &Multivector) -> Self {
        Self::from_array(SELF_REVERSE_BLADES.map(|n| x.get(Blade::parse(n).expect("valid name"))))
    }

    /// Largest coefficient outside grades 0, 1, 4, 5 of `x`.
    pub fn off_subspace(x: &Multivector) -> f64 {
        x.grade(2).max_abs().max(x.grade(3).max_abs())
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut m = Multivector::zero();
        for (name, c) in SELF_REVERSE_BLADES.iter().zip(self.to_array()) {
            m.set(Blade::parse(name).expect("valid name"), c);
        }
        m
    }

    pub fn q(&self) -> f64 {
        let s = self;
        s.x0 * s.x0 - s.x1 * s.x1 - s.x2 * s.x2 - s.x3 * s.x3 - s.xp * s.xp + s.xm * s.xm
            - s.x123p * s.x123p
            + s.x123m * s.x123m
            + s.x12pm * s.x12pm
            + s.x13pm * s.x13pm
            + s.x23pm * s.x23pm
            - s.x123pm * s.x123pm
    }

    pub fn m(&self) -> f64 {
        let s = self;
        s.x0 * s.x123pm - s.x1 * s.x23pm + s.x2 * s.x13pm - s.x3 * s.x12pm + s.xp * s.x123m
            - s.xm * s.x123p
    }

    /// Closed-form determinant `(q - 2im)^2` of the matrix representation.
    pub fn det_fast(&self) -> Complex64 {
        let z = Complex64::new(self.q(), -2.0 * self.m());
        z * z
    }

    pub fn norm_sq(&self) -> f64 {
        self.to_array().iter().map(|c| c * c).sum()
    }
}

/// Result of the invertibility test.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq)]
pub enum Invertibility {
    Invertible {
        inverse: Multivector,
        q: f64,
        m: f64,
    },
    Singular {
        q: f64,
        m: f64,
    },
}

impl Invertibility {
    pub fn is_invertible(&self) -> bool {
        matches!(self, Invertibility::Invertible { .. })
    }

    pub fn inverse(&self) -> Option<&Multivector> {
        match self {
            Invertibility::Invertible { inverse, .. } => Some(inverse),
            Invertibility::Singular { .. } => None,
        }
    }

    pub fn qm(&self) -> (f64, f64) {
        match self {
            Invertibility::Invertible { q, m, .. } | Invertibility::Singular { q, m } => (*q, *m),
        }
    }
}

/// `true` when `(q, m)` of `x` fall below `tol.invertibility * (1 + |x|^2)`.
pub fn is_singular_self_reverse(x: &SelfReverseElement, tol: &Tolerances) -> bool {
    let bound = tol.invertibility * (1.0 + x.norm_sq());
    x.q().abs().max(x.m().abs()) <= bound
}

/// Decides invertibility of `a` through `x = a rev(a)` and, if invertible,
/// returns the verified inverse `rev(a) x^-1`.
pub fn is_invertible(a: &Multivector, tol: &Tolerances) -> Result<Invertibility> {
    let x_mv = a.quadrance();
    let x = SelfReverseElement::from_multivector(&x_mv);
    let (q, m) = (x.q(), x.m());
    if is_singular_self_reverse(&x, tol) {
        return Ok(Invertibility::Singular { q, m });
    }
    let x_inv = invert_self_reverse(&x_mv, tol)?;
    let inverse = a.reverse().gp(&x_inv);
    let residual = (a.gp(&inverse) - Multivector::one()).max_abs();
    let scale = 1.0 + a.max_abs() * inverse.max_abs();
    if residual > tol.eps * 1e2 * scale {
        return Err(Error::InverseVerificationFailed { residual });
    }
    Ok(Invertibility::Invertible { inverse, q, m })
}

/// Convenience wrapper for even elements.
pub fn is_invertible_even(a: &EvenMultivector, tol: &Tolerances) -> Result<Invertibility> {
    is_invertible(&a.to_multivector(), tol)
}

/// Inverse of a self-reverse element, searched in the 12-dimensional
/// grade {0,1,4,5} subspace first and in the full algebra otherwise.
fn invert_self_reverse(x: &Multivector, tol: &Tolerances) -> Result<Multivector> {
    let one = DVector::from_fn(BLADES, |i, _| if i == 0 { 1.0 } else { 0.0 });
    let basis: Vec<Blade> = SELF_REVERSE_BLADES
        .iter()
        .map(|n| Blade::parse(n).expect("valid name"))
        .collect();
    let sub = DMatrix::from_fn(BLADES, basis.len(), |r, c| {
        x.gp(&Multivector::basis(basis[c])).coeffs()[r]
    });
    let svd = SortedSvd::new(&sub);
    let rank = svd.rank(1e-14);
    if rank == basis.len() {
        let y = svd.solve(&one, rank);
        let mut inv = Multivector::zero();
        for (b, c) in basis.iter().zip(y.iter()) {
            inv.set(*b, *c);
        }
        if (x.gp(&inv) - Multivector::one()).max_abs() <= tol.eps * (1.0 + inv.max_abs()) {
            return Ok(inv);
        }
    }
    let full = DMatrix::from_fn(BLADES, BLADES, |r, c| {
        x.gp(&Multivector::basis(Blade::from_bits(c as u8)))
            .coeffs()[r]
    });
    let svd = SortedSvd::new(&full);
    let y = svd.solve(&one, svd.rank(1e-14));
    let mut coeffs = [0.0; BLADES];
    coeffs.copy_from_slice(y.as_slice());
    Ok(Multivector::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: &str) -> Multivector {
        Multivector::blade(n)
    }

    #[test]
    fn e2_is_diagonal() {
        let m = represent(&e("e2"));
        let expected = Matrix4::from_diagonal(&nalgebra::Vector4::new(RN, R1, RN, R1));
        assert_eq!(m.0, expected);
    }

    #[test]
    fn one_is_identity() {
        assert_eq!(represent(&Multivector::one()), RepMatrix::identity());
    }

    #[test]
    fn generators_square_to_metric() {
        for (i, sign) in [1.0, 1.0, 1.0, 1.0, -1.0].iter().enumerate() {
            let g = generator(i);
            assert_eq!(g * g, Matrix4::identity() * Complex64::new(*sign, 0.0));
        }
    }

    #[test]
    fn product_of_generators() {
        let lhs = represent(&(e("e1") * e("e2")));
        let rhs = represent(&e("e1")) * represent(&e("e2"));
        assert!(lhs.max_abs_diff(&rhs) < 1e-15);
    }

    #[test]
    fn det_fast_examples() {
        let one = SelfReverseElement::from_multivector(&Multivector::one());
        assert_eq!(one.det_fast(), Complex64::new(1.0, 0.0));

        let ps = SelfReverseElement::from_multivector(&e("e123pm"));
        assert_eq!((ps.q(), ps.m()), (-1.0, 0.0));
        assert_eq!(ps.det_fast(), Complex64::new(1.0, 0.0));
        assert!((represent(&e("e123pm")).determinant() - Complex64::new(1.0, 0.0)).norm() < 1e-14);

        let mixed = e("ep") + e("e123m");
        let x = SelfReverseElement::from_multivector(&mixed);
        assert_eq!((x.q(), x.m()), (0.0, 1.0));
        assert_eq!(x.det_fast(), Complex64::new(-4.0, 0.0));
        assert!((represent(&mixed).determinant() - Complex64::new(-4.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn invertibility_examples() {
        let tol = Tolerances::default();
        let inv = is_invertible(&e("e12"), &tol).unwrap();
        assert!(inv.inverse().unwrap().approx_eq(&(-e("e12")), 1e-15));

        let null = e("e3p") + e("e3m");
        assert!(!is_invertible(&null, &tol).unwrap().is_invertible());

        let a = e("e1") + e("e23") * 2.0 + 0.5;
        let ai = is_invertible(&a, &tol).unwrap();
        let ai = ai.inverse().unwrap();
        assert!((a * *ai - Multivector::one()).max_abs() < 1e-12);
        assert!((*ai * a - Multivector::one()).max_abs() < 1e-12);
    }

    #[test]
    fn singular_matrix_is_rank_deficient() {
        let null = e("e3p") + e("e3m");
        let s = represent(&null).singular_values();
        assert!(s[3] < 1e-12 * s[0]);
    }
}
