//! Random instances for tests and benchmarks.

use rand::Rng;

use crate::algebra::{EvenMultivector, Multivector};
use crate::geometry::{embed_point, EuclideanPoint};
use crate::poly::MotionType;

/// Uniform multivector with coefficients in `[-r, r]`.
pub fn multivector<R: Rng + ?Sized>(rng: &mut R, r: f64) -> Multivector {
    let mut m = Multivector::zero();
    for i in 0..crate::algebra::BLADES {
        m.set(
            crate::algebra::Blade::from_bits(i as u8),
            rng.random_range(-r..=r),
        );
    }
    m
}

pub fn even_multivector<R: Rng + ?Sized>(rng: &mut R, r: f64) -> EvenMultivector {
    let mut m = EvenMultivector::zero();
    for c in m.coeffs_mut() {
        *c = rng.random_range(-r..=r);
    }
    m
}

fn vector<R: Rng + ?Sized>(rng: &mut R, r: f64) -> Multivector {
    Multivector::vector(std::array::from_fn(|_| rng.random_range(-r..=r)))
}

fn dot(a: &Multivector, b: &Multivector) -> f64 {
    (a.gp(b) + b.gp(a)).scalar_part() / 2.0
}

/// A simple bivector `a ^ b` whose square has the sign selecting `kind`:
/// negative for a rotation, zero for a transversion, positive for a scaling.
pub fn simple_bivector<R: Rng + ?Sized>(rng: &mut R, kind: MotionType) -> EvenMultivector {
    loop {
        let a = vector(rng, 1.0);
        let b = match kind {
            MotionType::Transversion => {
                // a null vector orthogonal to a
                let p = EuclideanPoint::new(
                    rng.random_range(-1.0..=1.0),
                    rng.random_range(-1.0..=1.0),
                    rng.random_range(-1.0..=1.0),
                );
                let n = embed_point(&p);
                let w = Multivector::blade("em");
                let a = a - w * (dot(&a, &n) / dot(&w, &n));
                return a.wedge(&n).even_part();
            }
            _ => vector(rng, 1.0),
        };
        let bv = a.wedge(&b);
        let sq = bv.gp(&bv).scalar_part();
        let ok = match kind {
            MotionType::Rotation => sq < -0.05,
            MotionType::Scaling => sq > 0.05,
            MotionType::Transversion => unreachable!(),
        };
        if ok {
            return bv.even_part();
        }
    }
}

/// `h = h0 + B` such that `t - h` is a simple motion of the given type.
pub fn simple_motion<R: Rng + ?Sized>(rng: &mut R, kind: MotionType) -> EvenMultivector {
    simple_bivector(rng, kind) * rng.random_range(0.5..=2.0) + rng.random_range(-2.0..=2.0)
}

/// Two rotations `(h1, h2)` with `h1 - rev(h2)` safely invertible.
pub fn regular_rotation_pair<R: Rng + ?Sized>(rng: &mut R) -> (EvenMultivector, EvenMultivector) {
    loop {
        let h1 = simple_motion(rng, MotionType::Rotation);
        let h2 = simple_motion(rng, MotionType::Rotation);
        let d = h1 - h2.reverse();
        let x = crate::matrix_rep::SelfReverseElement::from_multivector(
            &d.quadrance().to_multivector(),
        );
        if x.q().abs().max(x.m().abs()) > 1e-2 * (1.0 + x.norm_sq()) {
            return (h1, h2);
        }
    }
}
