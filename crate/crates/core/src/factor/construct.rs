//! Construction of irregular pairs: given a right factor `t - h2`, find `h1`
//! such that `t - h1` is a motion polynomial and `h1 - rev(h2)` is not
//! invertible.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::FactorConfig;
use super::is_irregular_pair;
use crate::algebra::{EvenMultivector, BIVECTOR_SLOTS, EVEN_DIM, QUADVECTOR_SLOTS};
use crate::error::{Error, Result};
use crate::matrix_rep::SelfReverseElement;
use crate::poly::{classify_linear, study_conditions, MotionType};
use crate::tolerance::scale_of;

/// Where the solver starts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConstructStart {
    /// Start at the given `h1`; on failure retry from small perturbations.
    Seeded(EvenMultivector),
    /// Random starting points, at most `restarts` of them.
    Random { restarts: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstructedIrregular {
    pub h1: EvenMultivector,
    /// Largest absolute component of the constraint residual.
    pub residual: f64,
    pub motion_type: MotionType,
    /// Starting points tried, including the successful one.
    pub attempts: usize,
}

const SEEDED_RETRIES: usize = 20;
const MAX_ITERATIONS: usize = 200;

fn self_reverse_of(d: &EvenMultivector) -> SelfReverseElement {
    SelfReverseElement::from_multivector(&d.quadrance().to_multivector())
}

/// Residual of the construction system at `h1`: the grade-4 part of `h1`,
/// the non-scalar part of `h1 rev(h1)`, `q` and `m` of
/// `(h1 - rev h2) rev(h1 - rev h2)`, and for a transversion the discriminant
/// of the quadrance of `t - h1`.
pub fn construction_residual(
    h1: &EvenMultivector,
    h2: &EvenMultivector,
    motion_type: Option<MotionType>,
) -> Vec<f64> {
    let mut r = Vec::with_capacity(23);
    r.extend(QUADVECTOR_SLOTS.map(|s| h1.coeffs()[s]));
    let quad = h1.quadrance();
    r.extend_from_slice(&quad.coeffs()[1..]);
    let x = self_reverse_of(&(*h1 - h2.reverse()));
    r.push(x.q());
    r.push(x.m());
    if motion_type == Some(MotionType::Transversion) {
        let trace = h1.reverse_sum().scalar_part();
        r.push(trace * trace - 4.0 * quad.scalar_part());
    }
    r
}

fn jacobian(
    h1: &EvenMultivector,
    h2: &EvenMultivector,
    motion_type: Option<MotionType>,
) -> DMatrix<f64> {
    let rows = construction_residual(h1, h2, motion_type).len();
    let d = *h1 - h2.reverse();
    let x = self_reverse_of(&d).to_array();
    let trace = h1.reverse_sum().scalar_part();
    let mut j = DMatrix::zeros(rows, EVEN_DIM);
    for k in 0..EVEN_DIM {
        let u = EvenMultivector::unit(k);
        let mut col = Vec::with_capacity(rows);
        col.extend(QUADVECTOR_SLOTS.map(|s| u.coeffs()[s]));
        let dquad = u.gp(&h1.reverse()) + h1.gp(&u.reverse());
        col.extend_from_slice(&dquad.coeffs()[1..]);
        let dx = SelfReverseElement::from_multivector(
            &(u.gp(&d.reverse()) + d.gp(&u.reverse())).to_multivector(),
        )
        .to_array();
        // Both forms are quadratic, so the symmetric difference is exact.
        let plus = SelfReverseElement::from_array(std::array::from_fn(|i| x[i] + dx[i]));
        let minus = SelfReverseElement::from_array(std::array::from_fn(|i| x[i] - dx[i]));
        col.push((plus.q() - minus.q()) / 2.0);
        col.push((plus.m() - minus.m()) / 2.0);
        if motion_type == Some(MotionType::Transversion) {
            let dtrace = 2.0 * u.scalar_part();
            col.push(2.0 * trace * dtrace - 4.0 * dquad.scalar_part());
        }
        for (r, v) in col.into_iter().enumerate() {
            j[(r, k)] = v;
        }
    }
    j
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Damped Gauss-Newton with minimum-norm steps.
fn solve_from(
    start: EvenMultivector,
    h2: &EvenMultivector,
    motion_type: Option<MotionType>,
) -> (EvenMultivector, f64) {
    let mut h = start;
    let mut res = max_abs(&construction_residual(&h, h2, motion_type));
    for _ in 0..MAX_ITERATIONS {
        if res == 0.0 {
            break;
        }
        let r = DVector::from_vec(construction_residual(&h, h2, motion_type));
        let j = jacobian(&h, h2, motion_type);
        let svd = j.svd(true, true);
        let smax = svd.singular_values.max();
        if smax == 0.0 {
            break;
        }
        let Ok(step) = svd.solve(&(-r), 1e-12 * smax) else {
            break;
        };
        let step = EvenMultivector::from_slice(step.as_slice());
        let mut alpha = 1.0;
        let mut improved = false;
        for _ in 0..30 {
            let trial = h + step * alpha;
            let tr = max_abs(&construction_residual(&trial, h2, motion_type));
            if tr < res {
                h = trial;
                res = tr;
                improved = true;
                break;
            }
            alpha /= 2.0;
        }
        if !improved || step.max_abs() * alpha <= 1e-16 * scale_of([h.max_abs()]) {
            break;
        }
    }
    (h, res)
}

/// Finds `h1` with `t - h1` a motion polynomial (optionally of a prescribed
/// type) and `h1 - rev(h2)` not invertible.
pub fn construct_irregular(
    h2: &EvenMultivector,
    motion_type: Option<MotionType>,
    start: ConstructStart,
    cfg: &FactorConfig,
) -> Result<ConstructedIrregular> {
    let tol = &cfg.tol;
    if !study_conditions(h2, tol).holds() {
        return Err(Error::NotAMotionPolynomial {
            reason: "t - h2 fails the Study conditions".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (first, restarts) = match start {
        ConstructStart::Seeded(h) => (Some(h), SEEDED_RETRIES + 1),
        ConstructStart::Random { restarts } => (None, restarts),
    };
    let mut best = f64::INFINITY;
    for attempt in 0..restarts {
        let x0 = match (first, attempt) {
            (Some(h), 0) => h,
            (Some(h), _) => {
                let mut p = h;
                for k in 0..EVEN_DIM {
                    p.coeffs_mut()[k] += rng.random_range(-1e-2..=1e-2);
                }
                p
            }
            (None, _) => {
                let mut p = EvenMultivector::scalar(rng.random_range(-2.0..=2.0));
                for k in BIVECTOR_SLOTS {
                    p.coeffs_mut()[k] = rng.random_range(-2.0..=2.0);
                }
                p
            }
        };
        let (h1, res) = solve_from(x0, h2, motion_type);
        best = best.min(res);
        let s = scale_of([h1.max_abs()]);
        if res > tol.eps * s.powi(4) {
            continue;
        }
        let Ok(kind) = classify_linear(&h1, tol) else {
            continue;
        };
        if motion_type.is_some_and(|t| t != kind) {
            continue;
        }
        if !is_irregular_pair(&h1, h2, tol)? {
            continue;
        }
        return Ok(ConstructedIrregular {
            h1,
            residual: res,
            motion_type: kind,
            attempts: attempt + 1,
        });
    }
    Err(Error::NoRealSolutionFound {
        restarts,
        best_residual: best,
    })
}
