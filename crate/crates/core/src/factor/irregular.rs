//! The irregular branch: right roots `h` of `C` with `M(h) = 0` when the
//! remainder `R = r1 t + r0` has a non-invertible leading coefficient.
//!
//! The linear conditions `r1 h = -r0`, `grade4(h) = 0` and `h_0 = -m1/2` cut
//! out an affine subspace `h_p + N z`; on it the quadratic condition
//! `h rev(h) = m0` is solved by Gauss-Newton from many seeds.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::FactorConfig;
use crate::algebra::{EvenMultivector, EVEN_DIM, QUADVECTOR_SLOTS};
use crate::error::{Error, Result};
use crate::linalg::{decide_rank, RankDecision, SortedSvd};
use crate::poly::{study_conditions, LinearRemainder, MotionPolynomial, RealPolynomial};
use crate::tolerance::scale_of;

/// A verified right factor found by the irregular solver.
#[derive(Clone, Debug, PartialEq)]
pub struct IrregularSolution {
    /// Right factor `h2`.
    pub h: EvenMultivector,
    /// Left cofactor `h1` read off from the division `C = (t - h1)(t - h)`.
    pub cofactor: EvenMultivector,
    /// Largest coefficient of `C - (t - h1)(t - h)`.
    pub residual: f64,
    /// Kernel dimension of the constraint Jacobian restricted to the affine
    /// subspace; nonzero on a positive-dimensional family.
    pub jacobian_null_dim: usize,
    /// Kernel of the Jacobian mapped into the even subalgebra.
    pub tangents: Vec<EvenMultivector>,
}

/// A positive-dimensional set of solutions.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionFamily {
    /// Dimension of the affine subspace the family lives in.
    pub affine_dimension: usize,
    /// Local dimension of the family (Jacobian kernel dimension at `base`).
    pub dimension: usize,
    pub base: IrregularSolution,
    /// Distinct verified members, `base` first.
    pub members: Vec<IrregularSolution>,
    /// Seeds that converged to some solution.
    pub converged_seeds: usize,
}

/// Solutions of the irregular system for one quadratic factor.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq)]
pub enum SolutionSet {
    /// The linear part is inconsistent or no seed converged.
    Empty {
        affine_dimension: Option<usize>,
        consistency_residual: f64,
    },
    Finite {
        affine_dimension: usize,
        solutions: Vec<IrregularSolution>,
    },
    Family(SolutionFamily),
}

impl SolutionSet {
    pub fn len(&self) -> Option<usize> {
        match self {
            SolutionSet::Empty { .. } => Some(0),
            SolutionSet::Finite { solutions, .. } => Some(solutions.len()),
            SolutionSet::Family(_) => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    pub fn affine_dimension(&self) -> Option<usize> {
        match self {
            SolutionSet::Empty {
                affine_dimension, ..
            } => *affine_dimension,
            SolutionSet::Finite {
                affine_dimension, ..
            } => Some(*affine_dimension),
            SolutionSet::Family(f) => Some(f.affine_dimension),
        }
    }
}

/// The affine subspace cut out by the linear conditions (a least-squares
/// fit when they are inconsistent).
#[derive(Clone, Debug)]
pub struct AffineSubspace {
    pub particular: EvenMultivector,
    pub directions: Vec<EvenMultivector>,
    pub singular_values: Vec<f64>,
    pub consistency_residual: f64,
    /// Whether the residual is within the reconstruction tolerance.
    pub consistent: bool,
}

impl AffineSubspace {
    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    pub fn point(&self, z: &[f64]) -> EvenMultivector {
        self.directions
            .iter()
            .zip(z)
            .fold(self.particular, |acc, (n, c)| acc + *n * *c)
    }
}

fn linear_system(rem: &LinearRemainder, m: &RealPolynomial) -> (DMatrix<f64>, DVector<f64>) {
    let rows = EVEN_DIM + QUADVECTOR_SLOTS.len() + 1;
    let l = rem.r1.left_mul_matrix();
    let mut a = DMatrix::zeros(rows, EVEN_DIM);
    let mut b = DVector::zeros(rows);
    for r in 0..EVEN_DIM {
        for c in 0..EVEN_DIM {
            a[(r, c)] = l[r][c];
        }
        b[r] = -rem.r0.coeffs()[r];
    }
    for (k, slot) in QUADVECTOR_SLOTS.enumerate() {
        a[(EVEN_DIM + k, slot)] = 1.0;
    }
    a[(rows - 1, 0)] = 1.0;
    b[rows - 1] = -m.coeff(1) / 2.0;
    (a, b)
}

/// Least-squares solution of the stacked linear system
/// `[L_r1; grade4; scalar] h = [-r0; 0; -m1/2]` and its kernel.
pub fn affine_subspace(
    rem: &LinearRemainder,
    m: &RealPolynomial,
    cfg: &FactorConfig,
) -> Result<AffineSubspace> {
    let (a, b) = linear_system(rem, m);
    let svd = SortedSvd::new(&a);
    let rank = match decide_rank(&svd.sigma, cfg.tol.rank, cfg.tol.rank_gap) {
        RankDecision::Clear(r) => r,
        RankDecision::Ambiguous(singular_values) => {
            return Err(Error::NumericalRankAmbiguity { singular_values })
        }
    };
    let x = svd.solve(&b, rank);
    let consistency_residual = (&a * &x - &b).amax();
    let scale = scale_of([rem.r1.max_abs(), rem.r0.max_abs(), m.coeff(1).abs()]);
    Ok(AffineSubspace {
        particular: EvenMultivector::from_slice(x.as_slice()),
        directions: (rank..EVEN_DIM)
            .map(|k| EvenMultivector::from_slice(svd.v.column(k).as_slice()))
            .collect(),
        singular_values: svd.sigma.clone(),
        consistency_residual,
        consistent: consistency_residual <= cfg.tol.reconstruction * scale,
    })
}

fn constraint(h: &EvenMultivector, m0: f64) -> EvenMultivector {
    h.quadrance() - m0
}

fn jacobian(space: &AffineSubspace, h: &EvenMultivector) -> DMatrix<f64> {
    let d = space.dimension();
    let rev = h.reverse();
    let mut j = DMatrix::zeros(EVEN_DIM, d);
    for (c, n) in space.directions.iter().enumerate() {
        let col = n.gp(&rev) + h.gp(&n.reverse());
        for r in 0..EVEN_DIM {
            j[(r, c)] = col.coeffs()[r];
        }
    }
    j
}

/// Gauss-Newton with minimum-norm steps from `z0`; returns the converged
/// point, if any.
fn newton(space: &AffineSubspace, m0: f64, z0: Vec<f64>, cfg: &FactorConfig) -> Option<Vec<f64>> {
    let d = z0.len();
    let mut z = DVector::from_vec(z0);
    for _ in 0..cfg.newton_iterations {
        let h = space.point(z.as_slice());
        let f = constraint(&h, m0);
        let fv = DVector::from_column_slice(f.coeffs());
        if d == 0 {
            break;
        }
        let j = jacobian(space, &h);
        let svd = j.svd(true, true);
        let smax = svd.singular_values.max();
        if smax == 0.0 {
            break;
        }
        let step = svd.solve(&(-fv), 1e-12 * smax).ok()?;
        z += &step;
        if !z.iter().all(|x| x.is_finite()) || z.amax() > 1e8 {
            return None;
        }
        if step.amax() <= 1e-15 * (1.0 + z.amax()) {
            break;
        }
    }
    let h = space.point(z.as_slice());
    let s = scale_of([h.max_abs()]);
    (constraint(&h, m0).max_abs() <= cfg.tol.eps * s * s).then(|| z.as_slice().to_vec())
}

fn seeds(d: usize, cfg: &FactorConfig, stream: u64) -> Vec<Vec<f64>> {
    let r = cfg.seed_radius;
    match d {
        0 => vec![vec![]],
        1 | 2 => {
            let n = cfg.grid_per_axis.max(2);
            let axis: Vec<f64> = (0..n)
                .map(|i| -r + 2.0 * r * i as f64 / (n - 1) as f64)
                .collect();
            if d == 1 {
                axis.iter().map(|x| vec![*x]).collect()
            } else {
                axis.iter()
                    .flat_map(|x| axis.iter().map(move |y| vec![*x, *y]))
                    .collect()
            }
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(stream);
            (0..cfg.random_seeds)
                .map(|_| (0..d).map(|_| rng.random_range(-r..=r)).collect())
                .collect()
        }
    }
}

/// Verifies `h` by dividing `C` on the right by `t - h` and returns the
/// solution with its cofactor, or `None` if any check fails.
fn verify(
    c: &MotionPolynomial,
    space: &AffineSubspace,
    h: EvenMultivector,
    cfg: &FactorConfig,
) -> Option<IrregularSolution> {
    let tol = &cfg.tol;
    let (q, rem) = c.divide_right_linear(&h);
    let s = c.scale_factor() * scale_of([h.max_abs()]).powi(2);
    if rem.max_abs() > tol.reconstruction * s || q.degree() != Some(1) {
        return None;
    }
    let h1 = -q.coeff(0);
    if !study_conditions(&h1, tol).holds() || !study_conditions(&h, tol).holds() {
        return None;
    }
    let rebuilt = MotionPolynomial::from_factors(&[h1, h]);
    let residual = (rebuilt - c.clone()).max_abs();
    if residual > tol.reconstruction * c.scale_factor() {
        return None;
    }
    let (null_dim, tangents) = if space.dimension() == 0 {
        (0, vec![])
    } else {
        let j = jacobian(space, &h);
        let svd = SortedSvd::new(&j);
        let rank = svd.rank(cfg.jacobian_rank);
        let kernel = svd.null_space(rank);
        let tangents = (0..kernel.ncols())
            .map(|k| space.point(kernel.column(k).as_slice()) - space.particular)
            .collect();
        (space.dimension() - rank, tangents)
    };
    Some(IrregularSolution {
        h,
        cofactor: h1,
        residual,
        jacobian_null_dim: null_dim,
        tangents,
    })
}

/// Irregular right roots of the monic quadratic `C` for the factor `M`,
/// given the remainder `R = r1 t + r0` of `C` divided by `M`.
///
/// `stream` separates the random seeds of different calls sharing one seed.
pub fn irregular_solve(
    c: &MotionPolynomial,
    m: &RealPolynomial,
    rem: &LinearRemainder,
    cfg: &FactorConfig,
    stream: u64,
) -> Result<SolutionSet> {
    let space = affine_subspace(rem, m, cfg)?;
    if !space.consistent {
        return Ok(SolutionSet::Empty {
            affine_dimension: None,
            consistency_residual: space.consistency_residual,
        });
    }
    let d = space.dimension();
    if d > cfg.max_dimension {
        return Err(Error::DimensionTooLarge {
            dim: d,
            max: cfg.max_dimension,
        });
    }
    let m0 = m.coeff(0);
    let starts = seeds(d, cfg, stream);
    let results = cfg
        .exec
        .map(&starts, |z0| newton(&space, m0, z0.clone(), cfg));

    let scale = c.scale_factor();
    let mut distinct: Vec<EvenMultivector> = Vec::new();
    let mut converged = 0;
    for z in results.into_iter().flatten() {
        converged += 1;
        if distinct.len() >= cfg.max_stored {
            continue;
        }
        let h = space.point(&z);
        let dedup = cfg.tol.dedup * scale_of([scale, h.max_abs()]);
        if !distinct.iter().any(|g| g.approx_eq(&h, dedup)) {
            distinct.push(h);
        }
    }
    let verified: Vec<IrregularSolution> = cfg
        .exec
        .map(&distinct, |h| verify(c, &space, *h, cfg))
        .into_iter()
        .flatten()
        .collect();

    let witnesses = verified.iter().filter(|s| s.jacobian_null_dim >= 1).count();
    if witnesses >= cfg.family_witnesses {
        let base = verified
            .iter()
            .find(|s| s.jacobian_null_dim >= 1)
            .cloned()
            .expect("witness exists");
        let mut members = vec![base.clone()];
        members.extend(verified.into_iter().filter(|s| s.h != base.h));
        return Ok(SolutionSet::Family(SolutionFamily {
            affine_dimension: d,
            dimension: base.jacobian_null_dim,
            base,
            members,
            converged_seeds: converged,
        }));
    }
    if verified.is_empty() {
        return Ok(SolutionSet::Empty {
            affine_dimension: Some(d),
            consistency_residual: space.consistency_residual,
        });
    }
    Ok(SolutionSet::Finite {
        affine_dimension: d,
        solutions: verified,
    })
}
