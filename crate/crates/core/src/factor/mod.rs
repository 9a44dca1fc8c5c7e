//! Factorization of motion polynomials into linear factors, including the
//! irregular case where the division remainder has a non-invertible leading
//! coefficient.

mod choices;
mod config;
mod construct;
mod irregular;
mod regular;
mod report;
mod roots;
mod trivial;

pub use choices::{quadratic_factor_choices, root_pairings, QuadraticFactorChoice};
pub use config::FactorConfig;
pub use construct::{
    construct_irregular, construction_residual, ConstructStart, ConstructedIrregular,
};
pub use irregular::{
    affine_subspace, irregular_solve, AffineSubspace, IrregularSolution, SolutionFamily,
    SolutionSet,
};
pub use regular::{division_flag, regular_right_factor, RightFactor};
pub use report::{ChoiceOutcome, Factorization, FactorizationReport, FamilyDescriptor, Verdict};
pub use roots::{expand_roots, polynomial_roots, PolyRoot};
pub use trivial::{is_trivial, triviality, Triviality};

use crate::algebra::EvenMultivector;
use crate::error::{Error, Result};
use crate::matrix_rep::is_invertible_even;
use crate::poly::{MotionPolynomial, RealPolynomial};
use crate::tolerance::{scale_of, Tolerances};

/// `h1 - rev(h2)` is not invertible.
pub fn is_irregular_pair(
    h1: &EvenMultivector,
    h2: &EvenMultivector,
    tol: &Tolerances,
) -> Result<bool> {
    Ok(!is_invertible_even(&(*h1 - h2.reverse()), tol)?.is_invertible())
}

/// The quadratic `(t - h)(t - rev h)` of a linear factor.
pub fn factor_quadratic(h: &EvenMultivector) -> RealPolynomial {
    let trace = h.reverse_sum().scalar_part();
    let norm = h.quadrance().scalar_part();
    RealPolynomial::monic_quadratic(-trace, norm)
}

/// Irregularity per the prefix/suffix definition for a factorization
/// `(t - h_1)...(t - h_n)`: entry `l` of `prefix` (`suffix`) is set when
/// dividing `(t - h_1)...(t - h_l)` (`(t - h_l)...(t - h_n)`) by
/// `(t - h_l)(t - rev h_l)` leaves a non-invertible leading coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisionFlags {
    pub prefix: Vec<bool>,
    pub suffix: Vec<bool>,
}

impl DivisionFlags {
    /// Irregular via the right (prefix) form.
    pub fn right(&self) -> bool {
        self.prefix.iter().any(|f| *f)
    }

    /// Irregular via the left (suffix) form.
    pub fn left(&self) -> bool {
        self.suffix.iter().any(|f| *f)
    }

    pub fn irregular(&self) -> bool {
        self.right() || self.left()
    }
}

pub fn division_flags(factors: &[EvenMultivector], tol: &Tolerances) -> Result<DivisionFlags> {
    let n = factors.len();
    let mut prefix = Vec::with_capacity(n);
    let mut suffix = Vec::with_capacity(n);
    for l in 0..n {
        let m = factor_quadratic(&factors[l]);
        let pre = MotionPolynomial::from_factors(&factors[..=l]);
        let suf = MotionPolynomial::from_factors(&factors[l..]);
        prefix.push(division_flag(&pre, &m, tol)?);
        suffix.push(division_flag(&suf, &m, tol)?);
    }
    Ok(DivisionFlags { prefix, suffix })
}

fn check_quadratic(
    c: &MotionPolynomial,
    tol: &Tolerances,
) -> Result<(MotionPolynomial, RealPolynomial)> {
    match c.degree() {
        Some(2) => {}
        d => {
            return Err(Error::WrongDegree {
                expected: 2,
                actual: d.unwrap_or(0),
            })
        }
    }
    let p = c.quadrance_poly(tol)?;
    let (monic, _) = c.to_monic(tol)?;
    Ok((monic, p))
}

struct ChoiceResult {
    outcome: ChoiceOutcome,
    factorizations: Vec<Factorization>,
    family: Option<FamilyDescriptor>,
}

/// Zeroes coefficients at rounding level, below `1e-12` relative to `scale`.
fn snap_noise(h: &EvenMultivector, scale: f64) -> EvenMultivector {
    let cut = 1e-12 * scale_of([scale, h.max_abs()]);
    let mut out = *h;
    for x in out.coeffs_mut() {
        if x.abs() < cut {
            *x = 0.0;
        }
    }
    out
}

fn make_factorization(
    c: &MotionPolynomial,
    h1: EvenMultivector,
    h2: EvenMultivector,
    irregular: bool,
    quadratic: &RealPolynomial,
) -> Factorization {
    let h1 = snap_noise(&h1, c.scale_factor());
    let h2 = snap_noise(&h2, c.scale_factor());
    let residual = (MotionPolynomial::from_factors(&[h1, h2]) - c.clone()).max_abs();
    Factorization {
        factors: vec![h1, h2],
        irregular,
        residual,
        quadratic: quadratic.clone(),
    }
}

fn run_choice(
    c: &MotionPolynomial,
    choice: &QuadraticFactorChoice,
    index: usize,
    cfg: &FactorConfig,
) -> Result<ChoiceResult> {
    let tol = &cfg.tol;
    let m = &choice.m;
    let mut outcome = ChoiceOutcome {
        quadratic: m.clone(),
        branch: "regular",
        affine_dimension: None,
        solutions: Some(0),
        note: None,
    };
    match regular_right_factor(c, m, tol) {
        Err(Error::RootVerificationFailed { residual }) => {
            outcome.branch = "rejected";
            outcome.note = Some(format!(
                "regular root fails verification (residual {residual:e})"
            ));
            Ok(ChoiceResult {
                outcome,
                factorizations: vec![],
                family: None,
            })
        }
        Err(e) => Err(e),
        Ok(RightFactor::Regular { h, .. }) => {
            let (q, _) = c.divide_right_linear(&h);
            let h1 = -q.coeff(0);
            let f = make_factorization(c, h1, h, false, m);
            let ok = f.residual <= tol.reconstruction * c.scale_factor()
                && crate::poly::study_conditions(&h1, tol).holds()
                && crate::poly::study_conditions(&h, tol).holds();
            if !ok {
                outcome.branch = "rejected";
                outcome.note = Some(format!(
                    "regular factor is not a motion factorization (residual {:e})",
                    f.residual
                ));
                return Ok(ChoiceResult {
                    outcome,
                    factorizations: vec![],
                    family: None,
                });
            }
            outcome.solutions = Some(1);
            Ok(ChoiceResult {
                outcome,
                factorizations: vec![f],
                family: None,
            })
        }
        Ok(RightFactor::Irregular(rem)) => {
            outcome.branch = "irregular";
            let set = irregular_solve(c, m, &rem, cfg, index as u64)?;
            outcome.affine_dimension = set.affine_dimension();
            match set {
                SolutionSet::Empty {
                    consistency_residual,
                    ..
                } => {
                    outcome.note = Some(format!(
                        "no real solution (linear residual {consistency_residual:e})"
                    ));
                    Ok(ChoiceResult {
                        outcome,
                        factorizations: vec![],
                        family: None,
                    })
                }
                SolutionSet::Finite { solutions, .. } => {
                    let fs: Vec<Factorization> = solutions
                        .iter()
                        .map(|s| make_factorization(c, s.cofactor, s.h, true, m))
                        .collect();
                    outcome.solutions = Some(fs.len());
                    Ok(ChoiceResult {
                        outcome,
                        factorizations: fs,
                        family: None,
                    })
                }
                SolutionSet::Family(fam) => {
                    outcome.solutions = None;
                    let k = cfg.family_samples.max(5).min(fam.members.len());
                    let n = fam.members.len();
                    let samples = (0..k)
                        .map(|i| {
                            let s = &fam.members[(i + 1) * n / (k + 1)];
                            make_factorization(c, s.cofactor, s.h, true, m)
                        })
                        .collect();
                    let family = FamilyDescriptor {
                        dimension: fam.dimension,
                        affine_dimension: fam.affine_dimension,
                        base: make_factorization(c, fam.base.cofactor, fam.base.h, true, m),
                        tangents: fam.base.tangents.clone(),
                        samples,
                        members_found: n,
                    };
                    Ok(ChoiceResult {
                        outcome,
                        factorizations: vec![],
                        family: Some(family),
                    })
                }
            }
        }
    }
}

/// All factorizations of a quadratic motion polynomial into linear factors.
///
/// The polynomial is first made monic by left-multiplying with the inverse of
/// its leading coefficient; the reported factorizations are of that monic
/// polynomial.
pub fn factorize(c: &MotionPolynomial, cfg: &FactorConfig) -> Result<FactorizationReport> {
    let tol = &cfg.tol;
    let (c, _) = check_quadratic(c, tol)?;
    let quadrance = c.quadrance_poly(tol)?;
    let choices = quadratic_factor_choices(&quadrance, tol)?;
    let indexed: Vec<(usize, &QuadraticFactorChoice)> = choices.iter().enumerate().collect();
    let results = cfg
        .exec
        .map(&indexed, |(i, choice)| run_choice(&c, choice, *i, cfg));

    let scale = c.scale_factor();
    let mut factorizations: Vec<Factorization> = Vec::new();
    let mut family: Option<FamilyDescriptor> = None;
    let mut outcomes = Vec::with_capacity(results.len());
    for r in results {
        let r = r?;
        outcomes.push(r.outcome);
        for f in r.factorizations {
            let dedup =
                tol.dedup * scale_of([scale, f.factors[0].max_abs(), f.factors[1].max_abs()]);
            let dup = factorizations.iter().any(|g| {
                g.factors
                    .iter()
                    .zip(f.factors.iter())
                    .all(|(a, b)| a.approx_eq(b, dedup))
            });
            if !dup {
                factorizations.push(f);
            }
        }
        if family.is_none() {
            family = r.family;
        }
    }
    // Isolated solutions lying on the family are not separate factorizations.
    if let Some(fam) = &family {
        factorizations.retain(|f| !on_family(f, fam, tol, scale));
    }
    let verdict = if family.is_some() {
        Verdict::Infinite
    } else if factorizations.is_empty() {
        Verdict::None
    } else {
        Verdict::Finite(factorizations.len())
    };
    Ok(FactorizationReport {
        polynomial: c,
        quadrance,
        verdict,
        factorizations,
        family,
        choices: outcomes,
    })
}

fn on_family(f: &Factorization, fam: &FamilyDescriptor, tol: &Tolerances, scale: f64) -> bool {
    let dedup = tol.dedup * scale;
    fam.samples
        .iter()
        .chain(std::iter::once(&fam.base))
        .any(|g| g.factors[1].approx_eq(&f.factors[1], dedup))
}

/// Regular factorizations of a monic motion polynomial of any degree,
/// obtained by recursively splitting off regular right factors. Choices that
/// hit the irregular branch are skipped.
pub fn factorize_regular(
    c: &MotionPolynomial,
    tol: &Tolerances,
) -> Result<Vec<Vec<EvenMultivector>>> {
    let (c, _) = c.to_monic(tol)?;
    let deg = c.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(vec![vec![]]);
    }
    let p = c.quadrance_poly(tol)?;
    let mut out: Vec<Vec<EvenMultivector>> = Vec::new();
    for choice in quadratic_factor_choices(&p, tol)? {
        let h = match regular_right_factor(&c, &choice.m, tol) {
            Ok(RightFactor::Regular { h, .. }) => h,
            Ok(RightFactor::Irregular(_)) | Err(Error::RootVerificationFailed { .. }) => continue,
            Err(e) => return Err(e),
        };
        let (q, _) = c.divide_right_linear(&h);
        for mut prefix in factorize_regular(&q, tol)? {
            prefix.push(h);
            let s = scale_of(prefix.iter().map(|x| x.max_abs()));
            let dup = out.iter().any(|g| {
                g.iter()
                    .zip(prefix.iter())
                    .all(|(a, b)| a.approx_eq(b, tol.dedup * s))
            });
            if !dup {
                out.push(prefix);
            }
        }
    }
    Ok(out)
}
