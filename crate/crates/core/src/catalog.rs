//! Named irregularly factorizable motions with their expected properties.

use serde::Serialize;

use crate::algebra::EvenMultivector;
use crate::error::Result;
use crate::exec::Execution;
use crate::factor::{
    division_flags, factorize, is_irregular_pair, is_trivial, FactorConfig, Verdict,
};
use crate::geometry::{trajectory, EuclideanPoint};
use crate::poly::{classify_linear, MotionPolynomial, MotionType};

const SQRT_3: f64 = 1.732_050_807_568_877_2;
const SQRT_5: f64 = 2.236_067_977_499_79;
const SQRT_6_OVER_3: f64 = 0.816_496_580_927_726;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    /// Left and right factor of `C = (t - h1)(t - h2)`.
    pub h1: EvenMultivector,
    pub h2: EvenMultivector,
    pub polynomial: MotionPolynomial,
    pub expected_verdict: Verdict,
    pub expected_types: (MotionType, MotionType),
    pub expected_commuting: bool,
    pub expected_trivial: bool,
}

impl CatalogEntry {
    fn new(
        name: &'static str,
        description: &'static str,
        h1: EvenMultivector,
        h2: EvenMultivector,
        expected_verdict: Verdict,
        expected_types: (MotionType, MotionType),
        expected_commuting: bool,
    ) -> Self {
        CatalogEntry {
            name,
            description,
            h1,
            h2,
            polynomial: MotionPolynomial::from_factors(&[h1, h2]),
            expected_verdict,
            expected_types,
            expected_commuting,
            expected_trivial: false,
        }
    }
}

fn e(name: &str) -> EvenMultivector {
    EvenMultivector::blade(name)
}

/// The eight catalog motions.
pub fn entries() -> Vec<CatalogEntry> {
    use MotionType::*;
    vec![
        CatalogEntry::new(
            "rotation-rotation",
            "rotation with rotation",
            -e("e12") + e("e13") + e("e1m") + e("e23") + e("e2m"),
            e("e12"),
            Verdict::Infinite,
            (Rotation, Rotation),
            false,
        ),
        CatalogEntry::new(
            "transversion-rotation",
            "transversion with rotation",
            e("e12") * -0.5 + e("e13") * 0.8 + e("e1m") * (49.0 / 30.0) + e("e1p") * (4.0 / 3.0),
            e("e12"),
            Verdict::Finite(1),
            (Transversion, Rotation),
            false,
        ),
        CatalogEntry::new(
            "scaling-rotation",
            "scaling with rotation",
            e("e13") + (e("e1m") * 2.0 + 1.0) * SQRT_6_OVER_3,
            e("e12"),
            Verdict::Finite(1),
            (Scaling, Rotation),
            false,
        ),
        CatalogEntry::new(
            "transversion-transversion",
            "transversion with transversion",
            e("e3m") - e("epm") - e("e13") + e("e1p") + e("e1m") - e("e23")
                + e("e2p")
                + e("e2m")
                + std::f64::consts::SQRT_2,
            e("e3p") + e("e3m"),
            Verdict::Finite(2),
            (Transversion, Transversion),
            false,
        ),
        CatalogEntry::new(
            "scaling-scaling",
            "scaling with scaling",
            -e("e3m") + e("e2m") + SQRT_3,
            -e("epm"),
            Verdict::Finite(5),
            (Scaling, Scaling),
            false,
        ),
        CatalogEntry::new(
            "transversion-scaling",
            "transversion with scaling",
            e("e2m") + (e("e2p") * SQRT_5 + e("epm")) * 0.5,
            -e("epm"),
            Verdict::Finite(3),
            (Transversion, Scaling),
            false,
        ),
        CatalogEntry::new(
            "circular-translation",
            "circular translation, x = 1, y = 0",
            -e("e12") + e("e1m") + e("e1p"),
            e("e12"),
            Verdict::Infinite,
            (Rotation, Rotation),
            false,
        ),
        CatalogEntry::new(
            "villarceau",
            "Villarceau motion",
            e("e12"),
            e("e3p"),
            Verdict::Infinite,
            (Rotation, Rotation),
            true,
        ),
    ]
}

pub fn entry(name: &str) -> Option<CatalogEntry> {
    entries().into_iter().find(|e| e.name == name)
}

/// One verified property.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub property: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationResult {
    pub name: String,
    pub verdict: String,
    pub expected: String,
    pub max_residual: f64,
    pub checks: Vec<Check>,
}

impl VerificationResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(property: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        property,
        passed,
        detail: detail.into(),
    }
}

/// Sample points for the translation test, deterministic.
fn probe_points() -> Vec<EuclideanPoint> {
    (0..10)
        .map(|i| {
            let f = i as f64;
            EuclideanPoint::new((0.7 * f).sin() * 2.0, (1.3 * f).cos() * 1.5, 0.25 * f - 1.0)
        })
        .collect()
}

/// Largest deviation from a constant offset between the trajectories of the
/// probe points and of the origin.
pub fn translation_defect(c: &MotionPolynomial, cfg: &FactorConfig) -> Result<f64> {
    let ts: Vec<f64> = (0..41).map(|i| -10.0 + 0.5 * i as f64).collect();
    let tol = &cfg.tol;
    let origin = trajectory(c, &EuclideanPoint::ORIGIN, &ts, tol, Execution::Sequential)?;
    let mut worst: f64 = 0.0;
    for p in probe_points() {
        let tr = trajectory(c, &p, &ts, tol, Execution::Sequential)?;
        let first = tr.samples[0].point.sub(&origin.samples[0].point);
        for (a, b) in tr.samples.iter().zip(origin.samples.iter()) {
            let d = a.point.sub(&b.point);
            for k in 0..3 {
                worst = worst.max((d[k] - first[k]).abs());
            }
        }
    }
    Ok(worst)
}

/// Runs every property check for `entry`.
pub fn verify_entry(entry: &CatalogEntry, cfg: &FactorConfig) -> VerificationResult {
    let tol = &cfg.tol;
    let c = &entry.polynomial;
    let scale = c.scale_factor();
    let mut checks = Vec::new();

    let rebuilt = MotionPolynomial::from_factors(&[entry.h1, entry.h2]);
    let rec = (rebuilt - c.clone()).max_abs();
    checks.push(check(
        "product",
        rec <= tol.reconstruction * scale,
        format!("residual {rec:e}"),
    ));
    checks.push(check("motion polynomial", c.is_motion_polynomial(tol), ""));

    match is_irregular_pair(&entry.h1, &entry.h2, tol) {
        Ok(flag) => checks.push(check("irregular pair", flag, format!("{flag}"))),
        Err(err) => checks.push(check("irregular pair", false, err.to_string())),
    }

    let types = (
        classify_linear(&entry.h1, tol),
        classify_linear(&entry.h2, tol),
    );
    let types_ok = types == (Ok(entry.expected_types.0), Ok(entry.expected_types.1));
    checks.push(check(
        "motion types",
        types_ok,
        format!("{:?} vs expected {:?}", types, entry.expected_types),
    ));

    let comm = entry.h1.commutator(&entry.h2).max_abs();
    let commuting = comm <= tol.eps * scale * scale;
    checks.push(check(
        "commuting factors",
        commuting == entry.expected_commuting,
        format!("commutator {comm:e}"),
    ));

    let trivial = is_trivial(c, tol);
    checks.push(check(
        "triviality",
        trivial == entry.expected_trivial,
        format!("trivial = {trivial}"),
    ));

    match division_flags(&[entry.h1, entry.h2], tol) {
        Ok(flags) => checks.push(check(
            "right and left division agree",
            flags.right() == flags.left(),
            format!("right = {}, left = {}", flags.right(), flags.left()),
        )),
        Err(err) => checks.push(check(
            "right and left division agree",
            false,
            err.to_string(),
        )),
    }

    let mut verdict = "error".to_string();
    let mut max_residual = f64::NAN;
    match factorize(c, cfg) {
        Ok(report) => {
            verdict = report.verdict.to_string();
            max_residual = report.max_residual();
            checks.push(check(
                "verdict",
                report.verdict == entry.expected_verdict,
                format!("{} vs expected {}", report.verdict, entry.expected_verdict),
            ));
            checks.push(check(
                "reconstruction",
                max_residual <= tol.reconstruction * scale,
                format!("max residual {max_residual:e}"),
            ));
            if let Some(fam) = &report.family {
                checks.push(check(
                    "family samples",
                    fam.samples.len() >= 5,
                    format!("{} samples", fam.samples.len()),
                ));
                if entry.expected_commuting {
                    let worst = fam
                        .samples
                        .iter()
                        .map(|f| f.factors[0].commutator(&f.factors[1]).max_abs())
                        .fold(0.0, f64::max);
                    checks.push(check(
                        "family commutes",
                        worst <= tol.eps * scale * scale,
                        format!("largest commutator {worst:e}"),
                    ));
                }
            }
        }
        Err(err) => checks.push(check("verdict", false, err.to_string())),
    }

    if entry.name == "circular-translation" {
        match translation_defect(c, cfg) {
            Ok(d) => checks.push(check(
                "translation",
                d <= tol.reconstruction,
                format!("offset variation {d:e}"),
            )),
            Err(err) => checks.push(check("translation", false, err.to_string())),
        }
    }

    VerificationResult {
        name: entry.name.to_string(),
        verdict,
        expected: entry.expected_verdict.to_string(),
        max_residual,
        checks,
    }
}
