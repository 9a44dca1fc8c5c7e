//! The eight acceptance criteria. Runs without the libtest harness so that
//! one PASS/FAIL line per criterion is always printed; exits non-zero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cga_motion::catalog::{self, CatalogEntry};
use cga_motion::factor::{
    construct_irregular, construction_residual, division_flag, factor_quadratic, is_irregular_pair,
    is_trivial, ConstructStart,
};
use cga_motion::geometry::{linspace, trajectory, EuclideanPoint};
use cga_motion::matrix_rep::{blade_matrix, represent, SelfReverseElement};
use cga_motion::poly::classify_linear;
use cga_motion::random;
use cga_motion::{
    factorize, Blade, EvenMultivector, Execution, FactorConfig, MotionPolynomial, MotionType,
    Verdict,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const PAIRED_ENTRIES: [&str; 6] = [
    "rotation-rotation",
    "transversion-rotation",
    "scaling-rotation",
    "transversion-transversion",
    "scaling-scaling",
    "transversion-scaling",
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn entry(name: &str) -> CatalogEntry {
    catalog::entry(name).expect("catalog entry")
}

fn max_residual(c: &MotionPolynomial, factors: &[EvenMultivector]) -> f64 {
    (MotionPolynomial::from_factors(factors) - c.clone()).max_abs()
}

/// Representation fidelity.
fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let a = random::multivector(&mut rng, 1.0);
        let b = random::multivector(&mut rng, 1.0);
        let lhs = represent(&(a * b));
        let rhs = represent(&a) * represent(&b);
        let scale = (a.norm() * b.norm()).max(1.0);
        worst = worst.max(lhs.max_abs_diff(&rhs) / scale);
    }
    ensure(worst <= 1e-10, || {
        format!("homomorphism defect {worst:e} x scale")
    })?;

    let o = Complex64::new(0.0, 0.0);
    let r = |x: f64| Complex64::new(x, 0.0);
    let i = |x: f64| Complex64::new(0.0, x);
    let published = [
        [
            [o, i(-1.0), o, o],
            [i(1.0), o, o, o],
            [o, o, o, i(-1.0)],
            [o, o, i(1.0), o],
        ],
        [
            [r(-1.0), o, o, o],
            [o, r(1.0), o, o],
            [o, o, r(-1.0), o],
            [o, o, o, r(1.0)],
        ],
        [
            [o, o, o, r(1.0)],
            [o, o, r(1.0), o],
            [o, r(1.0), o, o],
            [r(1.0), o, o, o],
        ],
        [
            [o, r(1.0), o, o],
            [r(1.0), o, o, o],
            [o, o, o, r(-1.0)],
            [o, o, r(-1.0), o],
        ],
        [
            [o, o, o, r(1.0)],
            [o, o, r(1.0), o],
            [o, r(-1.0), o, o],
            [r(-1.0), o, o, o],
        ],
    ];
    for (k, want) in published.iter().enumerate() {
        let m = blade_matrix(Blade::from_bits(1 << k));
        for (row, want_row) in want.iter().enumerate() {
            for (col, &w) in want_row.iter().enumerate() {
                let got = m.0[(row, col)];
                ensure(
                    got.re.to_bits() == w.re.to_bits() && got.im.to_bits() == w.im.to_bits(),
                    || format!("generator {k} entry ({row},{col}) is {got}, expected {w}"),
                )?;
            }
        }
    }
    Ok(format!(
        "10000 pairs, worst defect {worst:.1e} x scale; 5 generators bit-exact"
    ))
}

/// Closed-form determinant.
fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    let mut check = |x: &SelfReverseElement| {
        let det = represent(&x.to_multivector()).determinant();
        let err = (x.det_fast() - det).norm() / det.norm().max(1.0);
        worst = worst.max(err);
    };
    for _ in 0..10_000 {
        let x =
            SelfReverseElement::from_array(std::array::from_fn(|_| rng.random_range(-1.0..=1.0)));
        check(&x);
    }
    let mut off: f64 = 0.0;
    for _ in 0..10_000 {
        let a = random::multivector(&mut rng, 1.0);
        let x = a.quadrance();
        off = off.max(SelfReverseElement::off_subspace(&x) / x.max_abs().max(1.0));
        let det = represent(&x).determinant();
        let fast = SelfReverseElement::from_multivector(&x).det_fast();
        worst = worst.max((fast - det).norm() / det.norm().max(1.0));
    }
    ensure(off <= 1e-12, || {
        format!("a rev(a) leaves grades 0,1,4,5 by {off:e}")
    })?;
    ensure(worst <= 1e-8, || format!("determinant defect {worst:e}"))?;
    Ok(format!("20000 elements, worst relative defect {worst:.1e}"))
}

/// Catalog counts.
fn criterion_3() -> Outcome {
    let cfg = FactorConfig::default();
    let expected = [
        ("transversion-rotation", Verdict::Finite(1)),
        ("scaling-rotation", Verdict::Finite(1)),
        ("transversion-transversion", Verdict::Finite(2)),
        ("scaling-scaling", Verdict::Finite(5)),
        ("transversion-scaling", Verdict::Finite(3)),
        ("rotation-rotation", Verdict::Infinite),
    ];
    let mut worst: f64 = 0.0;
    let mut summary = Vec::new();
    for (name, want) in expected {
        let c = entry(name).polynomial;
        let report = factorize(&c, &cfg).map_err(|e| format!("{name}: {e}"))?;
        ensure(report.verdict == want, || {
            format!("{name}: {} instead of {want}", report.verdict)
        })?;
        for f in report.all_factorizations() {
            worst = worst.max(max_residual(&c, &f.factors));
        }
        summary.push(format!("{name} {}", report.verdict));
    }
    ensure(worst <= 1e-8, || {
        format!("reconstruction residual {worst:e}")
    })?;
    Ok(format!(
        "{}; worst residual {worst:.1e}",
        summary.join(", ")
    ))
}

/// Both irregularity routes agree.
fn criterion_4() -> Outcome {
    let cfg = FactorConfig::default();
    let tol = &cfg.tol;
    let mut compared = 0;
    let mut disagreements = Vec::new();
    let mut compare = |label: String, h1: &EvenMultivector, h2: &EvenMultivector| {
        let c = MotionPolynomial::from_factors(&[*h1, *h2]);
        let by_division = division_flag(&c, &factor_quadratic(h2), tol);
        let by_pair = is_irregular_pair(h1, h2, tol);
        compared += 1;
        match (by_division, by_pair) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => disagreements.push(format!("{label}: division {a:?}, pair {b:?}")),
        }
    };
    for e in catalog::entries() {
        compare(e.name.to_string(), &e.h1, &e.h2);
        let report = factorize(&e.polynomial, &cfg).map_err(|err| format!("{}: {err}", e.name))?;
        for (k, f) in report.all_factorizations().enumerate() {
            compare(format!("{} #{k}", e.name), &f.factors[0], &f.factors[1]);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let kinds = [
        MotionType::Rotation,
        MotionType::Transversion,
        MotionType::Scaling,
    ];
    let mut random_pairs = 0;
    while random_pairs < 200 {
        let (h1, h2) = if random_pairs % 2 == 0 {
            random::regular_rotation_pair(&mut rng)
        } else {
            let (k1, k2) = (kinds[rng.random_range(0..3)], kinds[rng.random_range(0..3)]);
            let h1 = random::simple_motion(&mut rng, k1);
            let h2 = random::simple_motion(&mut rng, k2);
            if is_irregular_pair(&h1, &h2, tol).unwrap_or(true) {
                continue;
            }
            (h1, h2)
        };
        compare(format!("random #{random_pairs}"), &h1, &h2);
        random_pairs += 1;
    }
    ensure(disagreements.is_empty(), || disagreements.join("; "))?;
    Ok(format!("{compared} pairs compared, 0 disagreements"))
}

/// Circular translation.
fn criterion_5() -> Outcome {
    let cfg = FactorConfig::default();
    let c = entry("circular-translation").polynomial;
    let report = factorize(&c, &cfg).map_err(|e| e.to_string())?;
    ensure(report.verdict == Verdict::Infinite, || {
        format!("verdict {}", report.verdict)
    })?;
    let fam = report.family.as_ref().ok_or("no family descriptor")?;
    ensure(fam.samples.len() >= 5, || {
        format!("{} samples", fam.samples.len())
    })?;
    let worst = fam
        .samples
        .iter()
        .map(|f| max_residual(&c, &f.factors))
        .fold(0.0, f64::max);
    ensure(worst <= 1e-8, || format!("sample residual {worst:e}"))?;

    let ts = linspace(-10.0, 10.0, 41);
    let origin = trajectory(
        &c,
        &EuclideanPoint::ORIGIN,
        &ts,
        &cfg.tol,
        Execution::Sequential,
    )
    .map_err(|e| e.to_string())?;
    ensure(origin.skipped.is_empty(), || {
        "origin trajectory skipped samples".into()
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut drift: f64 = 0.0;
    for _ in 0..10 {
        let p = EuclideanPoint::new(
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
            rng.random_range(-3.0..3.0),
        );
        let tr =
            trajectory(&c, &p, &ts, &cfg.tol, Execution::Sequential).map_err(|e| e.to_string())?;
        ensure(tr.samples.len() == ts.len(), || {
            "trajectory skipped samples".into()
        })?;
        let first = tr.samples[0].point.sub(&origin.samples[0].point);
        for (a, b) in tr.samples.iter().zip(&origin.samples) {
            let d = a.point.sub(&b.point);
            for k in 0..3 {
                drift = drift.max((d[k] - first[k]).abs());
            }
        }
    }
    ensure(drift <= 1e-8, || format!("offset varies by {drift:e}"))?;
    ensure(!is_trivial(&c, &cfg.tol), || "classified as trivial".into())?;
    Ok(format!(
        "infinite, {} samples with residual <= {worst:.1e}, offset drift {drift:.1e}, not trivial",
        fam.samples.len()
    ))
}

/// Villarceau motion.
fn criterion_6() -> Outcome {
    let cfg = FactorConfig::default();
    let c = entry("villarceau").polynomial;
    let report = factorize(&c, &cfg).map_err(|e| e.to_string())?;
    ensure(report.verdict == Verdict::Infinite, || {
        format!("verdict {}", report.verdict)
    })?;
    let scale = c.scale_factor();
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for f in report.all_factorizations() {
        worst = worst.max(f.factors[0].commutator(&f.factors[1]).max_abs());
        pairs += 1;
    }
    ensure(pairs >= 5, || {
        format!("only {pairs} sampled factorizations")
    })?;
    ensure(worst <= 1e-9 * scale, || format!("commutator {worst:e}"))?;
    let e12 = EvenMultivector::blade("e12");
    let e3p = EvenMultivector::blade("e3p");
    ensure(is_irregular_pair(&e12, &e3p, &cfg.tol) == Ok(true), || {
        "(e12, e3p) is not an irregular pair".into()
    })?;
    ensure(!is_trivial(&c, &cfg.tol), || "classified as trivial".into())?;
    Ok(format!(
        "infinite, {pairs} sampled pairs commute within {worst:.1e}, not trivial"
    ))
}

/// Generic regular counting.
fn criterion_7() -> Outcome {
    let cfg = FactorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..100 {
        let (h1, h2) = random::regular_rotation_pair(&mut rng);
        ensure(
            classify_linear(&h1, &cfg.tol) == Ok(MotionType::Rotation)
                && classify_linear(&h2, &cfg.tol) == Ok(MotionType::Rotation),
            || format!("instance {k}: quadrance has real roots"),
        )?;
        let c = MotionPolynomial::from_factors(&[h1, h2]);
        let report = factorize(&c, &cfg).map_err(|e| format!("instance {k}: {e}"))?;
        ensure(report.verdict == Verdict::Finite(2), || {
            format!("instance {k}: {}", report.verdict)
        })?;
        let dedup = cfg.tol.dedup * c.scale_factor().max(h1.max_abs()).max(h2.max_abs());
        let hits = report
            .factorizations
            .iter()
            .filter(|f| f.factors[0].approx_eq(&h1, dedup) && f.factors[1].approx_eq(&h2, dedup))
            .count();
        ensure(hits == 1, || {
            format!("instance {k}: construction pair matched {hits} times")
        })?;
    }
    Ok("100 instances, each finite(2) containing the construction pair".into())
}

/// Irregular construction.
fn criterion_8() -> Outcome {
    let cfg = FactorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst_res: f64 = 0.0;
    let mut worst_dist: f64 = 0.0;
    let mut random_found = 0;
    for name in PAIRED_ENTRIES {
        let e = entry(name);
        let mut seed = e.h1;
        for (i, x) in seed.coeffs_mut().iter_mut().enumerate() {
            // perturb only the non-zero support plus the scalar
            if *x != 0.0 || i == 0 {
                *x += rng.random_range(-1e-3..1e-3);
            }
        }
        let out = construct_irregular(&e.h2, None, ConstructStart::Seeded(seed), &cfg)
            .map_err(|err| format!("{name}: {err}"))?;
        let res = construction_residual(&out.h1, &e.h2, None)
            .iter()
            .fold(0.0f64, |m, r| m.max(r.abs()));
        let dist = (out.h1 - e.h1).max_abs();
        ensure(res < 1e-9, || format!("{name}: residual {res:e}"))?;
        ensure(dist < 1e-2, || {
            format!("{name}: converged {dist:e} away from the catalog factor")
        })?;
        ensure(
            is_irregular_pair(&out.h1, &e.h2, &cfg.tol) == Ok(true),
            || format!("{name}: output is not an irregular pair"),
        )?;
        worst_res = worst_res.max(res);
        worst_dist = worst_dist.max(dist);

        let kind = e.expected_types.0;
        let start = ConstructStart::Random { restarts: 200 };
        let out = construct_irregular(
            &e.h2,
            Some(kind),
            start,
            &cfg.clone().with_seed(rng.random()),
        )
        .map_err(|err| format!("{name} random start: {err}"))?;
        ensure(
            is_irregular_pair(&out.h1, &e.h2, &cfg.tol) == Ok(true),
            || format!("{name}: random-start output is not an irregular pair"),
        )?;
        ensure(classify_linear(&out.h1, &cfg.tol) == Ok(kind), || {
            format!("{name}: random-start output has the wrong type")
        })?;
        random_found += 1;
    }
    Ok(format!(
        "6 seeded runs, residual <= {worst_res:.1e}, distance <= {worst_dist:.1e}; {random_found} typed random starts irregular"
    ))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome, Duration);
    let criteria: [Criterion; 8] = [
        (
            "representation fidelity",
            criterion_1,
            Duration::from_secs(5),
        ),
        (
            "closed-form determinant",
            criterion_2,
            Duration::from_secs(10),
        ),
        ("catalog counts", criterion_3, Duration::from_secs(60)),
        (
            "division flag equals irregular pair",
            criterion_4,
            Duration::MAX,
        ),
        ("circular translation", criterion_5, Duration::MAX),
        ("villarceau motion", criterion_6, Duration::MAX),
        ("generic regular counting", criterion_7, Duration::MAX),
        ("irregular construction", criterion_8, Duration::MAX),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => Err(format!(
                "{detail}; took {:.2} s, limit {} s",
                elapsed.as_secs_f64(),
                limit.as_secs()
            )),
            other => other,
        };
        match outcome {
            Ok(detail) => println!(
                "criterion {}: PASS {name}: {detail} ({:.2} s)",
                k + 1,
                elapsed.as_secs_f64()
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {}: FAIL {name}: {detail} ({:.2} s)",
                    k + 1,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
