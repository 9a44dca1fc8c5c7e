use cga_motion::catalog;
use cga_motion::factor::{
    affine_subspace, construct_irregular, construction_residual, division_flag, division_flags,
    factor_quadratic, factorize_regular, is_irregular_pair, is_trivial, quadratic_factor_choices,
    regular_right_factor, root_pairings, ConstructStart, RightFactor,
};
use cga_motion::poly::{classify_linear, LinearRemainder};
use cga_motion::random::{regular_rotation_pair, simple_motion};
use cga_motion::{
    factorize, Error, EvenMultivector, Execution, FactorConfig, MotionPolynomial, MotionType,
    RealPolynomial, Tolerances, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn e(name: &str) -> EvenMultivector {
    EvenMultivector::blade(name)
}

fn quartic(roots: &[f64], complex: &[(f64, f64)]) -> RealPolynomial {
    let mut p = RealPolynomial::from_roots(roots);
    for (m1, m0) in complex {
        p = &p * &RealPolynomial::monic_quadratic(*m1, *m0);
    }
    p
}

#[test]
fn factor_choices_for_quartics() {
    let tol = Tolerances::default();
    let cases: [(RealPolynomial, usize, usize); 4] = [
        (quartic(&[], &[(0.0, 1.0), (0.0, 1.0)]), 1, 1),
        (quartic(&[1.0, -1.0], &[(0.0, 1.0)]), 2, 1),
        (quartic(&[1.0, 2.0, 3.0, 4.0], &[]), 6, 3),
        (quartic(&[0.0, 0.0], &[(0.0, -2.0)]), 4, 2),
    ];
    for (p, choices, pairings) in cases {
        let c = quadratic_factor_choices(&p, &tol).unwrap();
        assert_eq!(c.len(), choices, "{p}");
        for ch in &c {
            let back = &ch.m * &ch.cofactor;
            assert!(back.approx_eq(&p, 1e-9), "{p}: {} * {}", ch.m, ch.cofactor);
            assert_eq!(ch.m.degree(), Some(2));
        }
        let m = root_pairings(&p, &tol).unwrap();
        assert_eq!(m.len(), pairings, "{p}");
    }
}

#[test]
fn random_regular_pairs_give_two_factorizations() {
    let cfg = FactorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let (h1, h2) = regular_rotation_pair(&mut rng);
        assert!(!is_irregular_pair(&h1, &h2, &cfg.tol).unwrap());
        let c = MotionPolynomial::from_factors(&[h1, h2]);
        let report = factorize(&c, &cfg).unwrap();
        assert_eq!(report.verdict, Verdict::Finite(2));
        assert!(report.irregular_flags().iter().all(|f| !f));
        let hit = report
            .factorizations
            .iter()
            .any(|f| f.factors[0].approx_eq(&h1, 1e-7) && f.factors[1].approx_eq(&h2, 1e-7));
        assert!(hit);
    }
}

#[test]
fn regular_right_factor_recovers_the_right_factor() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..25 {
        let (h1, h2) = regular_rotation_pair(&mut rng);
        let c = MotionPolynomial::from_factors(&[h1, h2]);
        match regular_right_factor(&c, &factor_quadratic(&h2), &tol).unwrap() {
            RightFactor::Regular { h, residual } => {
                assert!(h.approx_eq(&h2, 1e-9), "{h} vs {h2}");
                assert!(residual <= 1e-9);
            }
            RightFactor::Irregular(_) => panic!("regular pair reported irregular"),
        }
    }
}

#[test]
fn mixed_random_products_are_sound_and_bounded() {
    let cfg = FactorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let kinds = [
        MotionType::Rotation,
        MotionType::Scaling,
        MotionType::Transversion,
    ];
    for _ in 0..30 {
        let (k1, k2) = (kinds[rng.random_range(0..3)], kinds[rng.random_range(0..3)]);
        let h1 = simple_motion(&mut rng, k1);
        let h2 = simple_motion(&mut rng, k2);
        let c = MotionPolynomial::from_factors(&[h1, h2]);
        let report = match factorize(&c, &cfg) {
            Ok(r) => r,
            Err(Error::NumericalRankAmbiguity { .. }) => continue,
            Err(err) => panic!("{err}"),
        };
        let scale = c.scale_factor();
        assert!(
            report.max_residual() <= 1e-8 * scale,
            "{}",
            report.max_residual()
        );
        if let Some(n) = report.verdict.count() {
            assert!(n <= 12);
            assert!(n >= 1, "the construction pair itself is a factorization");
        }
        for f in report.all_factorizations() {
            let flag = is_irregular_pair(&f.factors[0], &f.factors[1], &cfg.tol).unwrap();
            assert_eq!(flag, f.irregular);
        }
    }
}

#[test]
fn four_real_roots_give_up_to_six_regular_factorizations() {
    let cfg = FactorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut seen_six = false;
    for _ in 0..20 {
        let h1 = simple_motion(&mut rng, MotionType::Scaling);
        let h2 = simple_motion(&mut rng, MotionType::Scaling);
        let c = MotionPolynomial::from_factors(&[h1, h2]);
        let report = factorize(&c, &cfg).unwrap();
        let n = report.verdict.count().expect("finite");
        assert!((1..=12).contains(&n));
        seen_six |= n == 6;
    }
    assert!(seen_six);
}

#[test]
fn catalog_counts() {
    let cfg = FactorConfig::default();
    for entry in catalog::entries() {
        let report = factorize(&entry.polynomial, &cfg).unwrap();
        assert_eq!(report.verdict, entry.expected_verdict, "{}", entry.name);
        assert!(report.max_residual() <= 1e-8 * entry.polynomial.scale_factor());
        assert!(report.is_irregularly_factorizable(), "{}", entry.name);
    }
}

#[test]
fn villarceau_family_contains_the_catalog_factorization() {
    let cfg = FactorConfig::default();
    let entry = catalog::entry("villarceau").unwrap();
    let c = &entry.polynomial;
    let report = factorize(c, &cfg).unwrap();
    let fam = report.family.as_ref().expect("family");
    assert!(fam.dimension >= 1);
    assert!(fam.samples.len() >= 5);
    for s in &fam.samples {
        assert!(s.residual <= 1e-8);
        assert!(s.factors[0].commutator(&s.factors[1]).max_abs() <= 1e-9 * c.scale_factor());
    }
    // e3p satisfies the family's linear and quadratic conditions
    let m = RealPolynomial::monic_quadratic(0.0, 1.0);
    let (_, rem) = c.divide_by_real_quadratic(&m);
    let space = affine_subspace(&rem, &m, &cfg).unwrap();
    assert_eq!(space.dimension(), fam.affine_dimension);
    let offset = e("e3p") - space.particular;
    let mut projected = offset;
    for d in &space.directions {
        let dv: f64 = d
            .coeffs()
            .iter()
            .zip(offset.coeffs())
            .map(|(a, b)| a * b)
            .sum();
        let dd: f64 = d.coeffs().iter().map(|a| a * a).sum();
        projected -= *d * (dv / dd);
    }
    assert!(projected.max_abs() < 1e-9, "{projected}");
    assert!(rem.right_evaluate(&e("e3p")).max_abs() < 1e-12);
    assert!(c.right_evaluate(&e("e3p")).max_abs() < 1e-12);
}

#[test]
fn irregularity_examples() {
    let tol = Tolerances::default();
    assert!(is_irregular_pair(&e("e12"), &e("e3p"), &tol).unwrap());
    for entry in catalog::entries() {
        assert!(
            is_irregular_pair(&entry.h1, &entry.h2, &tol).unwrap(),
            "{}",
            entry.name
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (h1, h2) = regular_rotation_pair(&mut rng);
    assert!(!is_irregular_pair(&h1, &h2, &tol).unwrap());
}

#[test]
fn right_and_left_division_agree_on_catalog() {
    let tol = Tolerances::default();
    for entry in catalog::entries() {
        let flags = division_flags(&[entry.h1, entry.h2], &tol).unwrap();
        assert!(flags.right() && flags.left(), "{}: {flags:?}", entry.name);
        let m = factor_quadratic(&entry.h2);
        assert!(division_flag(&entry.polynomial, &m, &tol).unwrap());
    }
}

#[test]
fn construct_irregular_recovers_catalog_factors() {
    let cfg = FactorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for entry in catalog::entries() {
        let mut start = entry.h1;
        for x in start.coeffs_mut() {
            *x += rng.random_range(-1e-4..1e-4);
        }
        let out =
            construct_irregular(&entry.h2, None, ConstructStart::Seeded(start), &cfg).unwrap();
        assert!(out.residual < 1e-9, "{}: {}", entry.name, out.residual);
        assert!(
            out.h1.approx_eq(&entry.h1, 1e-2),
            "{}: {}",
            entry.name,
            out.h1
        );
        assert!(is_irregular_pair(&out.h1, &entry.h2, &cfg.tol).unwrap());
    }
}

#[test]
fn construct_irregular_honours_the_type_constraint() {
    let cfg = FactorConfig::default().with_seed(4);
    for (h2, kind) in [
        (e("e12"), MotionType::Rotation),
        (e("e12"), MotionType::Scaling),
        (e("e3p") + e("e3m"), MotionType::Transversion),
        (-e("epm"), MotionType::Scaling),
    ] {
        let out = construct_irregular(
            &h2,
            Some(kind),
            ConstructStart::Random { restarts: 200 },
            &cfg,
        )
        .unwrap();
        assert_eq!(out.motion_type, kind);
        assert_eq!(classify_linear(&out.h1, &cfg.tol).unwrap(), kind);
        assert!(is_irregular_pair(&out.h1, &h2, &cfg.tol).unwrap());
        let r = construction_residual(&out.h1, &h2, Some(kind));
        assert!(r.iter().all(|x| x.abs() < 1e-9));
    }
}

#[test]
fn construct_irregular_reports_failure() {
    let cfg = FactorConfig::default();
    let err = construct_irregular(
        &e("e12"),
        Some(MotionType::Rotation),
        ConstructStart::Random { restarts: 0 },
        &cfg,
    )
    .unwrap_err();
    assert!(matches!(err, Error::NoRealSolutionFound { .. }));
}

#[test]
fn triviality_examples() {
    let tol = Tolerances::default();
    let trivial = MotionPolynomial::linear(e("e12")).multiply(&MotionPolynomial::new(vec![
        EvenMultivector::one() - e("e12"),
        EvenMultivector::one(),
    ]));
    assert!(is_trivial(&trivial, &tol));
    assert!(!is_trivial(
        &catalog::entry("villarceau").unwrap().polynomial,
        &tol
    ));
    assert!(!is_trivial(
        &catalog::entry("circular-translation").unwrap().polynomial,
        &tol
    ));
}

#[test]
fn execution_modes_and_seeds_are_deterministic() {
    let entry = catalog::entry("rotation-rotation").unwrap();
    let seq = FactorConfig::default()
        .with_execution(Execution::Sequential)
        .with_seed(9);
    let par = FactorConfig::default()
        .with_execution(Execution::Parallel)
        .with_seed(9);
    let a = serde_json::to_string(&factorize(&entry.polynomial, &seq).unwrap()).unwrap();
    let b = serde_json::to_string(&factorize(&entry.polynomial, &par).unwrap()).unwrap();
    let c = serde_json::to_string(&factorize(&entry.polynomial, &par).unwrap()).unwrap();
    assert_eq!(a, b);
    assert_eq!(b, c);
}

#[test]
fn input_errors() {
    let cfg = FactorConfig::default();
    let linear = MotionPolynomial::linear(e("e12"));
    assert!(matches!(
        factorize(&linear, &cfg),
        Err(Error::WrongDegree {
            expected: 2,
            actual: 1
        })
    ));
    let bad = MotionPolynomial::from_factors(&[e("e12") + e("e3p"), e("e12")]);
    assert!(matches!(
        factorize(&bad, &cfg),
        Err(Error::NotAMotionPolynomial { .. })
    ));
    let too_small = FactorConfig {
        max_dimension: 1,
        ..FactorConfig::default()
    };
    let rr = catalog::entry("rotation-rotation").unwrap().polynomial;
    assert!(matches!(
        factorize(&rr, &too_small),
        Err(Error::DimensionTooLarge { dim: 3, max: 1 })
    ));
}

#[test]
fn straddling_singular_values_are_reported() {
    let cfg = FactorConfig::default();
    let rem = LinearRemainder {
        r1: EvenMultivector::scalar(1e-8),
        r0: EvenMultivector::zero(),
    };
    let m = RealPolynomial::monic_quadratic(0.0, 1.0);
    assert!(matches!(
        affine_subspace(&rem, &m, &cfg),
        Err(Error::NumericalRankAmbiguity { .. })
    ));
}

#[test]
fn non_monic_input_is_normalized() {
    let cfg = FactorConfig::default();
    let entry = catalog::entry("transversion-scaling").unwrap();
    let lead = EvenMultivector::scalar(3.0) + e("e12");
    let c = MotionPolynomial::constant(lead).multiply(&entry.polynomial);
    let report = factorize(&c, &cfg).unwrap();
    assert_eq!(report.verdict, Verdict::Finite(3));
    assert!(report.polynomial.approx_eq(&entry.polynomial, 1e-12));
}

#[test]
fn higher_degree_regular_recursion() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let hs: Vec<EvenMultivector> = (0..3)
        .map(|_| simple_motion(&mut rng, MotionType::Rotation))
        .collect();
    let c = MotionPolynomial::from_factors(&hs);
    let all = factorize_regular(&c, &tol).unwrap();
    assert_eq!(all.len(), 6);
    for f in &all {
        assert!(MotionPolynomial::from_factors(f).approx_eq(&c, 1e-7 * c.scale_factor()));
    }
    assert!(all
        .iter()
        .any(|f| f.iter().zip(&hs).all(|(a, b)| a.approx_eq(b, 1e-7))));
}
