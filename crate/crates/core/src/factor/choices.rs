//! Monic real quadratic factors of a quadrance polynomial.

use num_complex::Complex64;
use serde::Serialize;

use super::roots::{expand_roots, polynomial_roots};
use crate::error::{Error, Result};
use crate::poly::RealPolynomial;
use crate::tolerance::Tolerances;

/// A monic real quadratic factor `M` of the quadrance together with the
/// cofactor `P / M` and the two roots it consumes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadraticFactorChoice {
    pub m: RealPolynomial,
    pub cofactor: RealPolynomial,
    #[serde(skip)]
    pub roots: [Complex64; 2],
}

impl QuadraticFactorChoice {
    /// `(m1, m0)` of `t^2 + m1 t + m0`.
    pub fn coefficients(&self) -> (f64, f64) {
        (self.m.coeff(1), self.m.coeff(0))
    }
}

fn quadratic_from_pair(a: Complex64, b: Complex64) -> Option<RealPolynomial> {
    // Real iff both roots are real or they are exact conjugates.
    let real_pair = a.im == 0.0 && b.im == 0.0;
    let conj_pair = a.im != 0.0 && a == b.conj();
    if !(real_pair || conj_pair) {
        return None;
    }
    let m1 = -(a + b).re;
    let m0 = (a * b).re;
    Some(RealPolynomial::monic_quadratic(m1, m0))
}

fn same_quadratic(a: &RealPolynomial, b: &RealPolynomial, tol: f64) -> bool {
    a.approx_eq(b, tol)
}

/// All distinct monic real quadratics `M` dividing `P`, each paired with its
/// cofactor. Conjugate roots stay together; real roots pair freely.
///
/// For a quartic this gives one choice for `(t^2+1)^2`, two for
/// `(t^2+1)(t^2-1)` and six for four distinct real roots.
pub fn quadratic_factor_choices(
    p: &RealPolynomial,
    tol: &Tolerances,
) -> Result<Vec<QuadraticFactorChoice>> {
    let deg = p.degree().ok_or(Error::ZeroQuadrance)?;
    if deg % 2 == 1 || deg == 0 {
        return Err(Error::RootFinding(format!(
            "quadrance must have positive even degree, got {deg}"
        )));
    }
    let monic = p.monic();
    let roots = expand_roots(&polynomial_roots(&monic, tol)?);
    let scale = roots.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    let mut out: Vec<QuadraticFactorChoice> = Vec::new();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let Some(m) = quadratic_from_pair(roots[i], roots[j]) else {
                continue;
            };
            if out
                .iter()
                .any(|c| same_quadratic(&c.m, &m, tol.root_merge * scale * scale))
            {
                continue;
            }
            let cofactor = roots
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i && *k != j)
                .fold(vec![Complex64::new(1.0, 0.0)], |acc, (_, r)| {
                    mul_linear(&acc, *r)
                });
            let cofactor = RealPolynomial::new(cofactor.iter().map(|z| z.re).collect());
            out.push(QuadraticFactorChoice {
                m,
                cofactor,
                roots: [roots[i], roots[j]],
            });
        }
    }
    Ok(out)
}

fn mul_linear(p: &[Complex64], r: Complex64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * r;
    }
    out
}

/// Distinct ways of splitting the roots of `P` into real monic quadratics,
/// each split listed as its factors in ascending coefficient order.
///
/// For a quartic with four distinct real roots there are three splits.
pub fn root_pairings(p: &RealPolynomial, tol: &Tolerances) -> Result<Vec<Vec<RealPolynomial>>> {
    let roots = expand_roots(&polynomial_roots(&p.monic(), tol)?);
    let scale = roots.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    let merge = tol.root_merge * scale * scale;
    let mut out: Vec<Vec<RealPolynomial>> = Vec::new();
    let mut current = Vec::new();
    let used = vec![false; roots.len()];
    matchings(
        &roots,
        used,
        &mut current,
        &mut |split: &[RealPolynomial]| {
            let mut split = split.to_vec();
            split.sort_by(|a, b| {
                a.coeff(1)
                    .total_cmp(&b.coeff(1))
                    .then(a.coeff(0).total_cmp(&b.coeff(0)))
            });
            let dup = out.iter().any(|s| {
                s.iter()
                    .zip(split.iter())
                    .all(|(a, b)| same_quadratic(a, b, merge))
            });
            if !dup {
                out.push(split);
            }
        },
    );
    Ok(out)
}

fn matchings(
    roots: &[Complex64],
    mut used: Vec<bool>,
    current: &mut Vec<RealPolynomial>,
    emit: &mut dyn FnMut(&[RealPolynomial]),
) {
    let Some(i) = used.iter().position(|u| !u) else {
        emit(current);
        return;
    };
    used[i] = true;
    for j in i + 1..roots.len() {
        if used[j] {
            continue;
        }
        if let Some(m) = quadratic_from_pair(roots[i], roots[j]) {
            let mut u = used.clone();
            u[j] = true;
            current.push(m);
            matchings(roots, u, current, emit);
            current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn double_rotation_quadrance() {
        let p = RealPolynomial::new(vec![1.0, 0.0, 2.0, 0.0, 1.0]);
        let c = quadratic_factor_choices(&p, &tol()).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0]
            .m
            .approx_eq(&RealPolynomial::monic_quadratic(0.0, 1.0), 1e-14));
        assert!(c[0]
            .cofactor
            .approx_eq(&RealPolynomial::monic_quadratic(0.0, 1.0), 1e-14));
        assert_eq!(root_pairings(&p, &tol()).unwrap().len(), 1);
    }

    #[test]
    fn rotation_times_scaling_quadrance() {
        let p = RealPolynomial::new(vec![-1.0, 0.0, 0.0, 0.0, 1.0]);
        let c = quadratic_factor_choices(&p, &tol()).unwrap();
        assert_eq!(c.len(), 2);
        let plus = RealPolynomial::monic_quadratic(0.0, 1.0);
        let minus = RealPolynomial::monic_quadratic(0.0, -1.0);
        assert!(c
            .iter()
            .any(|x| x.m.approx_eq(&plus, 1e-14) && x.cofactor.approx_eq(&minus, 1e-14)));
        assert!(c
            .iter()
            .any(|x| x.m.approx_eq(&minus, 1e-14) && x.cofactor.approx_eq(&plus, 1e-14)));
        assert_eq!(root_pairings(&p, &tol()).unwrap().len(), 1);
    }

    #[test]
    fn four_real_roots() {
        let p = RealPolynomial::from_roots(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(root_pairings(&p, &tol()).unwrap().len(), 3);
        let c = quadratic_factor_choices(&p, &tol()).unwrap();
        assert_eq!(c.len(), 6);
        for choice in &c {
            let prod = &choice.m * &choice.cofactor;
            assert!(prod.approx_eq(&p, 1e-12));
        }
    }

    #[test]
    fn repeated_real_roots() {
        let s = 2f64.sqrt();
        let p = RealPolynomial::from_roots(&[s, s, 0.0, 0.0]);
        // (t - s)^2, t^2 and t (t - s)
        assert_eq!(quadratic_factor_choices(&p, &tol()).unwrap().len(), 3);
        assert_eq!(root_pairings(&p, &tol()).unwrap().len(), 2);
    }
}
