//! Roots of real polynomials through companion-matrix eigenvalues, with
//! clustering of multiple roots and Newton polishing.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::RealPolynomial;
use crate::tolerance::Tolerances;

/// A root with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolyRoot {
    pub value: Complex64,
    pub multiplicity: usize,
}

impl PolyRoot {
    pub fn is_real(&self) -> bool {
        self.value.im == 0.0
    }
}

/// All roots of `p`, clustered by multiplicity. Real roots have exactly zero
/// imaginary part and complex roots come in exact conjugate pairs.
pub fn polynomial_roots(p: &RealPolynomial, tol: &Tolerances) -> Result<Vec<PolyRoot>> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::RootFinding("zero polynomial".into()))?;
    if deg == 0 {
        return Ok(vec![]);
    }
    let p = p.monic();
    let eig = companion_eigenvalues(&p);
    if eig.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::RootFinding("non-finite eigenvalue".into()));
    }
    let scale = eig.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    let merge = tol.root_merge * scale;

    // Eigenvalues of a k-fold root scatter by about eps^(1/k), which can
    // exceed `merge`. Loose groups are therefore tried as one multiple root
    // first and split into tight clusters only if the derivatives disagree.
    let mut roots: Vec<PolyRoot> = Vec::new();
    for group in single_linkage(&eig, LOOSE_MERGE * scale) {
        if group.len() > 1 {
            let z = polish(&p, mean(&group), group.len());
            if is_multiple_root(&p, z, group.len()) {
                roots.push(PolyRoot {
                    value: z,
                    multiplicity: group.len(),
                });
                continue;
            }
        }
        for c in greedy_clusters(&group, merge) {
            roots.push(PolyRoot {
                value: polish(&p, mean(&c), c.len()),
                multiplicity: c.len(),
            });
        }
    }

    // Snap near-real roots onto the real axis and enforce conjugate pairs.
    for r in roots.iter_mut() {
        if r.value.im.abs() <= merge {
            r.value.im = 0.0;
        }
    }
    let mut out: Vec<PolyRoot> = roots.iter().filter(|r| r.is_real()).copied().collect();
    let upper: Vec<PolyRoot> = roots.iter().filter(|r| r.value.im > 0.0).copied().collect();
    let lower: Vec<PolyRoot> = roots.iter().filter(|r| r.value.im < 0.0).copied().collect();
    let upper_count: usize = upper.iter().map(|r| r.multiplicity).sum();
    let lower_count: usize = lower.iter().map(|r| r.multiplicity).sum();
    if upper_count != lower_count {
        return Err(Error::RootFinding(format!(
            "unpaired complex roots ({upper_count} above, {lower_count} below the real axis)"
        )));
    }
    for r in upper {
        let partner = lower
            .iter()
            .min_by(|a, b| {
                (a.value - r.value.conj())
                    .norm()
                    .total_cmp(&(b.value - r.value.conj()).norm())
            })
            .expect("lower half has roots");
        if partner.multiplicity != r.multiplicity {
            return Err(Error::RootFinding(
                "conjugate roots with different multiplicities".into(),
            ));
        }
        out.push(r);
        out.push(PolyRoot {
            value: r.value.conj(),
            multiplicity: r.multiplicity,
        });
    }
    let real_count: usize = out
        .iter()
        .filter(|r| r.is_real())
        .map(|r| r.multiplicity)
        .sum();
    if real_count % 2 == 1 && deg % 2 == 0 {
        return Err(Error::OddRealRootCount { count: real_count });
    }
    out.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    Ok(out)
}

/// Roots repeated according to multiplicity.
pub fn expand_roots(roots: &[PolyRoot]) -> Vec<Complex64> {
    roots
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
        .collect()
}

/// Radius, relative to the root scale, of the loose grouping pass.
const LOOSE_MERGE: f64 = 1e-4;
/// Relative size below which `p^(j)(z)` counts as zero.
const VANISHING: f64 = 1e-13;

/// Connected components of the graph joining points closer than `radius`.
fn single_linkage(points: &[Complex64], radius: f64) -> Vec<Vec<Complex64>> {
    let n = points.len();
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in 0..i {
            if (points[i] - points[j]).norm() <= radius {
                let (from, to) = (label[i], label[j]);
                label
                    .iter_mut()
                    .filter(|l| **l == from)
                    .for_each(|l| *l = to);
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for (z, l) in points.iter().zip(label) {
        match groups.iter_mut().find(|(g, _)| *g == l) {
            Some((_, v)) => v.push(*z),
            None => groups.push((l, vec![*z])),
        }
    }
    groups.into_iter().map(|(_, v)| v).collect()
}

/// Greedy clustering: each point joins the first cluster whose mean is close.
fn greedy_clusters(points: &[Complex64], radius: f64) -> Vec<Vec<Complex64>> {
    let mut clusters: Vec<Vec<Complex64>> = Vec::new();
    for &z in points {
        match clusters.iter_mut().find(|c| (mean(c) - z).norm() <= radius) {
            Some(c) => c.push(z),
            None => clusters.push(vec![z]),
        }
    }
    clusters
}

/// True if `p` and its first `k - 1` derivatives vanish at `z`, each
/// relative to the size of its terms there.
fn is_multiple_root(p: &RealPolynomial, z: Complex64, k: usize) -> bool {
    let mut f = p.clone();
    for _ in 0..k {
        if f.eval_complex(z).norm() > VANISHING * f.magnitude_at(z.norm()).max(f64::MIN_POSITIVE) {
            return false;
        }
        f = f.derivative();
    }
    true
}

fn mean(c: &[Complex64]) -> Complex64 {
    c.iter().sum::<Complex64>() / c.len() as f64
}

fn companion_eigenvalues(p: &RealPolynomial) -> Vec<Complex64> {
    let n = p.degree().unwrap_or(0);
    let c = p.coeffs();
    let m = DMatrix::from_fn(n, n, |r, col| {
        if r == 0 {
            -c[n - 1 - col]
        } else if r == col + 1 {
            1.0
        } else {
            0.0
        }
    });
    m.complex_eigenvalues().iter().copied().collect()
}

/// Newton on the `(k-1)`-th derivative, which has a simple root at a `k`-fold
/// root of `p`. The polished value is kept only if it does not move far.
fn polish(p: &RealPolynomial, z0: Complex64, k: usize) -> Complex64 {
    let mut f = p.clone();
    for _ in 1..k {
        f = f.derivative();
    }
    let df = f.derivative();
    let mut z = z0;
    for _ in 0..20 {
        let d = df.eval_complex(z);
        if d.norm() == 0.0 {
            break;
        }
        let step = f.eval_complex(z) / d;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    let moved = (z - z0).norm();
    if moved.is_finite() && moved <= 1e-4 * (1.0 + z0.norm()) {
        z
    } else {
        z0
    }
}
