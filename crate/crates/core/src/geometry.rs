//! Spheres, points and planes as grade-1 vectors, the sandwich action and
//! point trajectories under motion polynomials.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::algebra::{Blade, Multivector};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::poly::MotionPolynomial;
use crate::tolerance::{scale_of, Tolerances};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sphere {
    pub center: [f64; 3],
    pub radius: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EuclideanPoint {
    pub coords: [f64; 3],
}

impl EuclideanPoint {
    pub const ORIGIN: EuclideanPoint = EuclideanPoint { coords: [0.0; 3] };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        EuclideanPoint { coords: [x, y, z] }
    }

    pub fn distance(&self, other: &EuclideanPoint) -> f64 {
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn sub(&self, other: &EuclideanPoint) -> [f64; 3] {
        [
            self.coords[0] - other.coords[0],
            self.coords[1] - other.coords[1],
            self.coords[2] - other.coords[2],
        ]
    }
}

/// Plane with (not necessarily unit) normal and distance to the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Plane {
    pub normal: [f64; 3],
    pub distance: f64,
}

fn norm_sq(v: &[f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// `c1 e1 + c2 e2 + c3 e3 + (q-1)/2 e+ + (q+1)/2 e-` with `q = |c|^2 - r^2`.
pub fn embed_sphere(s: &Sphere) -> Multivector {
    let q = norm_sq(&s.center) - s.radius * s.radius;
    let [x, y, z] = s.center;
    Multivector::vector([x, y, z, (q - 1.0) / 2.0, (q + 1.0) / 2.0])
}

/// The radius-zero sphere at `p`; a null vector with unit weight.
pub fn embed_point(p: &EuclideanPoint) -> Multivector {
    embed_sphere(&Sphere {
        center: p.coords,
        radius: 0.0,
    })
}

/// `n1 e1 + n2 e2 + n3 e3 + |n|^2 d (e+ + e-)`; the normal is not normalized.
pub fn embed_plane(pl: &Plane) -> Multivector {
    let w = norm_sq(&pl.normal) * pl.distance;
    let [x, y, z] = pl.normal;
    Multivector::vector([x, y, z, w, w])
}

/// `g a rev(g)`.
pub fn sandwich(g: &Multivector, a: &Multivector) -> Multivector {
    g.gp(a).gp(&g.reverse())
}

/// Point weight: coefficient of `e-` minus coefficient of `e+`.
pub fn point_weight(v: &Multivector) -> f64 {
    v.get(Blade::EM) - v.get(Blade::EP)
}

/// Inverse of [`embed_point`] up to a nonzero scale.
pub fn extract_point(v: &Multivector, tol: &Tolerances) -> Result<EuclideanPoint> {
    let s = scale_of([v.max_abs()]);
    let weight = point_weight(v);
    if weight.abs() <= tol.eps * s {
        return Err(Error::PointAtInfinity { weight });
    }
    let quadrance = v.quadrance().scalar_part();
    let off_vector = (*v - v.grade(1)).max_abs();
    if quadrance.abs() > tol.eps * 1e2 * s * s || off_vector > tol.eps * s {
        return Err(Error::NotNull {
            quadrance: quadrance.abs().max(off_vector),
        });
    }
    Ok(EuclideanPoint::new(
        v.get(Blade::E1) / weight,
        v.get(Blade::E2) / weight,
        v.get(Blade::E3) / weight,
    ))
}

/// One trajectory sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrajectorySample {
    pub t: f64,
    pub point: EuclideanPoint,
}

/// Trajectory samples together with the parameters that were skipped
/// because the motion degenerates there.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    pub skipped: Vec<f64>,
}

/// Image of `p` under the displacement `C(t)`.
pub fn transform_point(
    c: &MotionPolynomial,
    p: &EuclideanPoint,
    t: f64,
    tol: &Tolerances,
) -> Result<EuclideanPoint> {
    let g = c.eval(t);
    let quad = g.quadrance().scalar_part();
    let magnitude = c
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, ci)| ci.norm() * t.abs().powi(i as i32))
        .sum::<f64>();
    if quad.abs() < tol.eps * magnitude * magnitude {
        return Err(Error::SampleAtExceptionalParameter { t });
    }
    let image = sandwich(&g.to_multivector(), &embed_point(p));
    extract_point(&image, tol)
}

/// Samples the trajectory of `p`. Exceptional parameters are skipped and
/// reported; any other failure aborts.
pub fn trajectory(
    c: &MotionPolynomial,
    p: &EuclideanPoint,
    t_samples: &[f64],
    tol: &Tolerances,
    exec: Execution,
) -> Result<Trajectory> {
    let results = exec.map(t_samples, |&t| transform_point(c, p, t, tol));
    let mut out = Trajectory::default();
    for (t, r) in t_samples.iter().zip(results) {
        match r {
            Ok(point) => out.samples.push(TrajectorySample { t: *t, point }),
            Err(Error::SampleAtExceptionalParameter { t }) => out.skipped.push(t),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// `n` equally spaced parameters from `t_min` to `t_max` inclusive.
pub fn linspace(t_min: f64, t_max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![t_min],
        _ => (0..n)
            .map(|i| t_min + (t_max - t_min) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Writes `t,x,y,z` rows with a header.
pub fn write_trajectory_csv<W: Write>(samples: &[TrajectorySample], mut out: W) -> io::Result<()> {
    writeln!(out, "t,x,y,z")?;
    for s in samples {
        let [x, y, z] = s.point.coords;
        writeln!(out, "{},{},{},{}", s.t, x, y, z)?;
    }
    Ok(())
}
