//! A common interface over the two curvature signs so that regions, hulls
//! and the convexity checker are written once.

use std::fmt::Debug;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::hyperbolic::{self as h, HPoint, BOUNDARY_GUARD};
use crate::models;
use crate::spherical::{self as s, SPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Hyperbolic,
    Spherical,
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Model::Hyperbolic => "hyperbolic",
            Model::Spherical => "spherical",
        })
    }
}

impl std::str::FromStr for Model {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hyperbolic" => Ok(Model::Hyperbolic),
            "spherical" => Ok(Model::Spherical),
            other => Err(GeomError::InvalidParams(format!("unknown model {other:?}"))),
        }
    }
}

pub type Vec3 = [f64; 3];

pub(crate) fn cross3(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn scale3(a: Vec3, k: f64) -> Vec3 {
    [a[0] * k, a[1] * k, a[2] * k]
}

pub(crate) fn add3(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Operations the region and hull code needs from a model.
///
/// Lifted coordinates are the hyperboloid (Minkowski inner product) for the
/// hyperbolic plane and the unit sphere (Euclidean inner product) for the
/// sphere. In both, a geodesic is the intersection with a plane through the
/// origin and signed distances to it come from a single inner product.
pub trait Geometry: Copy + Debug + Send + Sync + 'static {
    type Point: Copy + Debug + PartialEq + Send + Sync + Serialize + DeserializeOwned + 'static;

    const MODEL: Model;

    fn origin() -> Self::Point;
    fn dist(a: Self::Point, b: Self::Point) -> f64;
    fn segment_point(a: Self::Point, b: Self::Point, t: f64) -> Result<Self::Point>;
    /// Isometry taking the origin to `c`.
    fn translate(c: Self::Point, p: Self::Point) -> Result<Self::Point>;
    fn translate_inv(c: Self::Point, p: Self::Point) -> Result<Self::Point>;
    fn from_polar(c: Self::Point, d: f64, theta: f64) -> Result<Self::Point>;
    fn polar(c: Self::Point, p: Self::Point) -> Result<(f64, f64)>;

    fn lift(p: Self::Point) -> Vec3;
    /// Projects any admissible vector (e.g. a sum of lifts) back to the model.
    fn unlift(x: Vec3) -> Result<Self::Point>;
    fn inner(a: Vec3, b: Vec3) -> f64;
    /// A vector orthogonal to both arguments in the model's inner product.
    fn normal(a: Vec3, b: Vec3) -> Vec3;
    /// Signed distance to a geodesic given `<x, n>` with `<n, n> = 1`.
    fn dist_from_inner(v: f64) -> f64;
    /// `<x, x>` for points of the model, `-1` or `+1`.
    const LIFT_NORM: f64;

    /// Straightening chart about the origin (Klein or gnomonic).
    fn chart(p: Self::Point) -> Result<Complex64>;
    fn unchart(w: Complex64) -> Result<Self::Point>;
    /// Euclidean radius of the conformal disk of geodesic radius `d` about 0.
    fn conformal_radius(d: f64) -> f64;
    /// Largest useful distance from a point.
    fn max_distance() -> f64;

    /// Antipodal point, where the model has one.
    fn antipode(p: Self::Point) -> Option<Self::Point>;

    /// Plane coordinates; `None` for the point at infinity.
    fn to_plane(p: Self::Point) -> Option<Complex64>;
    fn from_plane(z: Complex64) -> Result<Self::Point>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hyperbolic;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Spherical;

impl Geometry for Hyperbolic {
    type Point = HPoint;
    const MODEL: Model = Model::Hyperbolic;
    const LIFT_NORM: f64 = -1.0;

    fn origin() -> HPoint {
        HPoint::ORIGIN
    }

    fn dist(a: HPoint, b: HPoint) -> f64 {
        h::h_dist(a, b)
    }

    fn segment_point(a: HPoint, b: HPoint, t: f64) -> Result<HPoint> {
        h::h_segment_point(a, b, t)
    }

    fn translate(c: HPoint, p: HPoint) -> Result<HPoint> {
        Ok(h::h_translate(c, p))
    }

    fn translate_inv(c: HPoint, p: HPoint) -> Result<HPoint> {
        Ok(h::h_translate_inv(c, p))
    }

    fn from_polar(c: HPoint, d: f64, theta: f64) -> Result<HPoint> {
        if !(d >= 0.0 && d.is_finite()) {
            return Err(GeomError::InvalidParams(format!("distance {d}")));
        }
        Ok(h::h_from_polar(c, d, theta))
    }

    fn polar(c: HPoint, p: HPoint) -> Result<(f64, f64)> {
        Ok(h::h_polar(c, p))
    }

    fn lift(p: HPoint) -> Vec3 {
        models::hyperboloid_lift(p)
    }

    fn unlift(x: Vec3) -> Result<HPoint> {
        if !(x[0] > 0.0 && x[0] * x[0] > x[1] * x[1] + x[2] * x[2]) {
            return Err(GeomError::Degenerate("vector is not future timelike".into()));
        }
        Ok(models::hyperboloid_unlift(x))
    }

    fn inner(a: Vec3, b: Vec3) -> f64 {
        -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    fn normal(a: Vec3, b: Vec3) -> Vec3 {
        let m = cross3(a, b);
        [-m[0], m[1], m[2]]
    }

    fn dist_from_inner(v: f64) -> f64 {
        v.asinh()
    }

    fn chart(p: HPoint) -> Result<Complex64> {
        Ok(models::poincare_to_klein(p).w())
    }

    fn unchart(w: Complex64) -> Result<HPoint> {
        Ok(models::klein_to_poincare(models::KleinPoint::new(w)?))
    }

    fn conformal_radius(d: f64) -> f64 {
        (0.5 * d).tanh().min(1.0 - BOUNDARY_GUARD)
    }

    fn max_distance() -> f64 {
        h::h_dist_origin(HPoint::from_map(Complex64::new(1.0 - BOUNDARY_GUARD, 0.0)))
    }

    fn antipode(_: HPoint) -> Option<HPoint> {
        None
    }

    fn to_plane(p: HPoint) -> Option<Complex64> {
        Some(p.z())
    }

    fn from_plane(z: Complex64) -> Result<HPoint> {
        HPoint::new(z)
    }
}

impl Geometry for Spherical {
    type Point = SPoint;
    const MODEL: Model = Model::Spherical;
    const LIFT_NORM: f64 = 1.0;

    fn origin() -> SPoint {
        SPoint::ORIGIN
    }

    fn dist(a: SPoint, b: SPoint) -> f64 {
        s::s_dist(a, b)
    }

    fn segment_point(a: SPoint, b: SPoint, t: f64) -> Result<SPoint> {
        s::s_segment_point(a, b, t)
    }

    fn translate(c: SPoint, p: SPoint) -> Result<SPoint> {
        Ok(s::s_translate(finite(c)?, p))
    }

    fn translate_inv(c: SPoint, p: SPoint) -> Result<SPoint> {
        Ok(s::s_translate_inv(finite(c)?, p))
    }

    fn from_polar(c: SPoint, d: f64, theta: f64) -> Result<SPoint> {
        s::s_from_polar(finite(c)?, d, theta)
    }

    fn polar(c: SPoint, p: SPoint) -> Result<(f64, f64)> {
        s::s_polar(finite(c)?, p)
    }

    fn lift(p: SPoint) -> Vec3 {
        p.to_sphere()
    }

    fn unlift(x: Vec3) -> Result<SPoint> {
        let n = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        if !(n > 1e-300 && n.is_finite()) {
            return Err(GeomError::Degenerate("zero vector has no direction".into()));
        }
        Ok(SPoint::from_sphere(scale3(x, 1.0 / n)))
    }

    fn inner(a: Vec3, b: Vec3) -> f64 {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    fn normal(a: Vec3, b: Vec3) -> Vec3 {
        cross3(a, b)
    }

    fn dist_from_inner(v: f64) -> f64 {
        v.clamp(-1.0, 1.0).asin()
    }

    fn chart(p: SPoint) -> Result<Complex64> {
        Ok(models::stereo_to_gnomonic(p)?.g())
    }

    fn unchart(w: Complex64) -> Result<SPoint> {
        Ok(models::gnomonic_to_stereo(models::GnomonicPoint::new(w)?))
    }

    fn conformal_radius(d: f64) -> f64 {
        (0.5 * d.min(PI)).tan()
    }

    fn max_distance() -> f64 {
        PI
    }

    fn antipode(p: SPoint) -> Option<SPoint> {
        Some(s::antipode(p))
    }

    fn to_plane(p: SPoint) -> Option<Complex64> {
        p.finite()
    }

    fn from_plane(z: Complex64) -> Result<SPoint> {
        SPoint::new(z)
    }
}

fn finite(c: SPoint) -> Result<Complex64> {
    c.finite()
        .ok_or_else(|| GeomError::InvalidParams("the point at infinity cannot be used as a frame centre".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signed_distance_agrees<G: Geometry>(a: G::Point, b: G::Point, x: G::Point, foot_dist: f64) {
        let n = G::normal(G::lift(a), G::lift(b));
        let n = scale3(n, 1.0 / G::inner(n, n).sqrt());
        let d = G::dist_from_inner(G::inner(G::lift(x), n)).abs();
        assert!((d - foot_dist).abs() < 1e-12, "{d} vs {foot_dist}");
    }

    #[test]
    fn signed_distance_to_real_axis() {
        // distance from i·y to the real-axis geodesic is its distance to 0
        let x = HPoint::from_xy(0.0, 0.4).unwrap();
        signed_distance_agrees::<Hyperbolic>(
            HPoint::from_xy(-0.5, 0.0).unwrap(),
            HPoint::from_xy(0.3, 0.0).unwrap(),
            x,
            h::h_dist_origin(x),
        );
        let y = SPoint::from_xy(0.0, 0.7).unwrap();
        signed_distance_agrees::<Spherical>(
            SPoint::from_xy(-0.5, 0.0).unwrap(),
            SPoint::from_xy(0.3, 0.0).unwrap(),
            y,
            s::s_dist(SPoint::ORIGIN, y),
        );
    }

    #[test]
    fn lifts_have_unit_norm() {
        let p = HPoint::from_xy(0.3, -0.6).unwrap();
        let x = Hyperbolic::lift(p);
        assert!((Hyperbolic::inner(x, x) + 1.0).abs() < 1e-13);
        assert!((Hyperbolic::unlift(scale3(x, 3.0)).unwrap().z() - p.z()).norm() < 1e-15);
        let q = SPoint::from_xy(2.0, 1.0).unwrap();
        let y = Spherical::lift(q);
        assert!((Spherical::inner(y, y) - 1.0).abs() < 1e-15);
        assert!(Spherical::unlift([0.0; 3]).is_err());
    }

    #[test]
    fn model_names() {
        assert_eq!("spherical".parse::<Model>().unwrap(), Model::Spherical);
        assert_eq!(Model::Hyperbolic.to_string(), "hyperbolic");
        assert!("euclidean".parse::<Model>().is_err());
    }
}
