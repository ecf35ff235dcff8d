//! Poincaré disk model of the hyperbolic plane (curvature -1).
//!
//! Points live in the open unit disk with metric `2|dz| / (1 - |z|^2)`.
//! Geodesics are diameters or arcs of circles orthogonal to the unit circle.
//! The isometry `h_translate(c, ·)` carries the origin to `c`; radial
//! dilations about an arbitrary point are conjugates of the origin-centred
//! dilation `r -> tanh(k atanh r)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::numerics::{atanh_recip_from_excess, atanh_stable, coth_minus_one, Tolerances};

/// Points closer than this to the unit circle are rejected at construction.
pub const BOUNDARY_GUARD: f64 = 1e-9;

const LARGEST_BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// A point of the open Poincaré disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Complex64", into = "Complex64")]
pub struct HPoint(Complex64);

impl TryFrom<Complex64> for HPoint {
    type Error = GeomError;
    fn try_from(z: Complex64) -> Result<Self> {
        HPoint::new(z)
    }
}

impl From<HPoint> for Complex64 {
    fn from(p: HPoint) -> Self {
        p.0
    }
}

impl HPoint {
    pub const ORIGIN: HPoint = HPoint(Complex64 { re: 0.0, im: 0.0 });

    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) || z.norm() >= 1.0 - BOUNDARY_GUARD {
            return Err(GeomError::OutsideDisk { re: z.re, im: z.im });
        }
        Ok(HPoint(z))
    }

    pub fn from_xy(x: f64, y: f64) -> Result<Self> {
        Self::new(Complex64::new(x, y))
    }

    /// Point at hyperbolic distance `d` from the origin in direction `theta`.
    pub fn from_polar_distance(d: f64, theta: f64) -> Result<Self> {
        Self::new(Complex64::from_polar((0.5 * d).tanh(), theta))
    }

    /// Images of maps that provably stay in the open disk. Only the strict
    /// `|z| < 1` condition is enforced here, not the boundary guard.
    pub(crate) fn from_map(z: Complex64) -> Self {
        debug_assert!(z.norm() < 1.0 || !z.re.is_finite(), "map left the disk: {z}");
        HPoint(z)
    }

    pub fn z(self) -> Complex64 {
        self.0
    }

    pub fn norm(self) -> f64 {
        self.0.norm()
    }
}

/// Distance from the origin, `2 atanh |z|`.
pub fn h_dist_origin(z: HPoint) -> f64 {
    2.0 * atanh_stable(z.norm().min(LARGEST_BELOW_ONE)).unwrap_or(f64::INFINITY)
}

/// Hyperbolic distance `2 atanh |(v - u) / (1 - conj(u) v)|`.
pub fn h_dist(u: HPoint, v: HPoint) -> f64 {
    let (u, v) = (u.z(), v.z());
    let num = (v - u).norm();
    if num == 0.0 {
        return 0.0;
    }
    let den = (Complex64::new(1.0, 0.0) - u.conj() * v).norm();
    2.0 * atanh_stable((num / den).min(LARGEST_BELOW_ONE)).unwrap_or(f64::INFINITY)
}

pub(crate) fn translate_raw(c: Complex64, z: Complex64) -> Complex64 {
    (z + c) / (Complex64::new(1.0, 0.0) + c.conj() * z)
}

/// The isometry `(z + c) / (1 + conj(c) z)` carrying the origin to `c`.
pub fn h_translate(c: HPoint, z: HPoint) -> HPoint {
    HPoint::from_map(translate_raw(c.z(), z.z()))
}

/// Inverse of [`h_translate`]: carries `c` to the origin.
pub fn h_translate_inv(c: HPoint, z: HPoint) -> HPoint {
    HPoint::from_map(translate_raw(-c.z(), z.z()))
}

fn check_factor(k: f64) -> Result<()> {
    if !(k.is_finite() && k > 0.0) {
        return Err(GeomError::InvalidParams(format!("dilation factor {k} must be positive")));
    }
    Ok(())
}

fn dilate_origin_raw(k: f64, z: Complex64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        return z;
    }
    let half_dist = atanh_stable(r.min(LARGEST_BELOW_ONE)).unwrap_or(f64::INFINITY);
    let r2 = (k * half_dist).tanh();
    z * (r2 / r)
}

/// Dilation about the origin: modulus `r -> tanh(k atanh r)`, argument kept.
pub fn h_dilate_origin(k: f64, z: HPoint) -> Result<HPoint> {
    check_factor(k)?;
    Ok(HPoint::from_map(dilate_origin_raw(k, z.z())))
}

/// Radial dilation about `c` by factor `k`; `s = 1/k` is kept alongside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HDilation {
    pub c: HPoint,
    pub k: f64,
    pub s: f64,
}

impl HDilation {
    pub fn new(c: HPoint, k: f64) -> Result<Self> {
        check_factor(k)?;
        Ok(Self { c, k, s: 1.0 / k })
    }

    pub fn inverse(&self) -> HDilation {
        HDilation { c: self.c, k: self.s, s: self.k }
    }
}

/// `τ_c ∘ δ_{0,k} ∘ τ_c^{-1}`.
pub fn h_dilate(d: &HDilation, z: HPoint) -> HPoint {
    if d.k == 1.0 {
        return z;
    }
    let local = translate_raw(-d.c.z(), z.z());
    HPoint::from_map(translate_raw(d.c.z(), dilate_origin_raw(d.k, local)))
}

/// Geodesic polar coordinates `(distance, direction)` of `z` about `c`.
pub fn h_polar(c: HPoint, z: HPoint) -> (f64, f64) {
    let w = translate_raw(-c.z(), z.z());
    (h_dist_origin(HPoint::from_map(w)), w.arg())
}

/// Inverse of [`h_polar`].
pub fn h_from_polar(c: HPoint, d: f64, theta: f64) -> HPoint {
    let w = Complex64::from_polar((0.5 * d).tanh(), theta);
    HPoint::from_map(translate_raw(c.z(), w))
}

/// A complete hyperbolic geodesic in the disk picture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum HGeodesic {
    /// Diameter along the unit `direction`.
    Diameter { direction: Complex64 },
    /// Arc of the circle `|z - center| = radius`, with `|center|^2 = 1 + radius^2`.
    Arc { center: Complex64, radius: f64 },
}

impl HGeodesic {
    /// Residual of the defining equation at `z` (zero on the geodesic).
    pub fn residual(&self, z: Complex64) -> f64 {
        match *self {
            HGeodesic::Diameter { direction } => (direction.conj() * z).im,
            HGeodesic::Arc { center, radius } => (z - center).norm() - radius,
        }
    }
}

/// Signed test for "0, u, v collinear" scaled by the point moduli.
pub(crate) fn collinear_with_origin(u: Complex64, v: Complex64, eq_abs: f64) -> bool {
    (u.conj() * v).im.abs() < eq_abs * u.norm().max(v.norm())
}

/// Circle centre from `a · e^{iθ_j} = q_j`, the linear system behind the
/// orthogonal-circle construction.
pub(crate) fn solve_center(theta1: f64, q1: f64, theta2: f64, q2: f64) -> Complex64 {
    let det = (theta2 - theta1).sin();
    let a1 = (q1 * theta2.sin() - q2 * theta1.sin()) / det;
    let a2 = (q2 * theta1.cos() - q1 * theta2.cos()) / det;
    Complex64::new(a1, a2)
}

/// The unique geodesic through `u` and `v`.
pub fn h_geodesic_through(u: HPoint, v: HPoint) -> Result<HGeodesic> {
    h_geodesic_through_tol(u, v, Tolerances::default().eq_abs)
}

pub fn h_geodesic_through_tol(u: HPoint, v: HPoint, eq_abs: f64) -> Result<HGeodesic> {
    let (zu, zv) = (u.z(), v.z());
    if zu == zv {
        return Err(GeomError::Degenerate("geodesic through coincident points".into()));
    }
    if collinear_with_origin(zu, zv, eq_abs) {
        let far = if zu.norm() >= zv.norm() { zu } else { zv };
        return Ok(HGeodesic::Diameter { direction: far / far.norm() });
    }
    // a · (u/|u|) = (1/|u| + |u|) / 2, likewise for v.
    let (r1, t1) = zu.to_polar();
    let (r2, t2) = zv.to_polar();
    let center = solve_center(t1, 0.5 * (1.0 / r1 + r1), t2, 0.5 * (1.0 / r2 + r2));
    let radius = (center.norm_sqr() - 1.0).sqrt();
    Ok(HGeodesic::Arc { center, radius })
}

/// Point at hyperbolic distance `t · d(u, v)` from `u` along `[u, v]`.
pub fn h_segment_point(u: HPoint, v: HPoint, t: f64) -> Result<HPoint> {
    if u == v {
        return Err(GeomError::Degenerate("segment between coincident points".into()));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(GeomError::InvalidParams(format!("segment parameter {t} not in [0, 1]")));
    }
    if t == 0.0 {
        return Ok(u);
    }
    if t == 1.0 {
        return Ok(v);
    }
    let w = translate_raw(-u.z(), v.z());
    let r = w.norm();
    let half = atanh_stable(r.min(LARGEST_BELOW_ONE))?;
    let moved = w * ((t * half).tanh() / r);
    Ok(HPoint::from_map(translate_raw(u.z(), moved)))
}

/// Modulus of the in-disk intersection of the ray `e^{iλ}` with an arc.
pub fn h_ray_arc_intersect(g: &HGeodesic, lambda: f64) -> Result<f64> {
    let HGeodesic::Arc { center, .. } = *g else {
        return Err(GeomError::NoIntersection("geodesic is a diameter".into()));
    };
    let omega = center.re * lambda.cos() + center.im * lambda.sin();
    if !(omega >= 1.0) {
        return Err(GeomError::NoIntersection(format!(
            "a1 cos(l) + a2 sin(l) = {omega} < 1"
        )));
    }
    // ω - sqrt(ω² - 1), written without cancellation
    Ok(1.0 / (omega + (omega * omega - 1.0).sqrt()))
}

/// Configuration of the radial comparison: two dilated points at
/// `tanh(γ_j) e^{iθ_j}` and a direction `λ` strictly between them, pulled
/// back by the contraction factor `s = 1/k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialComparison {
    pub gamma1: f64,
    pub gamma2: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub lambda: f64,
    pub s: f64,
}

impl RadialComparison {
    pub fn new(gamma1: f64, gamma2: f64, theta1: f64, theta2: f64, lambda: f64, s: f64) -> Result<Self> {
        let rc = Self { gamma1, gamma2, theta1, theta2, lambda, s };
        rc.validate()?;
        Ok(rc)
    }

    /// Build from `t ∈ (0,1)` instead of `λ`.
    pub fn from_t(gamma1: f64, gamma2: f64, theta1: f64, theta2: f64, t: f64, s: f64) -> Result<Self> {
        Self::new(gamma1, gamma2, theta1, theta2, theta1 + t * (theta2 - theta1), s)
    }

    pub fn with_s(&self, s: f64) -> Self {
        Self { s, ..*self }
    }

    pub fn t(&self) -> f64 {
        (self.lambda - self.theta1) / (self.theta2 - self.theta1)
    }

    fn validate(&self) -> Result<()> {
        let all = [self.gamma1, self.gamma2, self.theta1, self.theta2, self.lambda, self.s];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::InvalidParams("non-finite radial comparison".into()));
        }
        if !(self.gamma1 > 0.0 && self.gamma2 > 0.0 && self.s > 0.0) {
            return Err(GeomError::InvalidParams("gamma1, gamma2 and s must be positive".into()));
        }
        if !(0.0 <= self.theta1 && self.theta1 < self.lambda && self.lambda < self.theta2 && self.theta2 < PI) {
            return Err(GeomError::InvalidParams(format!(
                "need 0 <= theta1 < lambda < theta2 < pi, got {} {} {}",
                self.theta1, self.lambda, self.theta2
            )));
        }
        Ok(())
    }

    /// Sines `(sin(θ2-λ), sin(λ-θ1), sin(θ2-θ1))`.
    pub fn sines(&self) -> (f64, f64, f64) {
        (
            (self.theta2 - self.lambda).sin(),
            (self.lambda - self.theta1).sin(),
            (self.theta2 - self.theta1).sin(),
        )
    }

    /// The pulled-back endpoints `tanh(γ_j s) e^{iθ_j}`.
    pub fn preimage_endpoints(&self) -> Result<(HPoint, HPoint)> {
        Ok((
            HPoint::new(Complex64::from_polar((self.gamma1 * self.s).tanh(), self.theta1))?,
            HPoint::new(Complex64::from_polar((self.gamma2 * self.s).tanh(), self.theta2))?,
        ))
    }

    /// `atanh ρ` obtained geometrically: construct the orthogonal circle
    /// through the pulled-back endpoints and intersect it with the ray.
    pub fn geometric_atanh_rho(&self) -> Result<f64> {
        let (x1, x2) = self.preimage_endpoints()?;
        let g = h_geodesic_through(x1, x2)?;
        atanh_stable(h_ray_arc_intersect(&g, self.lambda)?)
    }

    /// `a1 cos λ + a2 sin λ` for the circle through the pulled-back endpoints.
    pub fn projection_denominator(&self) -> f64 {
        let (sa, sb, sd) = self.sines();
        let c1 = 1.0 + coth_minus_one(2.0 * self.gamma1 * self.s);
        let c2 = 1.0 + coth_minus_one(2.0 * self.gamma2 * self.s);
        (c1 * sa + c2 * sb) / sd
    }
}

/// `w - 1` where `w = (C1 sin A + C2 sin B) / sin(A+B)` and `C_j = 1 + e_j`.
/// Written as a sum of non-negative terms.
pub(crate) fn sinusoidal_excess(e1: f64, e2: f64, a: f64, b: f64) -> f64 {
    let d = a + b;
    (e1 * a.sin() + e2 * b.sin() + 4.0 * (0.5 * a).sin() * (0.5 * b).sin() * (0.5 * d).sin()) / d.sin()
}

/// `atanh ρ` in closed form as a function of `s`.
pub fn h_rho_closed_form(rc: &RadialComparison) -> f64 {
    let e1 = coth_minus_one(2.0 * rc.gamma1 * rc.s);
    let e2 = coth_minus_one(2.0 * rc.gamma2 * rc.s);
    let excess = sinusoidal_excess(e1, e2, rc.theta2 - rc.lambda, rc.lambda - rc.theta1);
    0.5 * atanh_recip_from_excess(excess)
}

/// `atanh r' ` of the dilated point on `[x1', x2']` in direction `λ`.
pub fn h_rprime_closed_form(rc: &RadialComparison) -> f64 {
    h_rho_closed_form(&rc.with_s(1.0))
}

/// `atanh r = s · atanh r'`, linear in `s`.
pub fn h_r_closed_form(rc: &RadialComparison) -> f64 {
    rc.s * h_rprime_closed_form(rc)
}

/// Rotation that brings a pair of directions into the normal form
/// `0 = θ1 < θ2 < π` used by the radial comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularFrame {
    /// Subtract this from every direction.
    pub rotation: f64,
    /// Direction of the second point after rotation, in `(0, π)`.
    pub theta2: f64,
    /// Whether the two points had to be exchanged.
    pub swapped: bool,
}

pub fn angular_normal_form(alpha1: f64, alpha2: f64) -> Result<AngularFrame> {
    let diff = (alpha2 - alpha1).rem_euclid(2.0 * PI);
    if diff == 0.0 || (diff - PI).abs() < 1e-15 {
        return Err(GeomError::Degenerate("directions are parallel or opposite".into()));
    }
    if diff < PI {
        Ok(AngularFrame { rotation: alpha1, theta2: diff, swapped: false })
    } else {
        Ok(AngularFrame { rotation: alpha2, theta2: 2.0 * PI - diff, swapped: true })
    }
}

/// Radial comparison for arbitrary dilated endpoints `x1'`, `x2'` (not
/// collinear with the origin), the segment parameter `t` along the
/// angular range, and contraction factor `s`.
pub fn radial_comparison_from_points(x1: HPoint, x2: HPoint, t: f64, s: f64) -> Result<RadialComparison> {
    let frame = angular_normal_form(x1.z().arg(), x2.z().arg())?;
    let (g1, g2) = (atanh_stable(x1.norm())?, atanh_stable(x2.norm())?);
    let (g1, g2, t) = if frame.swapped { (g2, g1, 1.0 - t) } else { (g1, g2, t) };
    RadialComparison::from_t(g1, g2, 0.0, frame.theta2, t, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Seed;
    use rand::Rng;

    fn hp(x: f64, y: f64) -> HPoint {
        HPoint::from_xy(x, y).unwrap()
    }

    fn random_point(rng: &mut impl Rng, max_r: f64) -> HPoint {
        let r = max_r * rng.random::<f64>().sqrt();
        HPoint::new(Complex64::from_polar(r, rng.random_range(-PI..PI))).unwrap()
    }

    #[test]
    fn construction_guard() {
        assert!(HPoint::from_xy(1.0, 0.0).is_err());
        assert!(HPoint::from_xy(1.0 - 1e-10, 0.0).is_err());
        assert!(HPoint::from_xy(f64::NAN, 0.0).is_err());
        assert!(HPoint::from_xy(0.999, 0.0).is_ok());
    }

    #[test]
    fn distance_examples() {
        // 2 atanh(1/2) = ln 3
        assert!((h_dist(HPoint::ORIGIN, hp(0.5, 0.0)) - 1.098_612_288_668_109_8).abs() < 1e-15);
        let u = hp(0.3, -0.2);
        assert_eq!(h_dist(u, u), 0.0);
        assert!((h_dist(HPoint::ORIGIN, hp(0.5f64.tanh(), 0.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn translate_examples() {
        let c = hp(0.5, 0.0);
        assert_eq!(h_translate(c, HPoint::ORIGIN).z(), Complex64::new(0.5, 0.0));
        let z = hp(0.1, 0.7);
        assert_eq!(h_translate(HPoint::ORIGIN, z), z);
        assert!(h_translate(c, hp(-0.5, 0.0)).norm() < 1e-16);
        assert!((h_translate_inv(c, h_translate(c, z)).z() - z.z()).norm() < 1e-15);
    }

    #[test]
    fn derivative_at_origin() {
        let c = hp(0.3, 0.4);
        let eps = 1e-6;
        let quotient = (h_translate(c, hp(eps, 0.0)).z() - c.z()) / eps;
        assert!((quotient - Complex64::new(1.0 - c.z().norm_sqr(), 0.0)).norm() < 1e-6);
    }

    #[test]
    fn dilate_origin_examples() {
        let z = hp(0.3, 0.0);
        assert!((h_dilate_origin(1.0, z).unwrap().z() - z.z()).norm() < 1e-16);
        // tanh(2α) = 2r / (1 + r²)
        assert!((h_dilate_origin(2.0, z).unwrap().z().re - 0.550_458_715_596_330_3).abs() < 1e-15);
        assert_eq!(h_dilate_origin(3.7, HPoint::ORIGIN).unwrap(), HPoint::ORIGIN);
        assert!(h_dilate_origin(0.0, z).is_err());
        assert!(h_dilate_origin(-1.0, z).is_err());
    }

    #[test]
    fn dilate_examples() {
        let z = hp(0.4, -0.1);
        let d0 = HDilation::new(HPoint::ORIGIN, 2.5).unwrap();
        assert!((h_dilate(&d0, z).z() - h_dilate_origin(2.5, z).unwrap().z()).norm() < 1e-15);
        let c = hp(0.2, 0.3);
        let d = HDilation::new(c, 3.0).unwrap();
        assert!((h_dilate(&d, c).z() - c.z()).norm() < 1e-15);
        // high-precision composition oracle
        let d = HDilation::new(hp(0.2, 0.0), 2.0).unwrap();
        let out = h_dilate(&d, hp(0.5, 0.0)).z();
        assert!((out.re - 0.714_285_714_285_714_3).abs() < 1e-15 && out.im.abs() < 1e-16);
        assert!((d.k * d.s - 1.0).abs() < 1e-15);
        let back = h_dilate(&d.inverse(), h_dilate(&d, z));
        assert!((back.z() - z.z()).norm() < 1e-14);
    }

    #[test]
    fn geodesic_examples() {
        let (u, v) = (hp(0.5, 0.0), hp(0.0, 0.5));
        match h_geodesic_through(u, v).unwrap() {
            HGeodesic::Arc { center, radius } => {
                assert!((center - Complex64::new(1.25, 1.25)).norm() < 1e-15);
                assert!((radius - 1.457_737_973_711_325_1).abs() < 1e-15);
                assert!((center.norm_sqr() - 1.0 - radius * radius).abs() < 1e-12);
                assert!(((u.z() - center).norm() - radius).abs() < 1e-12);
                assert!(((v.z() - center).norm() - radius).abs() < 1e-12);
            }
            other => panic!("expected arc, got {other:?}"),
        }
        match h_geodesic_through(hp(0.3, 0.0), hp(-0.4, 0.0)).unwrap() {
            HGeodesic::Diameter { direction } => assert!((direction.im).abs() < 1e-15),
            other => panic!("expected diameter, got {other:?}"),
        }
        assert!(h_geodesic_through(u, u).is_err());
    }

    #[test]
    fn segment_examples() {
        let (u, v) = (hp(0.5, 0.0), hp(0.0, 0.5));
        assert_eq!(h_segment_point(u, v, 0.0).unwrap(), u);
        assert_eq!(h_segment_point(u, v, 1.0).unwrap(), v);
        assert!(h_segment_point(hp(-0.3, 0.0), hp(0.3, 0.0), 0.5).unwrap().norm() < 1e-16);
        let mid = h_segment_point(u, v, 0.5).unwrap();
        let g = h_geodesic_through(u, v).unwrap();
        assert!(g.residual(mid.z()).abs() < 1e-12);
        assert!((h_dist(u, mid) - h_dist(mid, v)).abs() < 1e-12);
        // frozen from a 50-digit evaluation
        assert!((mid.z() - Complex64::new(0.219_223_593_595_584_86, 0.219_223_593_595_584_86)).norm() < 1e-15);
        assert!(h_segment_point(u, u, 0.5).is_err());
        assert!(h_segment_point(u, v, 1.5).is_err());
    }

    #[test]
    fn ray_intersection_examples() {
        let g = HGeodesic::Arc { center: Complex64::new(1.25, 1.25), radius: 2.125f64.sqrt() };
        let lam = PI / 4.0;
        let rho = h_ray_arc_intersect(&g, lam).unwrap();
        let omega = 1.25 * 2f64.sqrt();
        assert!((rho - (omega - (omega * omega - 1.0).sqrt())).abs() < 1e-15);
        assert!((rho - 0.310_028_979_255_043_7).abs() < 1e-15);
        assert!(g.residual(Complex64::from_polar(rho, lam)).abs() < 1e-14);
        // endpoint lies on the ray
        let rho0 = h_ray_arc_intersect(&g, 0.0).unwrap();
        assert!((rho0 - 0.5).abs() < 1e-15);
        // a ray pointing away from the arc
        assert!(h_ray_arc_intersect(&g, PI + 0.3).is_err());
        assert!(h_ray_arc_intersect(&HGeodesic::Diameter { direction: Complex64::new(1.0, 0.0) }, 0.0).is_err());
    }

    #[test]
    fn closed_forms() {
        let rc = RadialComparison::new(0.4, 0.9, 0.2, 1.7, 0.8, 0.7).unwrap();
        assert!((h_r_closed_form(&rc) - 0.222_333_896_102_368_65).abs() < 1e-15);
        assert!((h_rho_closed_form(&rc) - 0.243_778_331_175_595_63).abs() < 1e-15);
        let one = rc.with_s(1.0);
        assert!((h_rho_closed_form(&one) - h_r_closed_form(&one)).abs() < 1e-15);
        assert!((h_r_closed_form(&rc.with_s(0.5)) - 0.5 * h_r_closed_form(&one)).abs() < 1e-16);
        assert!(h_rho_closed_form(&rc.with_s(1e-9)) < 1e-8);
        // symmetric configuration against direct substitution
        let g = 0.6;
        let sym = RadialComparison::new(g, g, 0.3, 1.5, 0.9, 0.8).unwrap();
        // sin(2A) / (2 sin A) = cos A with A = (θ2-θ1)/2
        let direct = 0.5 * atanh_stable((2.0 * g * 0.8).tanh() * (0.6f64).cos()).unwrap();
        assert!((h_rho_closed_form(&sym) - direct).abs() < 1e-14);
    }

    #[test]
    fn closed_form_matches_geometry_symmetric() {
        let g = 0.6;
        let sym = RadialComparison::new(g, g, 0.3, 1.5, 0.9, 0.8).unwrap();
        assert!((sym.geometric_atanh_rho().unwrap() - h_rho_closed_form(&sym)).abs() < 1e-12);
    }

    #[test]
    fn radial_comparison_validation() {
        assert!(RadialComparison::new(0.4, 0.9, 0.2, 1.7, 0.1, 0.7).is_err());
        assert!(RadialComparison::new(0.4, 0.9, 0.2, 3.5, 0.8, 0.7).is_err());
        assert!(RadialComparison::new(-0.4, 0.9, 0.2, 1.7, 0.8, 0.7).is_err());
        let rc = RadialComparison::from_t(0.4, 0.9, 0.2, 1.7, 0.25, 1.0).unwrap();
        assert!((rc.t() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn normal_form_handles_any_pair() {
        let x1 = hp(-0.3, -0.4);
        let x2 = hp(0.6, -0.1);
        let rc = radial_comparison_from_points(x1, x2, 0.3, 0.6).unwrap();
        assert_eq!(rc.theta1, 0.0);
        assert!(rc.theta2 > 0.0 && rc.theta2 < PI);
        let rc_rev = radial_comparison_from_points(x2, x1, 0.7, 0.6).unwrap();
        assert!((rc.lambda - rc_rev.lambda).abs() < 1e-14);
        assert!((h_rho_closed_form(&rc) - h_rho_closed_form(&rc_rev)).abs() < 1e-14);
        assert!(angular_normal_form(0.3, 0.3 + PI).is_err());
    }

    #[test]
    fn randomized_invariants() {
        let mut rng = Seed(11).stream(0);
        for _ in 0..2000 {
            let (c, u, v) = (random_point(&mut rng, 0.9), random_point(&mut rng, 0.9), random_point(&mut rng, 0.9));
            let d = h_dist(u, v);
            assert!((h_dist(h_translate(c, u), h_translate(c, v)) - d).abs() < 1e-12);
            assert!((h_dist(v, u) - d).abs() < 1e-13);
            let (k1, k2) = (rng.random_range(0.2..3.0), rng.random_range(0.2..3.0));
            let lhs = h_dilate_origin(k1, h_dilate_origin(k2, u).unwrap()).unwrap();
            let rhs = h_dilate_origin(k1 * k2, u).unwrap();
            assert!((lhs.z() - rhs.z()).norm() < 1e-12);
            if let Ok(HGeodesic::Arc { center, radius }) = h_geodesic_through(u, v) {
                let n2 = center.norm_sqr();
                assert!((n2 - 1.0 - radius * radius).abs() <= 1e-12 * n2.max(1.0));
            }
        }
    }
}
