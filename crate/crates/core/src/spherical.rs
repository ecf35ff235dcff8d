//! Stereographic model of the unit sphere (curvature +1) on the extended
//! plane `C ∪ {∞}` with metric `2|dz| / (1 + |z|^2)`.
//!
//! Great circles appear as lines through the origin or as circles that meet
//! the unit circle at diametrically opposite points (`1 + |a|^2 = R^2`).
//! `s_translate(c, ·)` is the rotation carrying the origin to `c`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GeomError, Result};
use crate::hyperbolic::{collinear_with_origin, solve_center};
use crate::numerics::Tolerances;

/// A point of the extended plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SPoint {
    Finite(Complex64),
    Infinity,
}

impl SPoint {
    pub const ORIGIN: SPoint = SPoint::Finite(Complex64 { re: 0.0, im: 0.0 });

    pub fn new(z: Complex64) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() {
            Ok(SPoint::Finite(z))
        } else {
            Err(GeomError::NonFinite(format!("spherical point {z}")))
        }
    }

    pub fn from_xy(x: f64, y: f64) -> Result<Self> {
        Self::new(Complex64::new(x, y))
    }

    /// Point at spherical distance `d` from the origin in direction `theta`.
    pub fn from_polar_distance(d: f64, theta: f64) -> Result<Self> {
        if (d - PI).abs() < 1e-15 {
            return Ok(SPoint::Infinity);
        }
        Self::new(Complex64::from_polar((0.5 * d).tan(), theta))
    }

    /// Reads a complex value, mapping non-finite values to `∞`.
    pub(crate) fn from_map(z: Complex64) -> Self {
        if z.re.is_finite() && z.im.is_finite() {
            SPoint::Finite(z)
        } else {
            SPoint::Infinity
        }
    }

    pub fn finite(self) -> Option<Complex64> {
        match self {
            SPoint::Finite(z) => Some(z),
            SPoint::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, SPoint::Infinity)
    }

    /// Position on the unit sphere; the origin maps to `(0, 0, 1)`.
    pub fn to_sphere(self) -> [f64; 3] {
        match self {
            SPoint::Infinity => [0.0, 0.0, -1.0],
            SPoint::Finite(z) => {
                let n2 = z.norm_sqr();
                if !n2.is_finite() {
                    return [0.0, 0.0, -1.0];
                }
                let den = 1.0 + n2;
                [2.0 * z.re / den, 2.0 * z.im / den, (1.0 - n2) / den]
            }
        }
    }

    /// Inverse of [`SPoint::to_sphere`] for unit vectors.
    pub fn from_sphere(p: [f64; 3]) -> SPoint {
        let [x, y, zc] = p;
        if zc >= 0.0 {
            SPoint::Finite(Complex64::new(x, y) / (1.0 + zc))
        } else {
            let den = Complex64::new(x, -y);
            if den.norm() == 0.0 {
                return SPoint::Infinity;
            }
            SPoint::from_map(Complex64::new(1.0 - zc, 0.0) / den)
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SPointRepr {
    Finite([f64; 2]),
    Tag(String),
}

impl Serialize for SPoint {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            SPoint::Finite(z) => SPointRepr::Finite([z.re, z.im]).serialize(ser),
            SPoint::Infinity => SPointRepr::Tag("inf".into()).serialize(ser),
        }
    }
}

impl<'de> Deserialize<'de> for SPoint {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        match SPointRepr::deserialize(de)? {
            SPointRepr::Finite([re, im]) => SPoint::new(Complex64::new(re, im)).map_err(serde::de::Error::custom),
            SPointRepr::Tag(t) if t == "inf" => Ok(SPoint::Infinity),
            SPointRepr::Tag(t) => Err(serde::de::Error::custom(format!("unknown point tag {t:?}"))),
        }
    }
}

/// Spherical distance, in `[0, π]`.
pub fn s_dist(u: SPoint, v: SPoint) -> f64 {
    match (u, v) {
        (SPoint::Infinity, SPoint::Infinity) => 0.0,
        (SPoint::Finite(z), SPoint::Infinity) | (SPoint::Infinity, SPoint::Finite(z)) => 2.0 * 1f64.atan2(z.norm()),
        (SPoint::Finite(z), SPoint::Finite(w)) => {
            let num = (z - w).norm();
            if num == 0.0 {
                return 0.0;
            }
            2.0 * num.atan2((Complex64::new(1.0, 0.0) + w.conj() * z).norm())
        }
    }
}

/// `-1 / conj(u)`, exchanging `0` and `∞`.
pub fn antipode(u: SPoint) -> SPoint {
    match u {
        SPoint::Infinity => SPoint::ORIGIN,
        SPoint::Finite(z) if z.norm() == 0.0 => SPoint::Infinity,
        SPoint::Finite(z) => SPoint::from_map(-Complex64::new(1.0, 0.0) / z.conj()),
    }
}

/// The rotation `(z + c) / (1 - conj(c) z)` carrying the origin to `c`.
pub fn s_translate(c: Complex64, z: SPoint) -> SPoint {
    match z {
        SPoint::Infinity => {
            if c.norm() == 0.0 {
                SPoint::Infinity
            } else {
                SPoint::from_map(-Complex64::new(1.0, 0.0) / c.conj())
            }
        }
        SPoint::Finite(z) => {
            let den = Complex64::new(1.0, 0.0) - c.conj() * z;
            if den.norm() == 0.0 {
                SPoint::Infinity
            } else {
                SPoint::from_map((z + c) / den)
            }
        }
    }
}

/// Inverse of [`s_translate`].
pub fn s_translate_inv(c: Complex64, z: SPoint) -> SPoint {
    s_translate(-c, z)
}

fn check_factor(k: f64) -> Result<()> {
    if !(k.is_finite() && k > 0.0) {
        return Err(GeomError::InvalidParams(format!("dilation factor {k} must be positive")));
    }
    Ok(())
}

/// Dilation about the origin: `r -> tan(k atan r)`. Rejects images whose
/// distance from the origin would reach `π`.
pub fn s_dilate_origin(k: f64, z: SPoint) -> Result<SPoint> {
    check_factor(k)?;
    let SPoint::Finite(z) = z else {
        return Err(GeomError::Range("the antipode of the centre has no ray direction".into()));
    };
    let r = z.norm();
    if r == 0.0 {
        return Ok(SPoint::Finite(z));
    }
    let half = r.atan();
    if k * 2.0 * half >= PI {
        return Err(GeomError::Range(format!("k * d = {} >= pi", k * 2.0 * half)));
    }
    Ok(SPoint::from_map(z * ((k * half).tan() / r)))
}

/// Radial dilation about a finite centre `c` by factor `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SDilation {
    pub c: Complex64,
    pub k: f64,
    pub s: f64,
}

impl SDilation {
    pub fn new(c: SPoint, k: f64) -> Result<Self> {
        check_factor(k)?;
        let c = c
            .finite()
            .ok_or_else(|| GeomError::InvalidParams("dilation centre must be finite".into()))?;
        Ok(Self { c, k, s: 1.0 / k })
    }

    pub fn center(&self) -> SPoint {
        SPoint::Finite(self.c)
    }

    pub fn inverse(&self) -> SDilation {
        SDilation { c: self.c, k: self.s, s: self.k }
    }
}

/// `τ_c ∘ δ_{0,k} ∘ τ_c^{-1}`, defined while `k · d(c, z) < π`.
pub fn s_dilate(d: &SDilation, z: SPoint) -> Result<SPoint> {
    if d.k == 1.0 {
        return Ok(z);
    }
    let local = s_translate_inv(d.c, z);
    Ok(s_translate(d.c, s_dilate_origin(d.k, local)?))
}

/// Geodesic polar coordinates of `z` about a finite centre `c`.
pub fn s_polar(c: Complex64, z: SPoint) -> Result<(f64, f64)> {
    match s_translate_inv(c, z) {
        SPoint::Infinity => Err(GeomError::Range("antipode of the centre has no direction".into())),
        SPoint::Finite(w) => Ok((2.0 * w.norm().atan(), w.arg())),
    }
}

/// Inverse of [`s_polar`].
pub fn s_from_polar(c: Complex64, d: f64, theta: f64) -> Result<SPoint> {
    Ok(s_translate(c, SPoint::from_polar_distance(d, theta)?))
}

/// Closed hemisphere test `d(center, z) <= π/2`.
pub fn in_hemisphere(center: SPoint, z: SPoint) -> bool {
    in_hemisphere_tol(center, z, Tolerances::default().eq_abs)
}

pub fn in_hemisphere_tol(center: SPoint, z: SPoint, eq_abs: f64) -> bool {
    s_dist(center, z) <= FRAC_PI_2 + eq_abs
}

/// Whether the Euclidean disk `|z - c| < r` is the image of a hemisphere.
pub fn is_hemisphere_disk(c: Complex64, r: f64) -> bool {
    (1.0 + c.norm_sqr() - r * r).abs() <= Tolerances::default().eq_abs * (1.0 + c.norm_sqr())
}

/// A great circle in the plane picture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SGeodesic {
    /// Line through the origin along the unit `direction`.
    Diameter { direction: Complex64 },
    /// Circle `|z - center| = radius` with `1 + |center|^2 = radius^2`.
    Arc { center: Complex64, radius: f64 },
}

impl SGeodesic {
    pub fn residual(&self, z: Complex64) -> f64 {
        match *self {
            SGeodesic::Diameter { direction } => (direction.conj() * z).im,
            SGeodesic::Arc { center, radius } => (z - center).norm() - radius,
        }
    }
}

fn antipodal(u: SPoint, v: SPoint) -> bool {
    PI - s_dist(u, v) <= 1e-12
}

/// The unique great circle through two distinct, non-antipodal points.
pub fn s_geodesic_through(u: SPoint, v: SPoint) -> Result<SGeodesic> {
    if u == v {
        return Err(GeomError::Degenerate("geodesic through coincident points".into()));
    }
    if antipodal(u, v) {
        return Err(GeomError::Antipodal);
    }
    let (zu, zv) = match (u, v) {
        (SPoint::Finite(a), SPoint::Finite(b)) => (a, b),
        (SPoint::Finite(a), SPoint::Infinity) | (SPoint::Infinity, SPoint::Finite(a)) => {
            // every great circle through ∞ also passes through 0
            return Ok(SGeodesic::Diameter { direction: a / a.norm() });
        }
        _ => unreachable!("coincident points handled above"),
    };
    if zu.norm() == 0.0 || zv.norm() == 0.0 || collinear_with_origin(zu, zv, Tolerances::default().eq_abs) {
        let far = if zu.norm() >= zv.norm() { zu } else { zv };
        return Ok(SGeodesic::Diameter { direction: far / far.norm() });
    }
    // a · (u/|u|) = (|u| - 1/|u|) / 2, likewise for v.
    let (r1, t1) = zu.to_polar();
    let (r2, t2) = zv.to_polar();
    let center = solve_center(t1, 0.5 * (r1 - 1.0 / r1), t2, 0.5 * (r2 - 1.0 / r2));
    let radius = (1.0 + center.norm_sqr()).sqrt();
    Ok(SGeodesic::Arc { center, radius })
}

/// Point at spherical distance `t · d(u, v)` from `u` along the shorter arc.
pub fn s_segment_point(u: SPoint, v: SPoint, t: f64) -> Result<SPoint> {
    if u == v {
        return Err(GeomError::Degenerate("segment between coincident points".into()));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(GeomError::InvalidParams(format!("segment parameter {t} not in [0, 1]")));
    }
    if antipodal(u, v) {
        return Err(GeomError::Antipodal);
    }
    if t == 0.0 {
        return Ok(u);
    }
    if t == 1.0 {
        return Ok(v);
    }
    let SPoint::Finite(cu) = u else {
        // the antipodal map is an isometry exchanging ∞ and 0
        return Ok(antipode(s_segment_point(SPoint::ORIGIN, antipode(v), t)?));
    };
    let SPoint::Finite(w) = s_translate_inv(cu, v) else {
        return Err(GeomError::Antipodal);
    };
    let r = w.norm();
    let moved = w * ((t * r.atan()).tan() / r);
    Ok(s_translate(cu, SPoint::Finite(moved)))
}

/// Modulus of the in-disk intersection of the ray `e^{iλ}` with a great circle.
pub fn s_ray_arc_intersect(g: &SGeodesic, lambda: f64) -> Result<f64> {
    let SGeodesic::Arc { center, .. } = *g else {
        return Err(GeomError::NoIntersection("great circle is a line through the origin".into()));
    };
    let omega = center.re * lambda.cos() + center.im * lambda.sin();
    if omega > Tolerances::default().eq_abs {
        return Err(GeomError::NoIntersection(format!("a1 cos(l) + a2 sin(l) = {omega} > 0")));
    }
    // sqrt(ω² + 1) + ω, written without cancellation
    Ok(1.0 / ((omega * omega + 1.0).sqrt() - omega))
}

/// Spherical radial comparison; see [`crate::hyperbolic::RadialComparison`].
/// `γ_j = atan r_j'` with `r_j' ∈ (0, 1)`, and `s_star = (π/4) min(1/γ1, 1/γ2)`
/// bounds the pulled-back configuration inside the closed hemisphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SRadialComparison {
    pub gamma1: f64,
    pub gamma2: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub lambda: f64,
    pub s: f64,
    pub s_star: f64,
}

impl SRadialComparison {
    /// Validated configuration with `s ∈ [1, s*]`.
    pub fn new(gamma1: f64, gamma2: f64, theta1: f64, theta2: f64, lambda: f64, s: f64) -> Result<Self> {
        let rc = Self::unchecked(gamma1, gamma2, theta1, theta2, lambda, s)?;
        let slack = Tolerances::default().eq_abs;
        if !(s >= 1.0 - slack && s <= rc.s_star + slack) {
            return Err(GeomError::InvalidParams(format!("s = {s} not in [1, s* = {}]", rc.s_star)));
        }
        Ok(rc)
    }

    pub fn from_t(gamma1: f64, gamma2: f64, theta1: f64, theta2: f64, t: f64, s: f64) -> Result<Self> {
        Self::new(gamma1, gamma2, theta1, theta2, theta1 + t * (theta2 - theta1), s)
    }

    fn unchecked(gamma1: f64, gamma2: f64, theta1: f64, theta2: f64, lambda: f64, s: f64) -> Result<Self> {
        let all = [gamma1, gamma2, theta1, theta2, lambda, s];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::InvalidParams("non-finite radial comparison".into()));
        }
        if !(gamma1 > 0.0 && gamma2 > 0.0 && gamma1 < FRAC_PI_4 && gamma2 < FRAC_PI_4) {
            return Err(GeomError::InvalidParams("gamma must lie in (0, pi/4)".into()));
        }
        if !(0.0 <= theta1 && theta1 < lambda && lambda < theta2 && theta2 < PI) {
            return Err(GeomError::InvalidParams("need 0 <= theta1 < lambda < theta2 < pi".into()));
        }
        let s_star = FRAC_PI_4 * (1.0 / gamma1).min(1.0 / gamma2);
        Ok(Self { gamma1, gamma2, theta1, theta2, lambda, s, s_star })
    }

    /// The same configuration at another `s ∈ (0, s*]`, the range on which
    /// the closed forms are defined.
    pub fn at_s(&self, s: f64) -> Result<Self> {
        if !(s > 0.0 && s <= self.s_star + Tolerances::default().eq_abs) {
            return Err(GeomError::InvalidParams(format!("s = {s} not in (0, s*]")));
        }
        Ok(Self { s, ..*self })
    }

    pub fn t(&self) -> f64 {
        (self.lambda - self.theta1) / (self.theta2 - self.theta1)
    }

    pub fn sines(&self) -> (f64, f64, f64) {
        (
            (self.theta2 - self.lambda).sin(),
            (self.lambda - self.theta1).sin(),
            (self.theta2 - self.theta1).sin(),
        )
    }

    /// Pulled-back endpoints `tan(γ_j s) e^{iθ_j}`.
    pub fn preimage_endpoints(&self) -> Result<(SPoint, SPoint)> {
        Ok((
            SPoint::new(Complex64::from_polar((self.gamma1 * self.s).tan(), self.theta1))?,
            SPoint::new(Complex64::from_polar((self.gamma2 * self.s).tan(), self.theta2))?,
        ))
    }

    /// `a1 cos λ + a2 sin λ` for the great circle through the pulled-back endpoints.
    pub fn projection_denominator(&self) -> f64 {
        let (sa, sb, sd) = self.sines();
        let c1 = (2.0 * self.gamma1 * self.s).cos() / (2.0 * self.gamma1 * self.s).sin();
        let c2 = (2.0 * self.gamma2 * self.s).cos() / (2.0 * self.gamma2 * self.s).sin();
        -(c1 * sa + c2 * sb) / sd
    }

    /// `atan ρ` via the great circle through the pulled-back endpoints.
    pub fn geometric_atan_rho(&self) -> Result<f64> {
        let (x1, x2) = self.preimage_endpoints()?;
        let g = s_geodesic_through(x1, x2)?;
        Ok(s_ray_arc_intersect(&g, self.lambda)?.atan())
    }
}

/// `atan ρ` in closed form as a function of `s`.
pub fn s_rho_closed_form(rc: &SRadialComparison) -> f64 {
    let (sa, sb, sd) = rc.sines();
    let (a1, a2) = (2.0 * rc.gamma1 * rc.s, 2.0 * rc.gamma2 * rc.s);
    let den = a1.cos() / a1.sin() * sa + a2.cos() / a2.sin() * sb;
    0.5 * sd.atan2(den)
}

/// `atan r'` of the dilated point in direction `λ`.
pub fn s_rprime_closed_form(rc: &SRadialComparison) -> f64 {
    s_rho_closed_form(&SRadialComparison { s: 1.0, ..*rc })
}

/// `atan r = s · atan r'`, linear in `s`.
pub fn s_r_closed_form(rc: &SRadialComparison) -> f64 {
    rc.s * s_rprime_closed_form(rc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Seed;
    use rand::Rng;

    fn sp(x: f64, y: f64) -> SPoint {
        SPoint::from_xy(x, y).unwrap()
    }

    fn close(a: SPoint, b: SPoint, tol: f64) -> bool {
        s_dist(a, b) <= tol
    }

    fn random_point(rng: &mut impl Rng, max_r: f64) -> SPoint {
        let r = max_r * rng.random::<f64>().sqrt();
        SPoint::Finite(Complex64::from_polar(r, rng.random_range(-PI..PI)))
    }

    #[test]
    fn distance_examples() {
        assert!((s_dist(SPoint::ORIGIN, sp(1.0, 0.0)) - FRAC_PI_2).abs() < 1e-15);
        assert!((s_dist(sp(1.0, 0.0), sp(-1.0, 0.0)) - PI).abs() < 1e-15);
        assert!((s_dist(SPoint::ORIGIN, SPoint::Infinity) - PI).abs() < 1e-15);
        assert_eq!(s_dist(SPoint::Infinity, SPoint::Infinity), 0.0);
        let u = sp(0.4, 2.0);
        assert_eq!(s_dist(u, u), 0.0);
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode(sp(1.0, 0.0)), sp(-1.0, 0.0));
        assert_eq!(antipode(SPoint::ORIGIN), SPoint::Infinity);
        assert_eq!(antipode(SPoint::Infinity), SPoint::ORIGIN);
        let a = antipode(sp(0.0, 0.5));
        assert!((a.finite().unwrap() - Complex64::new(0.0, -2.0)).norm() < 1e-15);
        assert!((s_dist(sp(0.0, 0.5), a) - PI).abs() < 1e-15);
    }

    #[test]
    fn translate_examples() {
        let c = Complex64::new(0.5, 0.0);
        assert_eq!(s_translate(c, SPoint::ORIGIN), sp(0.5, 0.0));
        let z = sp(-1.2, 0.3);
        assert_eq!(s_translate(Complex64::new(0.0, 0.0), z), z);
        assert_eq!(s_translate(c, sp(2.0, 0.0)), SPoint::Infinity);
        assert!(close(s_translate_inv(c, s_translate(c, z)), z, 1e-14));
        // ∞ goes to -1/conj(c)
        assert_eq!(s_translate(c, SPoint::Infinity), sp(-2.0, 0.0));
    }

    #[test]
    fn derivative_at_origin() {
        let c = Complex64::new(0.3, -0.7);
        let eps = 1e-6;
        let q = (s_translate(c, sp(eps, 0.0)).finite().unwrap() - c) / eps;
        assert!((q - Complex64::new(1.0 + c.norm_sqr(), 0.0)).norm() < 1e-5);
    }

    #[test]
    fn dilate_origin_examples() {
        let z = sp(0.3, 0.0);
        assert!(close(s_dilate_origin(1.0, z).unwrap(), z, 1e-15));
        // tan(2α) = 2r / (1 - r²)
        let two = s_dilate_origin(2.0, z).unwrap().finite().unwrap();
        assert!((two.re - 0.659_340_659_340_659_3).abs() < 1e-15);
        let half = s_dilate_origin(0.5, sp(1.0, 0.0)).unwrap().finite().unwrap();
        assert!((half.re - 0.414_213_562_373_095_03).abs() < 1e-15);
        // d(0, 2) = 2 atan 2 > π/2, so k = 2 would pass π
        assert!(matches!(s_dilate_origin(2.0, sp(2.0, 0.0)), Err(GeomError::Range(_))));
        assert!(s_dilate_origin(0.5, SPoint::Infinity).is_err());
    }

    #[test]
    fn dilate_examples() {
        let c = sp(0.2, 0.0);
        let d = SDilation::new(c, 0.9).unwrap();
        assert!(close(s_dilate(&d, c).unwrap(), c, 1e-15));
        let d0 = SDilation::new(SPoint::ORIGIN, 0.7).unwrap();
        let z = sp(0.4, -1.1);
        assert!(close(s_dilate(&d0, z).unwrap(), s_dilate_origin(0.7, z).unwrap(), 1e-15));
        // composition oracle at 50 digits
        let out = s_dilate(&d, sp(1.5, 0.0)).unwrap().finite().unwrap();
        assert!((out.re - 1.271_226_723_790_331_3).abs() < 1e-14 && out.im.abs() < 1e-15);
        let back = s_dilate(&d.inverse(), s_dilate(&d, z).unwrap()).unwrap();
        assert!(close(back, z, 1e-13));
        assert!(SDilation::new(SPoint::Infinity, 0.5).is_err());
    }

    #[test]
    fn hemisphere_examples() {
        assert!(in_hemisphere(SPoint::ORIGIN, sp(0.6, 0.8)));
        assert!(in_hemisphere(SPoint::ORIGIN, sp(0.1, -0.3)));
        assert!(!in_hemisphere(SPoint::ORIGIN, sp(2.0, 0.0)));
        let c = Complex64::new(1.0, 2.0);
        assert!(is_hemisphere_disk(c, (1.0 + c.norm_sqr()).sqrt()));
        assert!(!is_hemisphere_disk(c, 2.0));
    }

    #[test]
    fn geodesic_examples() {
        let (u, v) = (sp(0.5, 0.0), sp(0.0, 0.5));
        match s_geodesic_through(u, v).unwrap() {
            SGeodesic::Arc { center, radius } => {
                assert!((center - Complex64::new(-0.75, -0.75)).norm() < 1e-15);
                assert!((radius - 1.457_737_973_711_325_1).abs() < 1e-15);
                assert!((1.0 + center.norm_sqr() - radius * radius).abs() < 1e-12);
                assert!(((u.finite().unwrap() - center).norm() - radius).abs() < 1e-12);
                assert!(((v.finite().unwrap() - center).norm() - radius).abs() < 1e-12);
            }
            other => panic!("expected arc, got {other:?}"),
        }
        assert!(matches!(s_geodesic_through(sp(0.3, 0.0), sp(-0.2, 0.0)).unwrap(), SGeodesic::Diameter { .. }));
        assert!(matches!(s_geodesic_through(sp(1.0, 0.0), sp(-1.0, 0.0)), Err(GeomError::Antipodal)));
        assert!(matches!(s_geodesic_through(sp(0.3, 0.4), SPoint::Infinity).unwrap(), SGeodesic::Diameter { .. }));
    }

    #[test]
    fn segment_examples() {
        let (u, v) = (sp(0.5, 0.0), sp(0.0, 0.5));
        assert_eq!(s_segment_point(u, v, 0.0).unwrap(), u);
        assert_eq!(s_segment_point(u, v, 1.0).unwrap(), v);
        let zero = s_segment_point(sp(-0.3, 0.0), sp(0.3, 0.0), 0.5).unwrap();
        assert!(zero.finite().unwrap().norm() < 1e-16);
        let mid = s_segment_point(u, v, 0.5).unwrap();
        assert!((s_dist(u, mid) - s_dist(mid, v)).abs() < 1e-13);
        assert!((s_dist(u, mid) + s_dist(mid, v) - s_dist(u, v)).abs() < 1e-13);
        let g = s_geodesic_through(u, v).unwrap();
        assert!(g.residual(mid.finite().unwrap()).abs() < 1e-12);
        assert!((mid.finite().unwrap() - Complex64::new(0.280_776_406_404_415_14, 0.280_776_406_404_415_14)).norm() < 1e-15);
        assert!(matches!(s_segment_point(sp(1.0, 0.0), sp(-1.0, 0.0), 0.5), Err(GeomError::Antipodal)));
        // segment from ∞
        let p = s_segment_point(SPoint::Infinity, sp(0.0, 2.0), 0.5).unwrap();
        assert!((s_dist(p, SPoint::Infinity) - 0.5 * s_dist(SPoint::Infinity, sp(0.0, 2.0))).abs() < 1e-13);
    }

    #[test]
    fn ray_intersection_examples() {
        let g = SGeodesic::Arc { center: Complex64::new(-0.75, -0.75), radius: 2.125f64.sqrt() };
        let lam = FRAC_PI_4;
        let rho = s_ray_arc_intersect(&g, lam).unwrap();
        let omega = -0.75 * 2f64.sqrt();
        assert!((rho - ((omega * omega + 1.0).sqrt() + omega)).abs() < 1e-15);
        assert!((rho - 0.397_077_801_931_503_8).abs() < 1e-15);
        assert!(g.residual(Complex64::from_polar(rho, lam)).abs() < 1e-14);
        assert!((s_ray_arc_intersect(&g, 0.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(s_ray_arc_intersect(&g, PI + lam).is_err());
    }

    #[test]
    fn half_angle_identity() {
        for i in 0..200 {
            let alpha = -50.0 * (i as f64 / 199.0).powi(3);
            let lhs = ((alpha * alpha + 1.0).sqrt() + alpha).atan();
            let rhs = 0.5 * 1f64.atan2(-alpha);
            assert!((lhs - rhs).abs() < 1e-14, "alpha={alpha}");
        }
    }

    #[test]
    fn closed_forms() {
        let rc = SRadialComparison::new(0.3, 0.5, 0.1, 1.3, 0.6, 1.2).unwrap();
        assert!((rc.s_star - FRAC_PI_4 / 0.5).abs() < 1e-15);
        assert!((s_r_closed_form(&rc) - 0.384_537_817_473_368).abs() < 1e-15);
        assert!((s_rho_closed_form(&rc) - 0.395_703_814_641_101_6).abs() < 1e-15);
        let one = rc.at_s(1.0).unwrap();
        assert!((s_rho_closed_form(&one) - s_r_closed_form(&one)).abs() < 1e-15);
        let tiny = rc.at_s(1e-9).unwrap();
        assert!(s_rho_closed_form(&tiny) < 1e-8);
        let small = SRadialComparison::new(0.2, 0.3, 0.1, 1.3, 0.6, 1.0).unwrap();
        let two = small.at_s(2.0).unwrap();
        assert!((s_r_closed_form(&two) - 2.0 * s_r_closed_form(&small)).abs() < 1e-15);
        assert!((rc.geometric_atan_rho().unwrap() - s_rho_closed_form(&rc)).abs() < 1e-12);
        assert!(rc.projection_denominator() <= 0.0);
    }

    #[test]
    fn radial_comparison_validation() {
        assert!(SRadialComparison::new(0.3, 0.5, 0.1, 1.3, 0.6, 0.9).is_err());
        assert!(SRadialComparison::new(0.3, 0.5, 0.1, 1.3, 0.6, 1.6).is_err());
        assert!(SRadialComparison::new(0.9, 0.5, 0.1, 1.3, 0.6, 1.0).is_err());
        assert!(SRadialComparison::from_t(0.3, 0.5, 0.1, 1.3, 0.5, 1.0).is_ok());
    }

    #[test]
    fn sphere_lift_round_trip() {
        let mut rng = Seed(3).stream(0);
        for _ in 0..1000 {
            let z = random_point(&mut rng, 5.0);
            let back = SPoint::from_sphere(z.to_sphere());
            assert!(close(back, z, 1e-14));
        }
        assert_eq!(SPoint::from_sphere(SPoint::Infinity.to_sphere()), SPoint::Infinity);
    }

    #[test]
    fn randomized_invariants() {
        let mut rng = Seed(13).stream(0);
        for _ in 0..2000 {
            let c = random_point(&mut rng, 3.0).finite().unwrap();
            let (u, v) = (random_point(&mut rng, 3.0), random_point(&mut rng, 3.0));
            let d = s_dist(u, v);
            assert!((s_dist(s_translate(c, u), s_translate(c, v)) - d).abs() < 1e-12);
            let (a, b) = (s_translate(c, u), s_translate(c, antipode(u)));
            assert!((s_dist(a, b) - PI).abs() < 1e-9);
            if let Ok(SGeodesic::Arc { center, radius }) = s_geodesic_through(u, v) {
                let n2 = 1.0 + center.norm_sqr();
                assert!((n2 - radius * radius).abs() <= 1e-12 * n2);
            }
        }
    }

    #[test]
    fn serde_round_trip() {
        let pts = vec![sp(0.5, -1.0), SPoint::Infinity];
        let json = serde_json::to_string(&pts).unwrap();
        assert_eq!(json, r#"[[0.5,-1.0],"inf"]"#);
        let back: Vec<SPoint> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, pts);
        assert!(serde_json::from_str::<SPoint>(r#""nan""#).is_err());
    }
}
