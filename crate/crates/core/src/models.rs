//! Projective charts in which geodesics are straight: the Klein disk for the
//! hyperbolic plane and the gnomonic chart of the open hemisphere about the
//! origin. Hulls and point-in-polygon tests go through these charts.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::hyperbolic::HPoint;
use crate::spherical::SPoint;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KleinPoint(Complex64);

impl KleinPoint {
    pub fn new(w: Complex64) -> Result<Self> {
        if !(w.re.is_finite() && w.im.is_finite()) || w.norm() >= 1.0 {
            return Err(GeomError::OutsideDisk { re: w.re, im: w.im });
        }
        Ok(Self(w))
    }

    pub fn w(self) -> Complex64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GnomonicPoint(Complex64);

impl GnomonicPoint {
    pub fn new(g: Complex64) -> Result<Self> {
        if !(g.re.is_finite() && g.im.is_finite()) {
            return Err(GeomError::NonFinite(format!("gnomonic point {g}")));
        }
        Ok(Self(g))
    }

    pub fn g(self) -> Complex64 {
        self.0
    }
}

pub fn poincare_to_klein(z: HPoint) -> KleinPoint {
    let z = z.z();
    KleinPoint(z * (2.0 / (1.0 + z.norm_sqr())))
}

pub fn klein_to_poincare(w: KleinPoint) -> HPoint {
    let w = w.0;
    let n2 = w.norm_sqr().min(1.0);
    HPoint::from_map(w / (1.0 + (1.0 - n2).sqrt()))
}

/// Defined on the open hemisphere `|z| < 1`.
pub fn stereo_to_gnomonic(z: SPoint) -> Result<GnomonicPoint> {
    match z {
        SPoint::Finite(z) if z.norm() < 1.0 => GnomonicPoint::new(z * (2.0 / (1.0 - z.norm_sqr()))),
        _ => Err(GeomError::Domain("gnomonic chart needs a point strictly inside the unit circle".into())),
    }
}

pub fn gnomonic_to_stereo(g: GnomonicPoint) -> SPoint {
    let g = g.0;
    SPoint::Finite(g / (1.0 + (1.0 + g.norm_sqr()).sqrt()))
}

/// Point of the hyperboloid `-x0^2 + x1^2 + x2^2 = -1`, `x0 > 0`.
pub fn hyperboloid_lift(z: HPoint) -> [f64; 3] {
    let z = z.z();
    let n2 = z.norm_sqr();
    let den = 1.0 - n2;
    [(1.0 + n2) / den, 2.0 * z.re / den, 2.0 * z.im / den]
}

/// Inverse of [`hyperboloid_lift`]; accepts any future-pointing timelike vector.
pub fn hyperboloid_unlift(x: [f64; 3]) -> HPoint {
    let q = (x[0] * x[0] - x[1] * x[1] - x[2] * x[2]).max(f64::MIN_POSITIVE).sqrt();
    let [x0, x1, x2] = [x[0] / q, x[1] / q, x[2] / q];
    HPoint::from_map(Complex64::new(x1, x2) / (1.0 + x0))
}
