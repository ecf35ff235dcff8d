use std::f64::consts::FRAC_PI_2;
use std::marker::PhantomData;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::report::{Expectation, SuiteReport};
use super::theorems::{draw_k, run_suite, TheoremParams};
use crate::convexity::{MapSpec, PointMap, PolygonParams};
use crate::error::{GeomError, Result};
use crate::geometry::{Geometry, Hyperbolic, Model, Spherical};
use crate::hyperbolic::HPoint;
use crate::spherical::SPoint;

/// Tag recorded with every asymmetric map: the two factors act on the
/// components of the geodesic polar coordinates at the centre.
pub const INTERPRETATION: &str = "geodesic-polar";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AsymModel {
    Euclidean,
    Hyperbolic,
    Spherical,
}

/// Scales the tangent vector `d e^{iθ}` at the centre to `d (k1 cos θ + i k2 sin θ)`.
/// With `k1 = k2` this is the ordinary dilation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymmetricDilation {
    pub model: AsymModel,
    pub center: Complex64,
    pub k1: f64,
    pub k2: f64,
}

fn check_factors(k1: f64, k2: f64) -> Result<()> {
    if !(k1.is_finite() && k2.is_finite() && k1 > 0.0 && k2 > 0.0) {
        return Err(GeomError::InvalidParams(format!("factors ({k1}, {k2}) must be positive")));
    }
    Ok(())
}

fn stretch(k1: f64, k2: f64, d: f64, theta: f64) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    (d * (k1 * c).hypot(k2 * s), (k2 * s).atan2(k1 * c))
}

impl AsymmetricDilation {
    pub fn new(model: AsymModel, center: Complex64, k1: f64, k2: f64) -> Result<Self> {
        check_factors(k1, k2)?;
        Ok(Self { model, center, k1, k2 })
    }

    pub fn inverse(&self) -> Self {
        Self { k1: 1.0 / self.k1, k2: 1.0 / self.k2, ..*self }
    }
}

pub fn asym_dilate(a: &AsymmetricDilation, z: Complex64) -> Result<Complex64> {
    match a.model {
        AsymModel::Euclidean => {
            let w = z - a.center;
            let (d, th) = stretch(a.k1, a.k2, w.norm(), w.arg());
            Ok(a.center + Complex64::from_polar(d, th))
        }
        AsymModel::Hyperbolic => {
            let m = AsymMap::<Hyperbolic>::new(HPoint::new(a.center)?, a.k1, a.k2)?;
            Ok(m.forward(HPoint::new(z)?)?.z())
        }
        AsymModel::Spherical => {
            let m = AsymMap::<Spherical>::new(SPoint::new(a.center)?, a.k1, a.k2)?;
            m.forward(SPoint::new(z)?)?
                .finite()
                .ok_or_else(|| GeomError::Range("image is the point at infinity".into()))
        }
    }
}

/// Asymmetric dilation as a region map in either curved model.
#[derive(Debug, Clone, Copy)]
pub struct AsymMap<G: Geometry> {
    pub center: G::Point,
    pub k1: f64,
    pub k2: f64,
    _g: PhantomData<G>,
}

impl<G: Geometry> AsymMap<G> {
    pub fn new(center: G::Point, k1: f64, k2: f64) -> Result<Self> {
        check_factors(k1, k2)?;
        G::polar(center, center)?;
        Ok(Self { center, k1, k2, _g: PhantomData })
    }

    fn apply(&self, p: G::Point, k1: f64, k2: f64) -> Result<G::Point> {
        let (d, th) = G::polar(self.center, p)?;
        let (d2, th2) = stretch(k1, k2, d, th);
        if d2 >= G::max_distance() {
            return Err(GeomError::Range(format!("image distance {d2} out of range")));
        }
        G::from_polar(self.center, d2, th2)
    }
}

impl<G: Geometry> PointMap<G> for AsymMap<G> {
    fn forward(&self, p: G::Point) -> Result<G::Point> {
        if p == self.center {
            return Ok(p);
        }
        self.apply(p, self.k1, self.k2)
    }

    fn inverse(&self, p: G::Point) -> Result<G::Point> {
        if p == self.center {
            return Ok(p);
        }
        self.apply(p, 1.0 / self.k1, 1.0 / self.k2)
    }

    fn center(&self) -> G::Point {
        self.center
    }

    fn max_stretch(&self) -> f64 {
        self.k1.max(self.k2)
    }

    fn spec(&self) -> MapSpec<G::Point> {
        MapSpec::Asymmetric { center: self.center, k1: self.k1, k2: self.k2, interpretation: INTERPRETATION.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjectureParams {
    pub model: Model,
    pub k1_range: (f64, f64),
    pub k2_range: (f64, f64),
    pub suite: TheoremParams,
}

impl ConjectureParams {
    /// Defaults match the corresponding theorem suite, with both factors
    /// drawn independently from its range.
    pub fn new(model: Model, seed: crate::numerics::Seed) -> Self {
        let suite = match model {
            Model::Hyperbolic => TheoremParams::hyperbolic(seed),
            Model::Spherical => TheoremParams::spherical(seed),
        };
        Self { model, k1_range: suite.k_range, k2_range: suite.k_range, suite }
    }
}

/// Random polygons under random asymmetric dilations about a member point.
/// The run is exploratory: the verdict is recorded but never expected.
pub fn run_conjecture_scan(p: &ConjectureParams) -> Result<SuiteReport> {
    for (lo, hi) in [p.k1_range, p.k2_range] {
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(GeomError::InvalidParams(format!("factor range [{lo}, {hi}] must be positive and ordered")));
        }
    }
    let (r1, r2) = (p.k1_range, p.k2_range);
    let mut report = match p.model {
        Model::Hyperbolic => run_suite::<Hyperbolic>("conjecture", &p.suite, Expectation::None, None, &move |c, rng| {
            let (k1, k2) = (draw_k(rng, r1), draw_k(rng, r2));
            Ok(Arc::new(AsymMap::<Hyperbolic>::new(c, k1, k2)?))
        })?,
        Model::Spherical => run_suite::<Spherical>("conjecture", &p.suite, Expectation::None, None, &move |c, rng| {
            let (k1, k2) = (draw_k(rng, r1), draw_k(rng, r2));
            Ok(Arc::new(AsymMap::<Spherical>::new(c, k1, k2)?))
        })?,
    };
    report.params = serde_json::json!({
        "model": p.model,
        "k1_range": p.k1_range,
        "k2_range": p.k2_range,
        "interpretation": INTERPRETATION,
        "suite": report.params,
    });
    Ok(report)
}

/// Polygon parameters used by the default scans.
pub fn default_polygon(model: Model) -> PolygonParams {
    match model {
        Model::Hyperbolic => PolygonParams { min_points: 3, max_points: 8, radius: 2.5, placement: 1.0 },
        Model::Spherical => PolygonParams { min_points: 3, max_points: 8, radius: FRAC_PI_2 - 0.05, placement: 1.0 },
    }
}
