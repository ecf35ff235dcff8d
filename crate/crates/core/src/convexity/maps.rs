use std::fmt::Debug;
use std::marker::PhantomData;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geometry::{Geometry, Hyperbolic, Spherical};
use crate::hyperbolic::{h_dilate, HDilation, HPoint};
use crate::spherical::{s_dilate, SDilation, SPoint};

/// An invertible point map used to push regions forward. Membership in the
/// image is decided by pulling back through `inverse`.
pub trait PointMap<G: Geometry>: Debug + Send + Sync {
    fn forward(&self, p: G::Point) -> Result<G::Point>;
    fn inverse(&self, p: G::Point) -> Result<G::Point>;
    /// Fixed point of the map.
    fn center(&self) -> G::Point;
    /// Upper bound on the ratio of image to preimage distance from the centre.
    fn max_stretch(&self) -> f64;
    fn spec(&self) -> MapSpec<G::Point>;
}

/// Serializable description of a map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MapSpec<P> {
    Dilation { center: P, k: f64 },
    Asymmetric { center: P, k1: f64, k2: f64, interpretation: String },
    ChartScaling { k: f64 },
}

impl PointMap<Hyperbolic> for HDilation {
    fn forward(&self, p: HPoint) -> Result<HPoint> {
        Ok(h_dilate(self, p))
    }

    fn inverse(&self, p: HPoint) -> Result<HPoint> {
        Ok(h_dilate(&HDilation::inverse(self), p))
    }

    fn center(&self) -> HPoint {
        self.c
    }

    fn max_stretch(&self) -> f64 {
        self.k
    }

    fn spec(&self) -> MapSpec<HPoint> {
        MapSpec::Dilation { center: self.c, k: self.k }
    }
}

impl PointMap<Spherical> for SDilation {
    fn forward(&self, p: SPoint) -> Result<SPoint> {
        s_dilate(self, p)
    }

    fn inverse(&self, p: SPoint) -> Result<SPoint> {
        s_dilate(&SDilation::inverse(self), p)
    }

    fn center(&self) -> SPoint {
        SPoint::Finite(self.c)
    }

    fn max_stretch(&self) -> f64 {
        self.k
    }

    fn spec(&self) -> MapSpec<SPoint> {
        MapSpec::Dilation { center: SPoint::Finite(self.c), k: self.k }
    }
}

/// Euclidean scaling `w -> k w` of the straightening chart about the origin.
/// Straight lines go to straight lines, so convexity is preserved for every
/// `k > 0`; used as a control for the checker.
#[derive(Debug, Clone, Copy)]
pub struct ChartScaling<G> {
    pub k: f64,
    _g: PhantomData<G>,
}

impl<G: Geometry> ChartScaling<G> {
    pub fn new(k: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(GeomError::InvalidParams(format!("scale {k} must be positive")));
        }
        Ok(Self { k, _g: PhantomData })
    }

    fn scale(&self, p: G::Point, k: f64) -> Result<G::Point> {
        // points off the chart have no image or preimage under the scaling
        let off = |e| match e {
            GeomError::Domain(m) => GeomError::Range(m),
            e => e,
        };
        let w: Complex64 = G::chart(p).map_err(off)?;
        G::unchart(w * k).map_err(off)
    }
}

impl<G: Geometry> PointMap<G> for ChartScaling<G> {
    fn forward(&self, p: G::Point) -> Result<G::Point> {
        self.scale(p, self.k)
    }

    fn inverse(&self, p: G::Point) -> Result<G::Point> {
        self.scale(p, 1.0 / self.k)
    }

    fn center(&self) -> G::Point {
        G::origin()
    }

    fn max_stretch(&self) -> f64 {
        // chart radii and geodesic distances are not proportional; the
        // region bound falls back to the model's largest distance
        f64::INFINITY
    }

    fn spec(&self) -> MapSpec<G::Point> {
        MapSpec::ChartScaling { k: self.k }
    }
}
