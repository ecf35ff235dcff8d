use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::region::GeodesicPolygon;
use crate::error::Result;
use crate::geometry::Geometry;

/// A random convex polygon placed by an isometry. `center` is the image of
/// the origin of the generating frame and is always a member.
#[derive(Debug, Clone)]
pub struct PolygonDraw<G: Geometry> {
    pub polygon: GeodesicPolygon<G>,
    pub center: G::Point,
    /// Generating points before placement.
    pub frame_points: Vec<G::Point>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolygonParams {
    pub min_points: usize,
    pub max_points: usize,
    /// Radius of the generating disk about the frame origin.
    pub radius: f64,
    /// Largest distance the frame origin is moved.
    pub placement: f64,
}

/// Draws 3 to 8 points in the geodesic disk of radius `params.radius` about
/// the origin, adds the origin, hulls, and moves the result by a random
/// isometry taking the origin to a point within `params.placement`.
pub fn random_convex_polygon<G: Geometry, R: Rng + ?Sized>(rng: &mut R, params: &PolygonParams, eq_abs: f64) -> Result<PolygonDraw<G>> {
    let n = rng.random_range(params.min_points..=params.max_points);
    let mut pts = Vec::with_capacity(n + 1);
    for _ in 0..n {
        // area-uniform in the conformal radius
        let u: f64 = rng.random();
        let d = params.radius * u.sqrt();
        pts.push(G::from_polar(G::origin(), d, rng.random_range(-PI..PI))?);
    }
    pts.push(G::origin());
    let center = G::from_polar(G::origin(), params.placement * rng.random::<f64>(), rng.random_range(-PI..PI))?;
    let placed = pts.iter().map(|&p| G::translate(center, p)).collect::<Result<Vec<_>>>()?;
    Ok(PolygonDraw { polygon: GeodesicPolygon::new(&placed, eq_abs)?, center, frame_points: pts })
}
