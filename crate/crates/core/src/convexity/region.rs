use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::hull::{chart_about, frame_for, hull, turn, Hull};
use super::maps::{MapSpec, PointMap};
use crate::error::{GeomError, Result};
use crate::geometry::{add3, scale3, Geometry, Model, Vec3};

/// Consecutive rejections after which a draw is abandoned.
const MAX_ATTEMPTS: u64 = 100_000;

/// Geodesic convex hull of finitely many points.
#[derive(Debug, Clone)]
pub struct GeodesicPolygon<G: Geometry> {
    vertices: Vec<G::Point>,
    frame: G::Point,
    chart: Vec<Complex64>,
    /// Vertex lifts in frame coordinates.
    lifted: Vec<Vec3>,
    /// Unit edge normals in frame coordinates, pointing outward.
    normals: Vec<Vec3>,
    perturbed: usize,
}

impl<G: Geometry> GeodesicPolygon<G> {
    /// Hull of `points`.
    pub fn new(points: &[G::Point], eq_abs: f64) -> Result<Self> {
        Self::from_hull(hull::<G>(points, eq_abs)?)
    }

    pub fn from_hull(h: Hull<G>) -> Result<Self> {
        let Hull { vertices, perturbed, .. } = h;
        // margins are evaluated in the frame of the vertex barycentre, which
        // lies inside the polygon
        let frame = frame_for::<G>(&vertices)?;
        let lifted = vertices
            .iter()
            .map(|&v| Ok(G::lift(G::translate_inv(frame, v)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut normals = Vec::new();
        if lifted.len() >= 3 {
            let inside = lifted.iter().fold([0.0; 3], |a, &p| add3(a, p));
            for i in 0..lifted.len() {
                let n = G::normal(lifted[i], lifted[(i + 1) % lifted.len()]);
                let len = G::inner(n, n);
                if !(len > 0.0) {
                    return Err(GeomError::Degenerate("polygon edge has no normal".into()));
                }
                let mut n = scale3(n, 1.0 / len.sqrt());
                if G::inner(n, inside) > 0.0 {
                    n = scale3(n, -1.0);
                }
                normals.push(n);
            }
        }
        let (chart, _) = chart_about::<G>(frame, &vertices)?;
        Ok(Self { vertices, frame, chart, lifted, normals, perturbed })
    }

    pub fn vertices(&self) -> &[G::Point] {
        &self.vertices
    }

    pub fn frame(&self) -> G::Point {
        self.frame
    }

    /// Number of hull inputs moved off the chart equator.
    pub fn perturbed(&self) -> usize {
        self.perturbed
    }

    /// Signed escape distance: positive outside, at most zero inside. For
    /// two or more edges it is the largest signed distance to an edge line,
    /// a lower bound for the distance to the polygon.
    pub fn margin(&self, p: G::Point) -> Result<f64> {
        let local = G::translate_inv(self.frame, p)?;
        match self.lifted.len() {
            1 => Ok(G::dist(G::translate_inv(self.frame, self.vertices[0])?, local)),
            2 => self.segment_distance(local),
            _ => {
                let x = G::lift(local);
                Ok(self
                    .normals
                    .iter()
                    .map(|&n| G::dist_from_inner(G::inner(x, n)))
                    .fold(f64::NEG_INFINITY, f64::max))
            }
        }
    }

    fn segment_distance(&self, local: G::Point) -> Result<f64> {
        let (a, b) = (self.lifted[0], self.lifted[1]);
        let x = G::lift(local);
        let n = G::normal(a, b);
        let len = G::inner(n, n);
        let endpoints = || -> Result<f64> {
            let va = G::translate_inv(self.frame, self.vertices[0])?;
            let vb = G::translate_inv(self.frame, self.vertices[1])?;
            Ok(G::dist(va, local).min(G::dist(vb, local)))
        };
        if !(len > 0.0) {
            return endpoints();
        }
        let n = scale3(n, 1.0 / len.sqrt());
        let s = G::inner(x, n);
        // foot of the perpendicular is alpha a + beta b
        let (aa, ab, bb) = (G::inner(a, a), G::inner(a, b), G::inner(b, b));
        let (xa, xb) = (G::inner(x, a), G::inner(x, b));
        let det = aa * bb - ab * ab;
        let alpha = (xa * bb - xb * ab) / det;
        let beta = (xb * aa - xa * ab) / det;
        if alpha.is_finite() && beta.is_finite() && alpha >= 0.0 && beta >= 0.0 && (alpha > 0.0 || beta > 0.0) {
            Ok(G::dist_from_inner(s).abs())
        } else {
            endpoints()
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<G::Point> {
        match self.vertices.len() {
            1 => Ok(self.vertices[0]),
            2 => G::segment_point(self.vertices[0], self.vertices[1], rng.random::<f64>()),
            _ => {
                let (mut lo, mut hi) = (self.chart[0], self.chart[0]);
                for w in &self.chart {
                    lo = Complex64::new(lo.re.min(w.re), lo.im.min(w.im));
                    hi = Complex64::new(hi.re.max(w.re), hi.im.max(w.im));
                }
                let frame = self.frame;
                let n = self.chart.len();
                for _ in 0..MAX_ATTEMPTS {
                    let w = Complex64::new(rng.random_range(lo.re..=hi.re), rng.random_range(lo.im..=hi.im));
                    if (0..n).all(|i| turn(self.chart[i], self.chart[(i + 1) % n], w) >= 0.0) {
                        return G::translate(frame, G::unchart(w)?);
                    }
                }
                Err(GeomError::SamplingFailure { rate: 0.0, attempts: MAX_ATTEMPTS })
            }
        }
    }

    fn within(&self, c: G::Point, radius: f64, eq_abs: f64) -> bool {
        self.vertices.iter().all(|&v| G::dist(c, v) <= radius + eq_abs)
    }

    fn bound(&self) -> (G::Point, f64) {
        let r = self.vertices.iter().map(|&v| G::dist(self.frame, v)).fold(0.0, f64::max);
        (self.frame, r)
    }
}

type MarginFn<P> = dyn Fn(P) -> Result<f64> + Send + Sync;

/// A set given by a signed-margin predicate (`<= 0` inside) together with a
/// ball `(center, radius)` containing it.
#[derive(Clone)]
pub struct OracleRegion<G: Geometry> {
    pub label: String,
    pub center: G::Point,
    pub radius: f64,
    pub anchors: Vec<G::Point>,
    pub spec: Option<RegionSpec<G::Point>>,
    margin: Arc<MarginFn<G::Point>>,
}

impl<G: Geometry> fmt::Debug for OracleRegion<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OracleRegion")
            .field("label", &self.label)
            .field("center", &self.center)
            .field("radius", &self.radius)
            .finish()
    }
}

/// Region representations. Dilated regions keep their base and answer
/// membership by pulling points back through the inverse map.
#[derive(Debug, Clone)]
pub enum Region<G: Geometry> {
    Polygon(Arc<GeodesicPolygon<G>>),
    Oracle(Arc<OracleRegion<G>>),
    Mapped {
        base: Arc<Region<G>>,
        map: Arc<dyn PointMap<G>>,
        warnings: Vec<String>,
    },
}

/// Serializable region description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RegionSpec<P> {
    Polygon { vertices: Vec<P> },
    /// Closed geodesic disk.
    Disk { center: P, radius: f64 },
    /// Closed half-plane bounded by the geodesic through `a` and `b`, on
    /// the side of `inside`.
    HalfPlane { a: P, b: P, inside: P },
    Dilated { base: Box<RegionSpec<P>>, map: MapSpec<P> },
}

impl<G: Geometry> Region<G> {
    pub fn polygon(points: &[G::Point], eq_abs: f64) -> Result<Self> {
        Ok(Region::Polygon(Arc::new(GeodesicPolygon::new(points, eq_abs)?)))
    }

    pub fn oracle<F>(label: &str, center: G::Point, radius: f64, anchors: Vec<G::Point>, margin: F) -> Self
    where
        F: Fn(G::Point) -> Result<f64> + Send + Sync + 'static,
    {
        Region::Oracle(Arc::new(OracleRegion {
            label: label.to_string(),
            center,
            radius,
            anchors,
            spec: None,
            margin: Arc::new(margin),
        }))
    }

    pub fn disk(center: G::Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius < G::max_distance()) {
            return Err(GeomError::InvalidParams(format!("disk radius {radius}")));
        }
        let mut r = Self::oracle("disk", center, radius, Vec::new(), move |p| Ok(G::dist(center, p) - radius));
        if let Region::Oracle(o) = &mut r {
            Arc::get_mut(o).expect("fresh").spec = Some(RegionSpec::Disk { center, radius });
        }
        Ok(r)
    }

    /// Half-plane truncated to the largest ball the sampler can use.
    pub fn half_plane(a: G::Point, b: G::Point, inside: G::Point) -> Result<Self> {
        let n = G::normal(G::lift(a), G::lift(b));
        let len = G::inner(n, n);
        if !(len > 0.0) || a == b {
            return Err(GeomError::Degenerate("half-plane needs two distinct boundary points".into()));
        }
        let mut n = scale3(n, 1.0 / len.sqrt());
        let side = G::inner(G::lift(inside), n);
        if side.abs() < 1e-12 {
            return Err(GeomError::Degenerate("reference point lies on the boundary".into()));
        }
        if side > 0.0 {
            n = scale3(n, -1.0);
        }
        let radius = match G::MODEL {
            Model::Hyperbolic => G::max_distance() - G::dist(G::origin(), inside),
            Model::Spherical => PI,
        };
        let margin = move |p: G::Point| Ok(G::dist_from_inner(G::inner(G::lift(p), n)));
        let mut r = Self::oracle("half-plane", inside, radius, Vec::new(), margin);
        if let Region::Oracle(o) = &mut r {
            Arc::get_mut(o).expect("fresh").spec = Some(RegionSpec::HalfPlane { a, b, inside });
        }
        Ok(r)
    }

    pub fn from_spec(spec: &RegionSpec<G::Point>, eq_abs: f64, map_builder: &dyn Fn(&MapSpec<G::Point>) -> Result<Arc<dyn PointMap<G>>>) -> Result<Self> {
        match spec {
            RegionSpec::Polygon { vertices } => {
                if vertices.is_empty() {
                    return Err(GeomError::Schema("polygon needs at least one vertex".into()));
                }
                Self::polygon(vertices, eq_abs)
            }
            RegionSpec::Disk { center, radius } => Self::disk(*center, *radius),
            RegionSpec::HalfPlane { a, b, inside } => Self::half_plane(*a, *b, *inside),
            RegionSpec::Dilated { base, map } => {
                let base = Self::from_spec(base, eq_abs, map_builder)?;
                Ok(base.dilate(map_builder(map)?, eq_abs))
            }
        }
    }

    pub fn to_spec(&self) -> Option<RegionSpec<G::Point>> {
        match self {
            Region::Polygon(p) => Some(RegionSpec::Polygon { vertices: p.vertices.clone() }),
            Region::Oracle(o) => o.spec.clone(),
            Region::Mapped { base, map, .. } => Some(RegionSpec::Dilated { base: Box::new(base.to_spec()?), map: map.spec() }),
        }
    }

    /// Signed escape distance measured in the base region: positive means
    /// outside. Mapped regions report the base margin of the pulled-back point.
    pub fn margin(&self, p: G::Point) -> Result<f64> {
        match self {
            Region::Polygon(poly) => poly.margin(p),
            Region::Oracle(o) => (o.margin)(p),
            Region::Mapped { base, map, .. } => base.margin(map.inverse(p)?),
        }
    }

    /// Closed membership: the `eq_abs` band around the boundary counts as inside.
    pub fn contains(&self, p: G::Point, eq_abs: f64) -> Result<bool> {
        Ok(self.margin(p)? <= eq_abs)
    }

    /// A point of the region. For a mapped region this is the image of the
    /// base centre, which is the map centre whenever that lies in the base.
    pub fn center(&self) -> Result<G::Point> {
        match self {
            Region::Polygon(p) => Ok(p.frame),
            Region::Oracle(o) => Ok(o.center),
            Region::Mapped { base, map, .. } => map.forward(base.center()?),
        }
    }

    /// Ball containing the region.
    pub fn bound(&self) -> Result<(G::Point, f64)> {
        let cap = G::max_distance();
        match self {
            Region::Polygon(p) => Ok(p.bound()),
            Region::Oracle(o) => Ok((o.center, o.radius.min(cap))),
            Region::Mapped { base, map, .. } => {
                let (bc, br) = base.bound()?;
                let c = map.center();
                let r = map.max_stretch() * (G::dist(c, bc) + br);
                Ok((c, if r.is_finite() { r.min(cap) } else { cap }))
            }
        }
    }

    /// Distinguished points tried pairwise before random trials: polygon
    /// vertices and their images.
    pub fn anchors(&self) -> Vec<G::Point> {
        match self {
            Region::Polygon(p) => p.vertices.clone(),
            Region::Oracle(o) => o.anchors.clone(),
            Region::Mapped { base, map, .. } => base.anchors().into_iter().filter_map(|a| map.forward(a).ok()).collect(),
        }
    }

    pub fn warnings(&self) -> Vec<String> {
        match self {
            Region::Polygon(p) if p.perturbed > 0 => {
                vec![format!("{} hull point(s) moved 1e-9 inward from the chart equator", p.perturbed)]
            }
            Region::Mapped { base, warnings, .. } => {
                let mut w = base.warnings();
                w.extend(warnings.iter().cloned());
                w
            }
            _ => Vec::new(),
        }
    }

    /// Whether the region lies in the closed ball `(c, radius)`; `None` when
    /// this cannot be decided from the representation.
    pub fn within(&self, c: G::Point, radius: f64, eq_abs: f64) -> Option<bool> {
        match self {
            Region::Polygon(p) => Some(p.within(c, radius, eq_abs)),
            Region::Oracle(o) => (G::dist(c, o.center) + o.radius <= radius + eq_abs).then_some(true),
            Region::Mapped { .. } => None,
        }
    }

    /// Random point of the region. Polygons sample their straightened chart
    /// by rejection, oracles sample a conformal disk around their bounding
    /// ball, and mapped regions push forward a sample of the base.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, eq_abs: f64) -> Result<G::Point> {
        match self {
            Region::Polygon(p) => p.sample(rng),
            Region::Oracle(o) => {
                let radius = G::conformal_radius(o.radius.min(G::max_distance() - 1e-6));
                for _ in 0..MAX_ATTEMPTS {
                    let z = Complex64::from_polar(radius * rng.random::<f64>().sqrt(), rng.random_range(-PI..PI));
                    let p = G::translate(o.center, G::from_plane(z)?)?;
                    if (o.margin)(p)? <= eq_abs {
                        return Ok(p);
                    }
                }
                Err(GeomError::SamplingFailure { rate: 0.0, attempts: MAX_ATTEMPTS })
            }
            Region::Mapped { base, map, .. } => {
                for _ in 0..MAX_ATTEMPTS {
                    match map.forward(base.sample(rng, eq_abs)?) {
                        Ok(p) => return Ok(p),
                        Err(GeomError::Range(_)) => continue,
                        Err(e) => return Err(e),
                    }
                }
                Err(GeomError::SamplingFailure { rate: 0.0, attempts: MAX_ATTEMPTS })
            }
        }
    }

    /// Image of the region under `map`. Hypotheses of the dilation theorems
    /// that fail are recorded as warnings rather than errors.
    pub fn dilate(&self, map: Arc<dyn PointMap<G>>, eq_abs: f64) -> Region<G> {
        let mut warnings = Vec::new();
        let c = map.center();
        match self.margin(c) {
            Ok(m) if m <= eq_abs => {}
            Ok(m) => warnings.push(format!("dilation centre lies outside the region (margin {m:.3e})")),
            Err(e) => warnings.push(format!("dilation centre membership undecided: {e}")),
        }
        if G::MODEL == Model::Spherical {
            let contracting = match map.spec() {
                MapSpec::Dilation { k, .. } => k <= 1.0,
                MapSpec::Asymmetric { k1, k2, .. } => k1.max(k2) <= 1.0,
                MapSpec::ChartScaling { .. } => false,
            };
            if contracting {
                match self.within(c, FRAC_PI_2, eq_abs) {
                    Some(true) => {}
                    Some(false) => warnings.push("region is not contained in the closed hemisphere about the dilation centre".into()),
                    None => warnings.push("hemisphere containment about the dilation centre not verified".into()),
                }
            }
            let dropped = self.anchors().into_iter().filter(|&a| map.forward(a).is_err()).count();
            if dropped > 0 {
                warnings.push(format!("{dropped} anchor(s) have no image: dilated distance reaches pi"));
            }
        }
        Region::Mapped { base: Arc::new(self.clone()), map, warnings }
    }
}

/// Largest modulus along the ray `e^{iλ}` from the origin that is still in
/// the region: a coarse scan of `resolution` steps in distance, then
/// bisection. Assumes the region is star-shaped about the origin.
pub fn radial_farthest<G: Geometry>(r: &Region<G>, lambda: f64, resolution: usize, eq_abs: f64) -> Result<f64> {
    let (c, rad) = r.bound()?;
    let reach = (G::dist(G::origin(), c) + rad).min(G::max_distance() * (1.0 - 1e-12));
    let at = |d: f64| G::from_polar(G::origin(), d, lambda);
    let modulus = |p: G::Point| G::to_plane(p).map_or(f64::INFINITY, |z| z.norm());
    let inside = |d: f64| -> Result<bool> {
        match r.margin(at(d)?) {
            Ok(m) => Ok(m <= eq_abs),
            Err(GeomError::Range(_)) => Ok(false),
            Err(e) => Err(e),
        }
    };
    let steps = resolution.max(1);
    let mut prev = 0.0;
    for i in 1..=steps {
        let d = reach * i as f64 / steps as f64;
        if !inside(d)? {
            let (mut lo, mut hi) = (prev, d);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if inside(mid)? {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if modulus(at(hi)?) - modulus(at(lo)?) < 1e-13 {
                    break;
                }
            }
            return Ok(modulus(at(lo)?));
        }
        prev = d;
    }
    Ok(modulus(at(reach)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Hyperbolic, Spherical};
    use crate::hyperbolic::{h_dilate, h_ray_arc_intersect, h_geodesic_through, HDilation, HPoint};
    use crate::numerics::Seed;
    use crate::spherical::SPoint;

    fn hp(x: f64, y: f64) -> HPoint {
        HPoint::from_xy(x, y).unwrap()
    }

    fn triangle() -> Region<Hyperbolic> {
        Region::polygon(&[hp(-0.3, -0.2), hp(0.5, -0.1), hp(0.0, 0.6)], 1e-12).unwrap()
    }

    #[test]
    fn vertices_are_members() {
        let r = triangle();
        for v in r.anchors() {
            assert!(r.contains(v, 1e-12).unwrap());
        }
        assert!(r.contains(HPoint::ORIGIN, 1e-12).unwrap());
        assert!(!r.contains(hp(0.0, -0.9), 1e-12).unwrap());
    }

    #[test]
    fn half_disk_far_point() {
        let r = Region::<Hyperbolic>::polygon(&[hp(-0.95, 0.0), hp(0.95, 0.0), hp(0.0, 0.95)], 1e-12).unwrap();
        assert!(!r.contains(hp(0.0, -0.9), 1e-12).unwrap());
        let hpl = Region::<Hyperbolic>::half_plane(hp(-0.5, 0.0), hp(0.5, 0.0), hp(0.0, 0.5)).unwrap();
        assert!(hpl.contains(hp(0.9, 0.05), 1e-12).unwrap());
        assert!(!hpl.contains(hp(0.0, -0.1), 1e-12).unwrap());
    }

    #[test]
    fn margin_is_edge_distance() {
        // square symmetric about 0; the point below the bottom edge
        let r = Region::<Hyperbolic>::polygon(&[hp(0.5, 0.5), hp(-0.5, 0.5), hp(-0.5, -0.5), hp(0.5, -0.5)], 1e-12).unwrap();
        let inside = r.margin(HPoint::ORIGIN).unwrap();
        assert!(inside < 0.0);
        let seg = Region::<Hyperbolic>::polygon(&[hp(-0.5, 0.0), hp(0.5, 0.0)], 1e-12).unwrap();
        let p = hp(0.0, 0.3);
        assert!((seg.margin(p).unwrap() - crate::hyperbolic::h_dist_origin(p)).abs() < 1e-12);
        let q = hp(0.8, 0.0);
        assert!((seg.margin(q).unwrap() - crate::hyperbolic::h_dist(q, hp(0.5, 0.0))).abs() < 1e-12);
        let point = Region::<Hyperbolic>::polygon(&[hp(0.1, 0.1)], 1e-12).unwrap();
        assert!((point.margin(HPoint::ORIGIN).unwrap() - crate::hyperbolic::h_dist_origin(hp(0.1, 0.1))).abs() < 1e-14);
    }

    #[test]
    fn dilated_membership_by_pullback() {
        let r = triangle();
        let d = HDilation::new(HPoint::ORIGIN, 2.0).unwrap();
        let image = r.dilate(Arc::new(d), 1e-12);
        assert!(image.warnings().is_empty());
        for v in r.anchors() {
            assert!(image.contains(h_dilate(&d, v), 1e-12).unwrap());
        }
        let inner = hp(0.05, 0.1);
        assert!(image.contains(h_dilate(&d, inner), 1e-12).unwrap());
    }

    #[test]
    fn identity_dilation_keeps_membership() {
        let r = triangle();
        let image = r.dilate(Arc::new(HDilation::new(hp(0.1, 0.1), 1.0).unwrap()), 1e-12);
        let mut rng = Seed(4).stream(0);
        for _ in 0..1000 {
            let p = HPoint::new(Complex64::from_polar(0.9 * rng.random::<f64>(), rng.random_range(-PI..PI))).unwrap();
            assert_eq!(r.contains(p, 1e-12).unwrap(), image.contains(p, 1e-12).unwrap());
        }
    }

    #[test]
    fn outside_centre_warns() {
        let r = triangle();
        let image = r.dilate(Arc::new(HDilation::new(hp(0.0, -0.8), 1.5).unwrap()), 1e-12);
        assert_eq!(image.warnings().len(), 1);
    }

    #[test]
    fn samples_are_members() {
        let mut rng = Seed(8).stream(0);
        let r = triangle();
        let disk = Region::<Spherical>::disk(SPoint::from_xy(0.3, 0.0).unwrap(), 1.0).unwrap();
        let image = r.dilate(Arc::new(HDilation::new(HPoint::ORIGIN, 3.0).unwrap()), 1e-12);
        for _ in 0..500 {
            assert!(r.contains(r.sample(&mut rng, 1e-12).unwrap(), 1e-12).unwrap());
            assert!(disk.contains(disk.sample(&mut rng, 1e-12).unwrap(), 1e-12).unwrap());
            assert!(image.contains(image.sample(&mut rng, 1e-12).unwrap(), 1e-10).unwrap());
        }
    }

    #[test]
    fn radial_farthest_disk() {
        let d = 1.7;
        let r = Region::<Hyperbolic>::disk(HPoint::ORIGIN, d).unwrap();
        for lam in [0.0, 1.0, 2.5, -2.0] {
            let rho = radial_farthest(&r, lam, 64, 1e-12).unwrap();
            assert!((rho - (0.5 * d).tanh()).abs() < 1e-12, "{rho}");
        }
    }

    #[test]
    fn radial_farthest_half_plane_reaches_boundary() {
        let r = Region::<Hyperbolic>::half_plane(hp(-0.5, 0.0), hp(0.5, 0.0), hp(0.0, 0.5)).unwrap();
        let rho = radial_farthest(&r, 1.2, 64, 1e-12).unwrap();
        assert!(rho > 1.0 - 1e-8);
    }

    #[test]
    fn radial_farthest_matches_ray_intersection() {
        // half-plane containing 0 bounded by a chord geodesic
        let (a, b) = (hp(0.6, -0.2), hp(0.3, 0.7));
        let r = Region::<Hyperbolic>::half_plane(a, b, HPoint::ORIGIN).unwrap();
        let g = h_geodesic_through(a, b).unwrap();
        for lam in [0.2, 0.6, 1.0] {
            let rho = radial_farthest(&r, lam, 64, 1e-12).unwrap();
            assert!((rho - h_ray_arc_intersect(&g, lam).unwrap()).abs() < 1e-11);
        }
    }

    #[test]
    fn spec_round_trip() {
        let r = triangle().dilate(Arc::new(HDilation::new(HPoint::ORIGIN, 2.0).unwrap()), 1e-12);
        let spec = r.to_spec().unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        let back: RegionSpec<HPoint> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }
}
