//! Deterministic SVG rendering of regions, dilated images and witnesses in
//! the model plane. Output depends only on the inputs: coordinates are
//! printed at fixed precision and nothing time-dependent is written.

use std::f64::consts::PI;
use std::fmt::Write;
use std::sync::Arc;

use num_complex::Complex64;
use serde_json::Value;

use crate::convexity::{hull, Region, RegionSpec, Witness, WitnessKind};
use crate::error::{GeomError, Result};
use crate::geometry::{Geometry, Hyperbolic, Model, Spherical};
use crate::io::MapFactory;
use crate::spherical::SPoint;

pub const SIZE: f64 = 800.0;
/// Samples per drawn curve.
pub const SAMPLES: usize = 256;
const MARGIN_PX: f64 = 20.0;
/// The unit circle, or the content, fills this fraction of the half-extent.
const FILL: f64 = 0.9;
/// Largest plane radius a spherical view will stretch to.
const MAX_VIEW: f64 = 12.0;

/// A sampled curve in plane coordinates; `None` breaks the line.
pub type Curve = Vec<Option<Complex64>>;

#[derive(Debug, Clone)]
pub struct Layer {
    pub curves: Vec<Curve>,
    pub stroke: &'static str,
    pub width: f64,
    pub dash: Option<&'static str>,
}

#[derive(Debug, Clone)]
pub struct Marker {
    pub at: Complex64,
    pub fill: &'static str,
    pub radius: f64,
}

#[derive(Debug, Clone)]
pub struct Figure {
    pub title: String,
    pub model: Model,
    pub layers: Vec<Layer>,
    pub markers: Vec<Marker>,
}

impl Figure {
    pub fn new(title: &str, model: Model) -> Self {
        Self { title: title.to_string(), model, layers: Vec::new(), markers: Vec::new() }
    }

    pub fn layer(&mut self, curves: Vec<Curve>, stroke: &'static str, width: f64, dash: Option<&'static str>) {
        self.layers.push(Layer { curves, stroke, width, dash });
    }

    pub fn marker(&mut self, at: Option<Complex64>, fill: &'static str, radius: f64) {
        if let Some(at) = at {
            self.markers.push(Marker { at, fill, radius });
        }
    }

    /// Half-width of the plane window. The disk model always shows the unit
    /// disk; the stereographic plane is fitted to the content.
    fn view(&self) -> f64 {
        let content = self
            .layers
            .iter()
            .flat_map(|l| l.curves.iter().flatten().flatten())
            .chain(self.markers.iter().map(|m| &m.at))
            .map(|z| z.re.abs().max(z.im.abs()))
            .filter(|v| v.is_finite())
            .fold(1.0_f64, f64::max);
        match self.model {
            Model::Hyperbolic => 1.0,
            Model::Spherical => content.min(MAX_VIEW),
        }
    }

    pub fn to_svg(&self) -> String {
        let half = self.view();
        let scale = FILL * SIZE / 2.0 / half;
        let px = |z: Complex64| (SIZE / 2.0 + scale * z.re, SIZE / 2.0 - scale * z.im);
        let inside = |z: Complex64| z.re.abs() <= 1.2 * half && z.im.abs() <= 1.2 * half;
        let mut out = String::new();
        let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
        let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
        let _ = writeln!(out, r##"<circle cx="400.000" cy="400.000" r="{:.3}" fill="none" stroke="#888888" stroke-width="1" stroke-dasharray="2 4"/>"##, scale);
        for layer in &self.layers {
            let dash = layer.dash.map(|d| format!(r#" stroke-dasharray="{d}""#)).unwrap_or_default();
            for curve in &layer.curves {
                for run in split(curve, half, &inside) {
                    let pts: Vec<String> = run.iter().map(|&z| px(z)).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
                    let _ = writeln!(
                        out,
                        r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="{}"{dash}/>"#,
                        pts.join(" "),
                        layer.stroke,
                        layer.width
                    );
                }
            }
        }
        for m in &self.markers {
            if inside(m.at) {
                let (x, y) = px(m.at);
                let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{}" fill="{}"/>"#, m.radius, m.fill);
            }
        }
        let _ = writeln!(out, r#"<text x="{MARGIN_PX}" y="{}" font-family="monospace" font-size="14">{}</text>"#, MARGIN_PX, escape(&self.title));
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Splits a curve at gaps, at points far outside the window and at jumps
/// (a curve through infinity reappears on the other side of the plane).
fn split(curve: &Curve, half: f64, inside: &dyn Fn(Complex64) -> bool) -> Vec<Vec<Complex64>> {
    let mut runs = vec![Vec::new()];
    for p in curve {
        let ok = p.filter(|&z| inside(z));
        let cur = runs.last_mut().expect("non-empty");
        match ok {
            Some(z) if cur.last().is_none_or(|&prev: &Complex64| (z - prev).norm() < half) => cur.push(z),
            Some(z) => runs.push(vec![z]),
            None if !cur.is_empty() => runs.push(Vec::new()),
            None => {}
        }
    }
    runs.retain(|r| r.len() >= 2);
    runs
}

pub fn geodesic_curve<G: Geometry>(a: G::Point, b: G::Point) -> Curve {
    (0..SAMPLES)
        .map(|i| G::segment_point(a, b, i as f64 / (SAMPLES - 1) as f64).ok().and_then(G::to_plane))
        .collect()
}

/// Closed polygon outline, or the segment or single point for fewer vertices.
pub fn polygon_curves<G: Geometry>(vertices: &[G::Point]) -> Vec<Curve> {
    match vertices.len() {
        0 => Vec::new(),
        1 => vec![vec![G::to_plane(vertices[0])]],
        2 => vec![geodesic_curve::<G>(vertices[0], vertices[1])],
        n => (0..n).map(|i| geodesic_curve::<G>(vertices[i], vertices[(i + 1) % n])).collect(),
    }
}

/// Geodesic circle of radius `r` about `c`.
pub fn circle_curve<G: Geometry>(c: G::Point, r: f64) -> Curve {
    (0..=SAMPLES)
        .map(|i| G::from_polar(c, r, 2.0 * PI * i as f64 / SAMPLES as f64).ok().and_then(G::to_plane))
        .collect()
}

/// The whole geodesic through `a` and `b`.
pub fn full_geodesic<G: Geometry>(a: G::Point, b: G::Point) -> Result<Curve> {
    let (_, theta) = G::polar(a, b)?;
    let reach = match G::MODEL {
        Model::Hyperbolic => 16.0,
        Model::Spherical => PI,
    };
    Ok((0..=SAMPLES)
        .map(|i| {
            let d = reach * (2.0 * i as f64 / SAMPLES as f64 - 1.0);
            let (d, th) = if d < 0.0 { (-d, theta + PI) } else { (d, theta) };
            G::from_polar(a, d, th).ok().and_then(G::to_plane)
        })
        .collect())
}

/// Boundary curves of a region description, in the model's point type.
pub fn spec_curves<G: MapFactory>(spec: &RegionSpec<G::Point>) -> Result<Vec<Curve>> {
    Ok(spec_points::<G>(spec)?.into_iter().map(|c| c.into_iter().map(|p| p.and_then(G::to_plane)).collect()).collect())
}

fn spec_points<G: MapFactory>(spec: &RegionSpec<G::Point>) -> Result<Vec<Vec<Option<G::Point>>>> {
    let planar = |curves: Vec<Curve>| -> Vec<Vec<Option<G::Point>>> {
        curves.into_iter().map(|c| c.into_iter().map(|z| z.and_then(|z| G::from_plane(z).ok())).collect()).collect()
    };
    match spec {
        RegionSpec::Polygon { vertices } => {
            let poly = crate::convexity::GeodesicPolygon::<G>::new(vertices, 1e-12)?;
            Ok(planar(polygon_curves::<G>(poly.vertices())))
        }
        RegionSpec::Disk { center, radius } => Ok(planar(vec![circle_curve::<G>(*center, *radius)])),
        RegionSpec::HalfPlane { a, b, .. } => Ok(planar(vec![full_geodesic::<G>(*a, *b)?])),
        RegionSpec::Dilated { base, map } => {
            let m = G::build_map(map)?;
            Ok(spec_points::<G>(base)?
                .into_iter()
                .map(|c| c.into_iter().map(|p| p.and_then(|p| m.forward(p).ok())).collect())
                .collect())
        }
    }
}

fn base_of<P: Clone>(spec: &RegionSpec<P>) -> Option<&RegionSpec<P>> {
    match spec {
        RegionSpec::Dilated { base, .. } => Some(base),
        _ => None,
    }
}

/// A region, with its undilated base in grey when it is an image.
pub fn region_figure<G: MapFactory>(title: &str, spec: &RegionSpec<G::Point>) -> Result<Figure> {
    let mut fig = Figure::new(title, G::MODEL);
    if let Some(base) = base_of(spec) {
        fig.layer(spec_curves::<G>(base)?, "#999999", 1.5, Some("6 3"));
    }
    fig.layer(spec_curves::<G>(spec)?, "#1f4e9c", 2.0, None);
    Ok(fig)
}

pub fn add_witness<G: Geometry>(fig: &mut Figure, w: &Witness<G::Point>) {
    if w.kind == WitnessKind::Segment {
        fig.layer(vec![geodesic_curve::<G>(w.u, w.v)], "#d62728", 1.5, None);
    }
    fig.marker(G::to_plane(w.u), "#d62728", 4.0);
    fig.marker(G::to_plane(w.v), "#d62728", 4.0);
    fig.marker(G::to_plane(w.point), "#000000", 5.0);
}

/// Triangle with a vertex at the centre reaching past the hemisphere, its
/// contraction, and the convex hull of the contraction.
pub fn figure1() -> Result<Figure> {
    let (c, v1, v2, k) = crate::verify::figure1_params()?;
    let base = RegionSpec::Polygon { vertices: vec![c, v1, v2] };
    let image = RegionSpec::Dilated { base: Box::new(base.clone()), map: crate::convexity::MapSpec::Dilation { center: c, k } };
    let mut fig = Figure::new("contraction beyond the hemisphere", Model::Spherical);
    fig.layer(spec_curves::<Spherical>(&base)?, "#555555", 1.5, Some("6 3"));
    let boundary: Vec<SPoint> = spec_points::<Spherical>(&image)?.into_iter().flatten().flatten().collect();
    fig.layer(spec_curves::<Spherical>(&image)?, "#1f4e9c", 2.0, None);
    let h = hull::<Spherical>(&boundary, 1e-12)?;
    fig.layer(polygon_curves::<Spherical>(&h.vertices), "#d62728", 1.5, Some("2 2"));
    fig.marker(Some(Complex64::new(0.0, 0.0)), "#000000", 4.0);
    // mark where the hull leaves the image
    let region = crate::convexity::Region::<Spherical>::from_spec(&image, 1e-12, &|m| Spherical::build_map(m))?;
    let report = crate::convexity::check_convex(&region, &crate::convexity::CheckConfig::new(500, 15, crate::numerics::Seed(2019)))?;
    if let Some(w) = &report.witness {
        add_witness::<Spherical>(&mut fig, w);
    }
    Ok(fig)
}

/// Draws the region and witness of the first violating run of a suite
/// report, or of run `index` when given.
pub fn suite_witness_figure(report: &Value, index: Option<usize>) -> Result<Figure> {
    let runs = report
        .get("runs")
        .and_then(Value::as_array)
        .ok_or_else(|| GeomError::Schema("report has no runs".into()))?;
    let violating = |r: &&Value| r.pointer("/report/verdict").and_then(Value::as_str) == Some("violation");
    let run = match index {
        Some(i) => runs.get(i).ok_or_else(|| GeomError::InvalidParams(format!("run {i} out of range")))?,
        None => runs.iter().find(violating).ok_or_else(|| GeomError::InvalidParams("report has no violating run".into()))?,
    };
    let model: Model = serde_json::from_value(run.get("model").cloned().unwrap_or(Value::Null))?;
    let suite = report.get("suite").and_then(Value::as_str).unwrap_or("suite");
    let title = format!("{suite} run {}", run.get("index").map(|v| v.to_string()).unwrap_or_default());
    match model {
        Model::Hyperbolic => witness_for::<Hyperbolic>(&title, run),
        Model::Spherical => witness_for::<Spherical>(&title, run),
    }
}

fn witness_for<G: MapFactory>(title: &str, run: &Value) -> Result<Figure> {
    let spec: RegionSpec<G::Point> = serde_json::from_value(run.get("region").cloned().unwrap_or(Value::Null))?;
    let mut fig = region_figure::<G>(title, &spec)?;
    if let Some(w) = run.pointer("/report/witness").filter(|w| !w.is_null()) {
        let w: Witness<G::Point> = serde_json::from_value(w.clone())?;
        add_witness::<G>(&mut fig, &w);
    }
    Ok(fig)
}

/// Region and image built from a description; used by the CLI `plot region`.
pub fn region_from_spec<G: MapFactory>(spec: &RegionSpec<G::Point>) -> Result<Region<G>> {
    Region::from_spec(spec, 1e-12, &|m| -> Result<Arc<dyn crate::convexity::PointMap<G>>> { G::build_map(m) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::HPoint;

    #[test]
    fn figure1_is_deterministic() {
        let a = figure1().unwrap().to_svg();
        let b = figure1().unwrap().to_svg();
        assert_eq!(a, b);
        assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"));
        assert!(a.matches("<polyline").count() >= 7);
    }

    #[test]
    fn region_plot() {
        let spec = RegionSpec::Dilated {
            base: Box::new(RegionSpec::Disk { center: HPoint::ORIGIN, radius: 0.5 }),
            map: crate::convexity::MapSpec::Dilation { center: HPoint::ORIGIN, k: 2.0 },
        };
        let svg = region_figure::<Hyperbolic>("disk", &spec).unwrap().to_svg();
        assert_eq!(svg.matches("<polyline").count(), 2);
        // dashed unit circle
        assert!(svg.contains(r#"stroke-dasharray="2 4""#));
    }

    #[test]
    fn split_breaks_on_gaps_and_jumps() {
        let z = |x: f64| Some(Complex64::new(x, 0.0));
        let runs = split(&vec![z(0.0), z(0.1), None, z(0.2), z(0.3), z(0.9), z(-0.9), z(-0.8)], 1.0, &|_| true);
        assert_eq!(runs.len(), 3);
    }
}
