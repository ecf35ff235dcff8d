use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::convexity::{check_convex, CheckConfig, PointMap, Region, Verdict};
use crate::error::{GeomError, Result};
use crate::geometry::{Geometry, Hyperbolic, Model, Spherical};
use crate::hyperbolic::{HDilation, HPoint};
use crate::spherical::{SDilation, SPoint};

/// Smallest margin, in base-space units, a counterexample must exhibit.
const MIN_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseId {
    /// Hyperbolic contraction of a half-plane bounded by a non-diameter.
    HContractHalfplane,
    /// Expansion of a geodesic segment about a point off its geodesic.
    DilateOutsidePoint,
    /// Spherical expansion of a segment longer than pi/2 from the centre.
    SExpandLongGeodesic,
    /// Spherical contraction of a triangle reaching past the hemisphere.
    SContractBeyondHemisphere,
}

impl CaseId {
    pub const ALL: [CaseId; 4] = [CaseId::HContractHalfplane, CaseId::DilateOutsidePoint, CaseId::SExpandLongGeodesic, CaseId::SContractBeyondHemisphere];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::HContractHalfplane => "h-contract-halfplane",
            CaseId::DilateOutsidePoint => "dilate-outside-point",
            CaseId::SExpandLongGeodesic => "s-expand-long-geodesic",
            CaseId::SContractBeyondHemisphere => "s-contract-beyond-hemisphere",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseId {
    type Err = GeomError;
    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| GeomError::InvalidParams(format!("unknown case '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub id: CaseId,
    pub model: Model,
    /// The dilated region that was checked.
    pub region: Value,
    pub description: String,
    pub params: Value,
    pub verdict: Verdict,
    pub margin: Option<f64>,
    /// Violation found with margin above the reporting threshold.
    pub met: bool,
    pub report: Value,
    /// Case-specific diagnostics.
    pub extra: Value,
}

/// Sine of the turn at the middle point, measured in the straightening chart
/// about the triple's frame. Zero exactly when the three points lie on one
/// geodesic.
pub fn collinearity_defect<G: Geometry>(a: G::Point, m: G::Point, b: G::Point) -> Result<f64> {
    let pts = [a, m, b];
    let frame = crate::convexity::hull::frame_for::<G>(&pts)?;
    let (w, _) = crate::convexity::hull::chart_about::<G>(frame, &pts)?;
    Ok(crate::convexity::hull::turn(w[0], w[1], w[2]).abs())
}

fn finish<G: Geometry>(id: CaseId, description: &str, region: &Region<G>, params: Value, report: crate::convexity::ConvexityReport<G::Point>, extra: Value) -> Result<CaseResult> {
    let margin = report.worst_margin;
    let met = report.verdict == Verdict::Violation && margin.is_some_and(|m| m > MIN_MARGIN);
    Ok(CaseResult {
        id,
        model: G::MODEL,
        region: serde_json::to_value(region.to_spec())?,
        description: description.to_string(),
        params,
        verdict: report.verdict,
        margin,
        met,
        report: serde_json::to_value(&report)?,
        extra,
    })
}

fn hp(re: f64, im: f64) -> Result<HPoint> {
    HPoint::new(Complex64::new(re, im))
}

pub fn run_counterexample(id: CaseId, cfg: &CheckConfig) -> Result<CaseResult> {
    let eq = cfg.tol.eq_abs;
    match id {
        CaseId::HContractHalfplane => {
            // boundary circle |z - 1.25| = 0.75 meets the real axis at 0.5
            let a = hp(0.5, 0.0)?;
            let b = HPoint::new(Complex64::new(1.25, 0.0) + Complex64::from_polar(0.75, 2.5))?;
            let k = 0.5;
            let base = Region::<Hyperbolic>::half_plane(a, b, HPoint::ORIGIN)?;
            let image = base.dilate(Arc::new(HDilation::new(HPoint::ORIGIN, k)?), eq);
            let report = check_convex(&image, cfg)?;
            finish(id, "hyperbolic half-plane bounded by a non-diameter, contracted about the origin", &image, json!({"a": a, "b": b, "k": k, "center": HPoint::ORIGIN}), report, json!({}))
        }
        CaseId::DilateOutsidePoint => {
            let (a, b) = (hp(-0.4, 0.2)?, hp(0.4, 0.2)?);
            let k = 2.0;
            let off = HDilation::new(HPoint::ORIGIN, k)?;
            let mid = crate::hyperbolic::h_segment_point(a, b, 0.5)?;
            let defect = collinearity_defect::<Hyperbolic>(off.forward(a)?, off.forward(mid)?, off.forward(b)?)?;
            // control: centre on the segment maps the geodesic to itself
            let on = HDilation::new(crate::hyperbolic::h_segment_point(a, b, 0.3)?, k)?;
            let control = collinearity_defect::<Hyperbolic>(on.forward(a)?, on.forward(mid)?, on.forward(b)?)?;
            let base = Region::<Hyperbolic>::polygon(&[a, b], eq)?;
            let image = base.dilate(Arc::new(off), eq);
            let report = check_convex(&image, cfg)?;
            let control_report = check_convex(&base.dilate(Arc::new(on), eq), cfg)?;
            finish(
                id,
                "geodesic segment expanded about a point off its geodesic",
                &image,
                json!({"a": a, "b": b, "k": k, "center": HPoint::ORIGIN, "control_center": on.c}),
                report,
                json!({
                    "collinearity_defect": defect,
                    "control_collinearity_defect": control,
                    "control_verdict": control_report.verdict,
                }),
            )
        }
        CaseId::SExpandLongGeodesic => {
            let end = (0.245 * PI).tan();
            let (a, b) = (SPoint::from_xy(-end, 0.0)?, SPoint::from_xy(end, 0.0)?);
            let k = 1.05;
            let base = Region::<Spherical>::polygon(&[a, b], eq)?;
            let image = base.dilate(Arc::new(SDilation::new(SPoint::ORIGIN, k)?), eq);
            let report = check_convex(&image, cfg)?;
            let reach = Spherical::dist(SPoint::ORIGIN, b);
            finish(
                id,
                "spherical segment through the centre, expanded past total length pi",
                &image,
                json!({"a": a, "b": b, "k": k, "center": SPoint::ORIGIN}),
                report,
                json!({"endpoint_distance": reach, "image_endpoint_distance": k * reach}),
            )
        }
        CaseId::SContractBeyondHemisphere => {
            let (c, v1, v2, k) = figure1_params()?;
            let base = Region::<Spherical>::polygon(&[c, v1, v2], eq)?;
            let image = base.dilate(Arc::new(SDilation::new(c, k)?), eq);
            let report = check_convex(&image, cfg)?;
            finish(
                id,
                "spherical triangle extending past the hemisphere about the centre, contracted",
                &image,
                json!({"vertices": [c, v1, v2], "k": k, "center": c}),
                report,
                json!({"vertex_distance": Spherical::dist(c, v1), "warnings": image.warnings()}),
            )
        }
    }
}

/// Triangle with a vertex at the dilation centre and two vertices at
/// distance 0.9 pi, 30 degrees apart, contracted by 0.9.
pub fn figure1_params() -> Result<(SPoint, SPoint, SPoint, f64)> {
    let d = 0.9 * PI;
    let v = |t: f64| SPoint::from_polar_distance(d, t);
    Ok((SPoint::ORIGIN, v(PI / 6.0)?, v(PI / 3.0)?, 0.9))
}
