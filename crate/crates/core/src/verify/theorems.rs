use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::report::{Expectation, SuiteReport};
use crate::convexity::{check_convex, random_convex_polygon, CheckConfig, PointMap, PolygonParams, Region, Verdict};
use crate::error::{GeomError, Result};
use crate::exec::ExecPolicy;
use crate::geometry::Geometry;
use crate::hyperbolic::HDilation;
use crate::numerics::{Seed, Tolerances};
use crate::spherical::SDilation;

/// Parameters shared by both dilation-theorem suites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremParams {
    pub polygons: usize,
    pub trials: usize,
    pub samples_per_segment: usize,
    /// Factors are drawn uniformly from this closed range.
    pub k_range: (f64, f64),
    pub polygon: PolygonParams,
    pub seed: Seed,
    pub tol: Tolerances,
    #[serde(skip)]
    pub policy: ExecPolicy,
}

impl TheoremParams {
    /// 200 polygons, generating radius 2.5, factors in [1, 5].
    pub fn hyperbolic(seed: Seed) -> Self {
        Self {
            polygons: 200,
            trials: 1000,
            samples_per_segment: 15,
            k_range: (1.0, 5.0),
            polygon: PolygonParams { min_points: 3, max_points: 8, radius: 2.5, placement: 1.0 },
            seed,
            tol: Tolerances::default(),
            policy: ExecPolicy::default(),
        }
    }

    /// 200 polygons inside a hemisphere, factors in [0.2, 1].
    pub fn spherical(seed: Seed) -> Self {
        Self {
            k_range: (0.2, 1.0),
            polygon: PolygonParams { min_points: 3, max_points: 8, radius: FRAC_PI_2 - 0.05, placement: 1.0 },
            ..Self::hyperbolic(seed)
        }
    }

    fn validate(&self) -> Result<()> {
        self.tol.validate()?;
        let (lo, hi) = self.k_range;
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
            return Err(GeomError::InvalidParams(format!("k range [{lo}, {hi}] must be positive and ordered")));
        }
        if self.polygon.min_points < 1 || self.polygon.min_points > self.polygon.max_points {
            return Err(GeomError::InvalidParams("polygon point counts out of order".into()));
        }
        Ok(())
    }
}

/// Hyperbolic dilations with k >= 1 about a member point. Ranges reaching
/// below 1 leave the hypothesis; the report still expects no violation, so
/// such runs are reported as unexpected outcomes when a witness turns up.
pub fn run_theorem1_suite(p: &TheoremParams) -> Result<SuiteReport> {
    let expect = Expectation::NoViolation;
    let k_range = p.k_range;
    run_suite::<crate::geometry::Hyperbolic>("theorem1", p, expect, Some(p.k_range.0 >= 1.0), &move |c, rng| Ok(Arc::new(HDilation::new(c, draw_k(rng, k_range))?)))
}

/// Spherical contractions with 0 < k <= 1 of sets inside the hemisphere about
/// the centre. Ranges above 1 are the expansion mode, outside the hypothesis.
pub fn run_theorem2_suite(p: &TheoremParams) -> Result<SuiteReport> {
    let expect = Expectation::NoViolation;
    let k_range = p.k_range;
    run_suite::<crate::geometry::Spherical>("theorem2", p, expect, Some(p.k_range.1 <= 1.0), &move |c, rng| Ok(Arc::new(SDilation::new(c, draw_k(rng, k_range))?)))
}

/// Uniform draw from a closed range; a degenerate range returns its end.
pub(crate) fn draw_k(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo {
        rng.random_range(lo..=hi)
    } else {
        lo
    }
}

/// Builds the map for one polygon from its centre and the polygon's stream.
pub(crate) type MapBuilder<'a, G> = dyn Fn(<G as Geometry>::Point, &mut ChaCha8Rng) -> Result<Arc<dyn PointMap<G>>> + Sync + 'a;

pub(crate) fn run_suite<G: Geometry>(name: &str, p: &TheoremParams, expect: Expectation, hypothesis: Option<bool>, build: &MapBuilder<'_, G>) -> Result<SuiteReport> {
    p.validate()?;
    let one = |i: usize| -> Result<(Verdict, Option<f64>, Value)> {
        let seed = p.seed.child(i as u64);
        // trial streams use small indices; construction takes the last one
        let mut rng = seed.stream(u64::MAX);
        let draw = random_convex_polygon::<G, _>(&mut rng, &p.polygon, p.tol.eq_abs)?;
        let map = build(draw.center, &mut rng)?;
        let spec = map.spec();
        let region = Region::Polygon(Arc::new(draw.polygon.clone())).dilate(map, p.tol.eq_abs);
        let cfg = CheckConfig { trials: p.trials, samples_per_segment: p.samples_per_segment, seed, tol: p.tol, policy: p.policy };
        let report = check_convex(&region, &cfg)?;
        let run = json!({
            "index": i,
            "model": G::MODEL,
            "region": region.to_spec(),
            "map": spec,
            "vertices": draw.polygon.vertices(),
            "report": report,
        });
        Ok((report.verdict, report.worst_margin, run))
    };
    let results = p.policy.map(p.polygons, one).into_iter().collect::<Result<Vec<_>>>()?;
    let mut verdict = Verdict::NoViolationFound;
    let mut worst: Option<f64> = None;
    let mut runs = Vec::with_capacity(results.len());
    for (v, m, run) in results {
        if v == Verdict::Violation {
            verdict = Verdict::Violation;
        }
        if let Some(m) = m {
            worst = Some(worst.map_or(m, |w| w.max(m)));
        }
        runs.push(run);
    }
    let mut params = serde_json::to_value(p)?;
    if let Some(h) = hypothesis {
        params["hypothesis_holds"] = h.into();
    }
    Ok(SuiteReport::new(name, p.seed, params, runs, verdict, expect, worst))
}
