use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::region::Region;
use crate::error::{GeomError, Result};
use crate::exec::ExecPolicy;
use crate::geometry::{Geometry, Model};
use crate::numerics::{Seed, Tolerances};

/// Pairs this close to antipodal are reported without building a segment.
const ANTIPODAL_BAND: f64 = 1e-6;
/// Pairs this close to antipodal are counted as numerically delicate.
const NEAR_ANTIPODAL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    pub trials: usize,
    pub samples_per_segment: usize,
    pub seed: Seed,
    pub tol: Tolerances,
    pub policy: ExecPolicy,
}

impl CheckConfig {
    pub fn new(trials: usize, samples_per_segment: usize, seed: Seed) -> Self {
        Self { trials, samples_per_segment, seed, tol: Tolerances::default(), policy: ExecPolicy::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    NoViolationFound,
    Violation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `point` is the segment point at parameter `t` from `u` to `v`.
    Segment,
    /// `u` and `v` are antipodal members; `point` lies at distance π/2 from
    /// `u` in direction `phi`, i.e. on one of the segments joining them.
    AntipodalPair,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness<P> {
    pub kind: WitnessKind,
    /// Trial index; anchor pairs come first.
    pub trial: usize,
    pub u: P,
    pub v: P,
    pub t: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    pub point: P,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport<P> {
    pub verdict: Verdict,
    pub trials: usize,
    pub anchor_pairs: usize,
    pub samples_per_segment: usize,
    pub seed: Seed,
    /// Largest margin over all evaluated points; `None` if nothing was evaluated.
    pub worst_margin: Option<f64>,
    pub witness: Option<Witness<P>>,
    /// Segment points whose membership was undefined (no preimage).
    pub skipped_samples: u64,
    pub near_antipodal_pairs: u64,
    pub warnings: Vec<String>,
}

struct Outcome<P> {
    worst: Option<f64>,
    witness: Option<Witness<P>>,
    skipped: u64,
    near_antipodal: bool,
}

fn margin_or_skip<G: Geometry>(r: &Region<G>, p: G::Point) -> Result<Option<f64>> {
    match r.margin(p) {
        Ok(m) => Ok(Some(m)),
        Err(GeomError::Range(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn antipodal_witness<G: Geometry>(
    r: &Region<G>,
    trial: usize,
    u: G::Point,
    v: G::Point,
    n: usize,
) -> Result<Option<(Witness<G::Point>, u64)>> {
    // every great circle through u meets its antipode, so the whole circle
    // at distance π/2 from u consists of segment midpoints
    let (base, other) = if G::to_plane(u).is_some() { (u, v) } else { (v, u) };
    let mut best: Option<(f64, f64, G::Point)> = None;
    let mut skipped = 0;
    for j in 0..n.max(4) {
        let phi = 2.0 * PI * j as f64 / n.max(4) as f64;
        let p = G::from_polar(base, FRAC_PI_2, phi)?;
        match margin_or_skip(r, p)? {
            Some(m) if best.is_none_or(|(b, _, _)| m > b) => best = Some((m, phi, p)),
            Some(_) => {}
            None => skipped += 1,
        }
    }
    Ok(best.map(|(margin, phi, point)| {
        (
            Witness { kind: WitnessKind::AntipodalPair, trial, u: base, v: other, t: 0.5, phi: Some(phi), point, margin },
            skipped,
        )
    }))
}

fn run_trial<G: Geometry>(r: &Region<G>, trial: usize, u: G::Point, v: G::Point, cfg: &CheckConfig) -> Result<Outcome<G::Point>> {
    let mut out = Outcome { worst: None, witness: None, skipped: 0, near_antipodal: false };
    let d = G::dist(u, v);
    if G::MODEL == Model::Spherical {
        let mut pair = None;
        if d >= PI - ANTIPODAL_BAND {
            pair = Some((u, v));
        } else if let Some(a) = G::antipode(u) {
            if matches!(margin_or_skip(r, a)?, Some(m) if m <= cfg.tol.eq_abs) {
                pair = Some((u, a));
            }
        }
        if let Some((a, b)) = pair {
            if let Some((w, skipped)) = antipodal_witness(r, trial, a, b, cfg.samples_per_segment)? {
                out.skipped += skipped;
                out.worst = Some(w.margin);
                if w.margin > cfg.tol.margin {
                    out.witness = Some(w);
                    return Ok(out);
                }
            }
        }
        out.near_antipodal = PI - d < NEAR_ANTIPODAL;
        if d >= PI - ANTIPODAL_BAND {
            return Ok(out);
        }
    }
    if d <= cfg.tol.eq_abs {
        return Ok(out);
    }
    let n = cfg.samples_per_segment;
    let mut best: Option<(f64, f64, G::Point)> = None;
    for j in 1..=n {
        let t = j as f64 / (n + 1) as f64;
        let p = G::segment_point(u, v, t)?;
        match margin_or_skip(r, p)? {
            Some(m) if best.is_none_or(|(b, _, _)| m > b) => best = Some((m, t, p)),
            Some(_) => {}
            None => out.skipped += 1,
        }
    }
    if let Some((m, t, p)) = best {
        out.worst = Some(out.worst.map_or(m, |w: f64| w.max(m)));
        if m > cfg.tol.margin {
            out.witness = Some(Witness { kind: WitnessKind::Segment, trial, u, v, t, phi: None, point: p, margin: m });
        }
    }
    Ok(out)
}

/// Randomized geodesic-convexity test. Anchor pairs are tried first, then
/// `trials` random pairs drawn from the region with trial `i` using stream
/// `i` of the seed. Each pair contributes `samples_per_segment` interior
/// segment points `t = j / (n + 1)`. The reported witness is the worst point
/// of the lowest-index violating trial, independent of the execution policy.
pub fn check_convex<G: Geometry>(r: &Region<G>, cfg: &CheckConfig) -> Result<ConvexityReport<G::Point>> {
    let anchors = r.anchors();
    let mut pairs = Vec::new();
    for i in 0..anchors.len() {
        for j in i + 1..anchors.len() {
            pairs.push((anchors[i], anchors[j]));
        }
    }
    let n_anchor = pairs.len();
    let total = n_anchor + cfg.trials;
    let eq = cfg.tol.eq_abs;
    let outcomes = cfg.policy.map(total, |i| -> Result<Outcome<G::Point>> {
        let (u, v) = if i < n_anchor {
            pairs[i]
        } else {
            let mut rng = cfg.seed.stream((i - n_anchor) as u64);
            (r.sample(&mut rng, eq)?, r.sample(&mut rng, eq)?)
        };
        run_trial(r, i, u, v, cfg)
    });
    let mut report = ConvexityReport {
        verdict: Verdict::NoViolationFound,
        trials: cfg.trials,
        anchor_pairs: n_anchor,
        samples_per_segment: cfg.samples_per_segment,
        seed: cfg.seed,
        worst_margin: None,
        witness: None,
        skipped_samples: 0,
        near_antipodal_pairs: 0,
        warnings: r.warnings(),
    };
    for o in outcomes {
        let o = o?;
        if let Some(m) = o.worst {
            report.worst_margin = Some(report.worst_margin.map_or(m, |w| w.max(m)));
        }
        report.skipped_samples += o.skipped;
        report.near_antipodal_pairs += o.near_antipodal as u64;
        if report.witness.is_none() {
            report.witness = o.witness;
        }
    }
    if report.witness.is_some() {
        report.verdict = Verdict::Violation;
    }
    if report.near_antipodal_pairs > 0 {
        report.warnings.push(format!("{} pair(s) within 1e-9 of antipodal", report.near_antipodal_pairs));
    }
    Ok(report)
}

/// Recomputes a witness point from its defining data and returns its margin.
pub fn recheck_witness<G: Geometry>(r: &Region<G>, w: &Witness<G::Point>) -> Result<f64> {
    let p = match w.kind {
        WitnessKind::Segment => G::segment_point(w.u, w.v, w.t)?,
        WitnessKind::AntipodalPair => {
            let phi = w.phi.ok_or_else(|| GeomError::Schema("antipodal witness without phi".into()))?;
            G::from_polar(w.u, FRAC_PI_2, phi)?
        }
    };
    r.margin(p)
}
