use std::f64::consts::{FRAC_PI_4, PI};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exec::ExecPolicy;
use crate::geometry::Model;
use crate::hyperbolic::{h_r_closed_form, h_rho_closed_form, h_rprime_closed_form, h_segment_point, RadialComparison};
use crate::numerics::{atanh_stable, second_fd, Seed, Tolerances};
use crate::spherical::{s_r_closed_form, s_rho_closed_form, s_rprime_closed_form, s_segment_point, SRadialComparison};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyTolerances {
    /// Geometric against closed-form `ρ`.
    pub geometric: f64,
    /// Closed form at `s = 1` against a direct search along the segment.
    pub s_one: f64,
    /// Slack allowed in `ρ >= r`.
    pub inequality: f64,
    /// Relative gap between the closed form at `λ = θ1` and the pulled-back
    /// endpoint `γ1 s`.
    pub limit: f64,
    pub fd: Tolerances,
}

impl Default for ConsistencyTolerances {
    fn default() -> Self {
        Self { geometric: 1e-10, s_one: 1e-12, inequality: 1e-12, limit: 1e-12, fd: Tolerances::default() }
    }
}

/// Largest observed value of one check and how often it exceeded its bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckStat {
    pub worst: f64,
    pub failures: usize,
    pub first_failure: Option<usize>,
}

impl CheckStat {
    fn collect(values: impl Iterator<Item = f64>, bound: f64) -> Self {
        let mut s = CheckStat { worst: f64::NEG_INFINITY, failures: 0, first_failure: None };
        for (i, v) in values.enumerate() {
            // NaN counts as a failure
            if !(v <= bound) {
                s.failures += 1;
                s.first_failure.get_or_insert(i);
            }
            s.worst = if v.is_nan() { v } else { s.worst.max(v) };
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub model: Model,
    pub samples: usize,
    pub seed: Seed,
    pub tolerances: ConsistencyTolerances,
    pub geometric: CheckStat,
    pub s_one: CheckStat,
    /// Second difference in `s`, signed so that positive means the wrong
    /// curvature (convex where concavity is needed, or the reverse).
    pub curvature: CheckStat,
    /// `r - ρ`.
    pub inequality: CheckStat,
    pub limit: CheckStat,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    geometric: f64,
    s_one: f64,
    curvature: f64,
    inequality: f64,
    limit: f64,
}

/// Random configurations of the radial comparison, each checked against the
/// geometric construction, a direct segment search, the curvature sign in
/// `s`, the final inequality and the endpoint value at `λ = θ1`.
pub fn run_proof_consistency(model: Model, samples: usize, seed: Seed, tol: &ConsistencyTolerances, policy: ExecPolicy) -> Result<ConsistencyReport> {
    tol.fd.validate()?;
    let one = |i: usize| -> Result<Sample> {
        let mut rng = seed.stream(i as u64);
        match model {
            Model::Hyperbolic => hyperbolic_sample(&mut rng, &tol.fd),
            Model::Spherical => spherical_sample(&mut rng, &tol.fd),
        }
    };
    let rows = policy.map(samples, one).into_iter().collect::<Result<Vec<_>>>()?;
    let stat = |f: fn(&Sample) -> f64, bound: f64| CheckStat::collect(rows.iter().map(f), bound);
    let geometric = stat(|s| s.geometric, tol.geometric);
    let s_one = stat(|s| s.s_one, tol.s_one);
    let curvature = stat(|s| s.curvature, tol.fd.fd_tol);
    let inequality = stat(|s| s.inequality, tol.inequality);
    let limit = stat(|s| s.limit, tol.limit);
    let pass = [geometric, s_one, curvature, inequality, limit].iter().all(|c| c.failures == 0);
    Ok(ConsistencyReport { model, samples, seed, tolerances: *tol, geometric, s_one, curvature, inequality, limit, pass })
}

/// Directions `θ1 < θ2` with gap in `[0.02, π - 0.02]` and a `t` away from
/// the ends.
fn angles<R: Rng>(rng: &mut R) -> (f64, f64, f64) {
    let gap = rng.random_range(0.02..PI - 0.02);
    let theta1 = rng.random_range(0.0..PI - gap);
    (theta1, (theta1 + gap).min(PI - 1e-9), rng.random_range(0.01..0.99))
}

/// Parameter along `[a, b]` whose point has argument `lambda`, by bisection.
fn bisect_arg(arg_at: impl Fn(f64) -> Result<f64>, lambda: f64) -> Result<f64> {
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if arg_at(mid)? < lambda {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn hyperbolic_sample<R: Rng>(rng: &mut R, fd: &Tolerances) -> Result<Sample> {
    let (g1, g2) = (rng.random_range(0.01..3.0), rng.random_range(0.01..3.0));
    let (th1, th2, t) = angles(rng);
    let s = rng.random_range(0.05..1.0 - fd.fd_step);
    let rc = RadialComparison::from_t(g1, g2, th1, th2, t, s)?;

    let geometric = (rc.geometric_atanh_rho()? - h_rho_closed_form(&rc)).abs();

    let (a, b) = rc.with_s(1.0).preimage_endpoints()?;
    let tt = bisect_arg(|u| Ok(h_segment_point(a, b, u)?.z().arg()), rc.lambda)?;
    let direct = atanh_stable(h_segment_point(a, b, tt)?.norm())?;
    let s_one = (direct - h_rprime_closed_form(&rc)).abs();

    let curvature = second_fd(|x| Ok(h_rho_closed_form(&rc.with_s(x))), s, fd.fd_step)?;
    let inequality = h_r_closed_form(&rc) - h_rho_closed_form(&rc);

    // the closed form extends continuously to the endpoint direction
    let near = RadialComparison { lambda: th1, ..rc };
    let limit = (h_rho_closed_form(&near) - g1 * s).abs() / (g1 * s).max(1.0);
    Ok(Sample { geometric, s_one, curvature, inequality, limit })
}

fn spherical_sample<R: Rng>(rng: &mut R, fd: &Tolerances) -> Result<Sample> {
    let (g1, g2) = (rng.random_range(0.01..FRAC_PI_4 - 0.01), rng.random_range(0.01..FRAC_PI_4 - 0.01));
    let (th1, th2, t) = angles(rng);
    let s_star = FRAC_PI_4 / g1.max(g2);
    let s = rng.random_range(1.0..s_star);
    let rc = SRadialComparison::from_t(g1, g2, th1, th2, t, s)?;

    let geometric = (rc.geometric_atan_rho()? - s_rho_closed_form(&rc)).abs();

    let (a, b) = rc.at_s(1.0)?.preimage_endpoints()?;
    let arg = |u: f64| -> Result<f64> {
        let p = s_segment_point(a, b, u)?;
        Ok(p.finite().map_or(f64::NAN, |z| z.arg()))
    };
    let tt = bisect_arg(arg, rc.lambda)?;
    let direct = s_segment_point(a, b, tt)?.finite().map_or(f64::NAN, |z| z.norm().atan());
    let s_one = (direct - s_rprime_closed_form(&rc)).abs();

    // keep the stencil inside (0, s*]
    let x = s.min(s_star - 2.0 * fd.fd_step).max(2.0 * fd.fd_step);
    let curvature = -second_fd(|v| Ok(s_rho_closed_form(&rc.at_s(v)?)), x, fd.fd_step)?;
    let inequality = s_r_closed_form(&rc) - s_rho_closed_form(&rc);

    // the closed form extends continuously to the endpoint direction
    let near = SRadialComparison { lambda: th1, ..rc };
    let limit = (s_rho_closed_form(&near) - g1 * s).abs() / (g1 * s).max(1.0);
    Ok(Sample { geometric, s_one, curvature, inequality, limit })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_consistent() {
        let r = run_proof_consistency(Model::Hyperbolic, 10_000, Seed(2019), &Default::default(), ExecPolicy::default()).unwrap();
        assert!(r.pass, "{r:#?}");
    }

    #[test]
    fn spherical_consistent() {
        let r = run_proof_consistency(Model::Spherical, 10_000, Seed(2019), &Default::default(), ExecPolicy::default()).unwrap();
        assert!(r.pass, "{r:#?}");
    }

    #[test]
    fn tight_tolerance_is_reported() {
        let tol = ConsistencyTolerances { geometric: 0.0, ..Default::default() };
        let r = run_proof_consistency(Model::Hyperbolic, 200, Seed(1), &tol, ExecPolicy::Sequential).unwrap();
        assert!(r.geometric.failures > 0 && !r.pass);
        assert!(r.geometric.first_failure.is_some());
    }
}
