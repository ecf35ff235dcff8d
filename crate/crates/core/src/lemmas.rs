//! Finite-difference curvature certification of the two auxiliary functions
//!
//! `f_hyp(x) = atanh(1 / (k1 coth(u1 x) + k2 coth(u2 x)))`, concave on `x > 0`
//! when `k1 + k2 >= 1`, and
//! `f_sph(x) = atan(1 / (k1 cot(u1 x) + k2 cot(u2 x)))`, convex on `(0, x*]`
//! with `x* = (π/2) min(1/u1, 1/u2)`.

use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::exec::ExecPolicy;
use crate::numerics::{atanh_recip_from_excess, coth_minus_one, cot, log_grid, second_fd, Seed, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lemma {
    Hyp,
    Sph,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaParams {
    pub k1: f64,
    pub k2: f64,
    pub u1: f64,
    pub u2: f64,
}

impl LemmaParams {
    /// Parameters satisfying the lemma hypotheses `k1, k2, u1, u2 > 0` and
    /// `k1 + k2 >= 1`.
    pub fn new(k1: f64, k2: f64, u1: f64, u2: f64) -> Result<Self> {
        let p = Self::relaxed(k1, k2, u1, u2)?;
        if !p.hypothesis_holds() {
            return Err(GeomError::InvalidParams(format!("k1 + k2 = {} < 1", k1 + k2)));
        }
        Ok(p)
    }

    /// Positivity only; used to explore outside the hypotheses.
    pub fn relaxed(k1: f64, k2: f64, u1: f64, u2: f64) -> Result<Self> {
        if ![k1, k2, u1, u2].iter().all(|v| v.is_finite() && *v > 0.0) {
            return Err(GeomError::InvalidParams("k1, k2, u1, u2 must be positive".into()));
        }
        Ok(Self { k1, k2, u1, u2 })
    }

    pub fn hypothesis_holds(&self) -> bool {
        self.k1 + self.k2 >= 1.0
    }

    pub fn x_star(&self) -> f64 {
        FRAC_PI_2 * (1.0 / self.u1).min(1.0 / self.u2)
    }
}

/// `w - 1` for the hyperbolic denominator, summed from non-negative parts.
fn hyp_excess(p: &LemmaParams, x: f64) -> f64 {
    p.k1 * coth_minus_one(p.u1 * x) + p.k2 * coth_minus_one(p.u2 * x) + (p.k1 + p.k2 - 1.0)
}

pub fn f_hyp(p: &LemmaParams, x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(GeomError::Domain(format!("f_hyp needs x > 0, got {x}")));
    }
    let excess = hyp_excess(p, x);
    if !(excess > 0.0) {
        return Err(GeomError::Domain(format!("atanh argument >= 1 at x = {x}")));
    }
    Ok(atanh_recip_from_excess(excess))
}

pub fn f_sph(p: &LemmaParams, x: f64) -> Result<f64> {
    let xs = p.x_star();
    if !(x > 0.0 && x <= xs * (1.0 + 4.0 * f64::EPSILON)) {
        return Err(GeomError::Domain(format!("f_sph needs x in (0, {xs}], got {x}")));
    }
    let w = p.k1 * cot(p.u1 * x) + p.k2 * cot(p.u2 * x);
    Ok(1f64.atan2(w))
}

pub fn eval(lemma: Lemma, p: &LemmaParams, x: f64) -> Result<f64> {
    match lemma {
        Lemma::Hyp => f_hyp(p, x),
        Lemma::Sph => f_sph(p, x),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        log_grid(self.lo, self.hi, self.points)
    }

    /// 512 log-spaced points on `[1e-3, 20]` (hyp) or `[1e-3, x* - 2h]` (sph).
    pub fn default_for(lemma: Lemma, p: &LemmaParams, tol: &Tolerances) -> Self {
        let hi = match lemma {
            Lemma::Hyp => 20.0,
            Lemma::Sph => p.x_star() - 2.0 * tol.fd_step,
        };
        GridSpec { lo: 1e-3, hi, points: 512 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub lemma: Lemma,
    pub params: LemmaParams,
    pub grid: GridSpec,
    pub fd_step: f64,
    pub fd_tol: f64,
    /// Grid point with the least favourable second difference.
    pub worst_x: f64,
    pub worst_value: f64,
    pub pass: bool,
}

/// Second differences at every grid point: passes when all are `<= fd_tol`
/// (hyp) or all are `>= -fd_tol` (sph). The first failed evaluation aborts.
pub fn certify_curvature(lemma: Lemma, p: &LemmaParams, grid: &GridSpec, tol: &Tolerances) -> Result<CurvatureReport> {
    let h = tol.fd_step;
    if grid.lo < 2.0 * h || (lemma == Lemma::Sph && grid.hi > p.x_star() - 2.0 * h + 1e-15) {
        return Err(GeomError::InvalidParams("grid must stay 2 fd steps inside the domain".into()));
    }
    let sign = match lemma {
        Lemma::Hyp => 1.0,
        Lemma::Sph => -1.0,
    };
    let mut worst = (grid.lo, f64::NEG_INFINITY);
    for x in grid.values() {
        let v = second_fd(|t| eval(lemma, p, t), x, h)?;
        if sign * v > worst.1 {
            worst = (x, sign * v);
        }
    }
    Ok(CurvatureReport {
        lemma,
        params: *p,
        grid: *grid,
        fd_step: h,
        fd_tol: tol.fd_tol,
        worst_x: worst.0,
        worst_value: sign * worst.1,
        pass: worst.1 <= tol.fd_tol,
    })
}

/// Largest `|second difference|` on the grid, for the exactly linear family.
pub fn max_abs_second_difference(lemma: Lemma, p: &LemmaParams, grid: &GridSpec, tol: &Tolerances) -> Result<f64> {
    let mut worst = 0.0f64;
    for x in grid.values() {
        worst = worst.max(second_fd(|t| eval(lemma, p, t), x, tol.fd_step)?.abs());
    }
    Ok(worst)
}

/// Parameter ranges for the randomized certification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamRanges {
    /// Range of `k1 + k2`.
    pub k_sum: (f64, f64),
    pub u: (f64, f64),
}

impl Default for ParamRanges {
    fn default() -> Self {
        Self { k_sum: (1.0, 3.0), u: (0.2, 2.0) }
    }
}

pub fn random_params<R: Rng + ?Sized>(rng: &mut R, ranges: &ParamRanges) -> Result<LemmaParams> {
    let sum = rng.random_range(ranges.k_sum.0..=ranges.k_sum.1);
    let share = rng.random_range(0.05..0.95);
    let k1 = share * sum;
    // k1 + (1 - k1) rounds to exactly 1, keeping the boundary family exact
    let k2 = if sum == 1.0 { 1.0 - k1 } else { sum - k1 };
    LemmaParams::new(
        k1,
        k2,
        rng.random_range(ranges.u.0..=ranges.u.1),
        rng.random_range(ranges.u.0..=ranges.u.1),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaSuiteReport {
    pub lemma: Lemma,
    pub seed: Seed,
    pub ranges: ParamRanges,
    pub tuples: usize,
    pub failures: usize,
    /// Worst second difference over all random and boundary tuples.
    pub worst: Option<CurvatureReport>,
    /// Largest `|f''|` estimate over the linear family `k1 + k2 = 1, u1 = u2`.
    pub linear_family_max: f64,
    pub pass: bool,
}

/// Random tuples plus the boundary family `k1 + k2 = 1` (a tenth of the
/// count, at least one) and the linear family.
pub fn run_lemma_suite(lemma: Lemma, tuples: usize, seed: Seed, ranges: &ParamRanges, tol: &Tolerances, policy: ExecPolicy) -> Result<LemmaSuiteReport> {
    let boundary = (tuples / 10).max(1);
    let total = tuples + boundary;
    let results = policy.map(total, |i| -> Result<(CurvatureReport, f64)> {
        let mut rng = seed.stream(i as u64);
        let p = if i < tuples {
            random_params(&mut rng, ranges)?
        } else {
            random_params(&mut rng, &ParamRanges { k_sum: (1.0, 1.0), ..*ranges })?
        };
        let rep = certify_curvature(lemma, &p, &GridSpec::default_for(lemma, &p, tol), tol)?;
        // linear family with the same u1 and share
        let share = p.k1 / (p.k1 + p.k2);
        let lin = LemmaParams::new(share, 1.0 - share, p.u1, p.u1)?;
        let lin_max = max_abs_second_difference(lemma, &lin, &GridSpec::default_for(lemma, &lin, tol), tol)?;
        Ok((rep, lin_max))
    });
    let mut failures = 0;
    let mut worst: Option<CurvatureReport> = None;
    let mut linear_family_max = 0.0f64;
    let sign = if lemma == Lemma::Hyp { 1.0 } else { -1.0 };
    for r in results {
        let (rep, lin) = r?;
        failures += (!rep.pass) as usize;
        linear_family_max = linear_family_max.max(lin);
        if worst.as_ref().is_none_or(|w| sign * rep.worst_value > sign * w.worst_value) {
            worst = Some(rep);
        }
    }
    Ok(LemmaSuiteReport {
        lemma,
        seed,
        ranges: *ranges,
        tuples: total,
        failures,
        worst,
        linear_family_max,
        pass: failures == 0 && linear_family_max <= tol.fd_tol,
    })
}

/// Scans `k1 = k2 = k_each`, `u = (1, 1.5)` outside the hypothesis on a grid
/// restricted to where the atanh argument stays below one, and returns the
/// curvature report (expected to fail).
pub fn hypothesis_violation_scan(k_each: f64, tol: &Tolerances) -> Result<CurvatureReport> {
    let p = LemmaParams::relaxed(k_each, k_each, 1.0, 1.5)?;
    // w(x) decreases from +∞ to 2 k_each < 1; find where it crosses 1
    let (mut lo, mut hi) = (1e-6, 1.0);
    while hyp_excess(&p, hi) > 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hyp_excess(&p, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let grid = GridSpec { lo: 1e-3, hi: 0.9 * lo - 2.0 * tol.fd_step, points: 512 };
    certify_curvature(Lemma::Hyp, &p, &grid, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::{h_rho_closed_form, RadialComparison};
    use crate::spherical::{s_rho_closed_form, SRadialComparison};

    #[test]
    fn hyp_examples() {
        let p = LemmaParams::new(0.5, 0.5, 1.3, 1.3).unwrap();
        for x in [0.01, 0.5, 3.0, 10.0] {
            assert!((f_hyp(&p, x).unwrap() - 1.3 * x).abs() < 1e-12 * (1.0 + x));
        }
        let q = LemmaParams::new(0.7, 0.6, 1.0, 2.0).unwrap();
        assert!((f_hyp(&q, 0.5).unwrap() - 0.465_176_544_010_308_65).abs() < 1e-15);
        let limit = 0.5 * ((1.0 + 1.0 / 1.3) / (1.0 - 1.0 / 1.3f64)).ln();
        assert!((f_hyp(&q, 40.0).unwrap() - limit).abs() < 1e-14);
        assert!(f_hyp(&q, 0.0).is_err());
        assert!(f_hyp(&q, -1.0).is_err());
    }

    #[test]
    fn sph_examples() {
        let p = LemmaParams::new(0.5, 0.5, 0.8, 0.8).unwrap();
        for x in [0.01, 0.5, 1.5] {
            assert!((f_sph(&p, x).unwrap() - 0.8 * x).abs() < 1e-14);
        }
        assert!((f_sph(&p, p.x_star()).unwrap() - FRAC_PI_2).abs() < 1e-14);
        let q = LemmaParams::new(0.7, 0.6, 1.0, 2.0).unwrap();
        assert!((f_sph(&q, 0.3).unwrap() - 0.308_322_359_739_225_2).abs() < 1e-15);
        assert!(f_sph(&q, q.x_star() * 1.01).is_err());
        assert!(f_sph(&q, 0.0).is_err());
    }

    #[test]
    fn params_validation() {
        assert!(LemmaParams::new(0.2, 0.3, 1.0, 1.0).is_err());
        assert!(LemmaParams::relaxed(0.2, 0.3, 1.0, 1.0).is_ok());
        assert!(LemmaParams::relaxed(0.2, -0.3, 1.0, 1.0).is_err());
    }

    #[test]
    fn curvature_signs() {
        let tol = Tolerances::default();
        let p = LemmaParams::new(0.7, 0.6, 1.0, 2.0).unwrap();
        let rep = certify_curvature(Lemma::Hyp, &p, &GridSpec::default_for(Lemma::Hyp, &p, &tol), &tol).unwrap();
        assert!(rep.pass, "{rep:?}");
        let rep = certify_curvature(Lemma::Sph, &p, &GridSpec::default_for(Lemma::Sph, &p, &tol), &tol).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn violated_hypothesis_flips_sign() {
        let rep = hypothesis_violation_scan(0.15, &Tolerances::default()).unwrap();
        assert!(!rep.pass);
        assert!(rep.worst_value > 1e-6);
    }

    #[test]
    fn matches_radial_closed_forms() {
        let rc = RadialComparison::new(0.4, 0.9, 0.2, 1.7, 0.8, 0.7).unwrap();
        let (sa, sb, sd) = rc.sines();
        let p = LemmaParams::new(sa / sd, sb / sd, 2.0 * rc.gamma1, 2.0 * rc.gamma2).unwrap();
        assert!((f_hyp(&p, rc.s).unwrap() - 2.0 * h_rho_closed_form(&rc)).abs() < 1e-12);
        let sc = SRadialComparison::new(0.3, 0.5, 0.1, 1.3, 0.6, 1.2).unwrap();
        let (sa, sb, sd) = sc.sines();
        let p = LemmaParams::new(sa / sd, sb / sd, 2.0 * sc.gamma1, 2.0 * sc.gamma2).unwrap();
        assert!((f_sph(&p, sc.s).unwrap() - 2.0 * s_rho_closed_form(&sc)).abs() < 1e-12);
        assert!((p.x_star() - sc.s_star).abs() < 1e-15);
    }
}
