//! Scalar kernel shared by both geometries: stable inverse hyperbolic
//! functions, the tolerance policy, finite differences and the seeded RNG
//! contract.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Tolerance policy used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Absolute tolerance for algebraic identities.
    pub eq_abs: f64,
    /// Minimum escape margin for a convexity witness to count.
    pub margin: f64,
    /// Finite-difference step.
    pub fd_step: f64,
    /// Curvature-sign tolerance for second differences.
    pub fd_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eq_abs: 1e-12,
            margin: 1e-9,
            fd_step: 1e-4,
            fd_tol: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("eq_abs", self.eq_abs),
            ("margin", self.margin),
            ("fd_step", self.fd_step),
            ("fd_tol", self.fd_tol),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(GeomError::InvalidParams(format!(
                    "tolerance {name} must be finite and positive, got {v}"
                )));
            }
        }
        if self.fd_tol < self.fd_step * self.fd_step {
            return Err(GeomError::InvalidParams(format!(
                "fd_tol ({}) must be at least fd_step^2 ({})",
                self.fd_tol,
                self.fd_step * self.fd_step
            )));
        }
        Ok(())
    }
}

/// 64-bit seed. A `(seed, index)` pair fully determines a random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    /// Independent stream for trial `index`.
    pub fn stream(self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(index);
        rng
    }

    /// Derive a child seed, e.g. one per polygon of a suite.
    pub fn child(self, index: u64) -> Seed {
        Seed(splitmix64(self.0 ^ splitmix64(index.wrapping_add(0x9E37_79B9_7F4A_7C15))))
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Inverse hyperbolic tangent via `log1p`, accurate up to the poles.
pub fn atanh_stable(x: f64) -> Result<f64> {
    if !x.is_finite() || x.abs() >= 1.0 {
        return Err(GeomError::Domain(format!("atanh argument {x} not in (-1, 1)")));
    }
    Ok(0.5 * (2.0 * x / (1.0 - x)).ln_1p())
}

pub fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

pub fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}

/// `coth(x) - 1` without cancellation for large `x`.
pub fn coth_minus_one(x: f64) -> f64 {
    2.0 / (2.0 * x).exp_m1()
}

/// `atanh(1/w)` for `w > 1`, given `w - 1` directly.
pub fn atanh_recip_from_excess(w_minus_one: f64) -> f64 {
    0.5 * ((2.0 + w_minus_one) / w_minus_one).ln()
}

/// Central second difference `(f(x-h) - 2f(x) + f(x+h)) / h^2`.
pub fn second_fd<F>(f: F, x: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(GeomError::InvalidParams(format!("step {h} must be positive")));
    }
    let eval = |at: f64| -> Result<f64> {
        let v = f(at).map_err(|e| GeomError::Evaluation {
            x: at,
            reason: e.to_string(),
        })?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(GeomError::NonFinite(format!("f({at}) = {v}")))
        }
    };
    let lo = eval(x - h)?;
    let mid = eval(x)?;
    let hi = eval(x + h)?;
    Ok((lo - 2.0 * mid + hi) / (h * h))
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}
