use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::convexity::Verdict;
use crate::error::Result;
use crate::numerics::Seed;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// What a suite is expected to find.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    NoViolation,
    Violation,
    /// Exploratory run; any outcome is recorded.
    None,
}

impl Expectation {
    pub fn met_by(self, verdict: Verdict) -> bool {
        match self {
            Expectation::NoViolation => verdict == Verdict::NoViolationFound,
            Expectation::Violation => verdict == Verdict::Violation,
            Expectation::None => true,
        }
    }
}

/// Common report envelope written by every suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub version: String,
    pub seed: Seed,
    pub params: Value,
    pub runs: Vec<Value>,
    pub verdict: Verdict,
    pub expectation: Expectation,
    pub expectation_met: bool,
    pub worst_margin: Option<f64>,
    /// Unix seconds; excluded from determinism comparisons.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: Seed, params: Value, runs: Vec<Value>, verdict: Verdict, expectation: Expectation, worst_margin: Option<f64>) -> Self {
        Self {
            suite: suite.to_string(),
            version: VERSION.to_string(),
            seed,
            params,
            runs,
            verdict,
            expectation,
            expectation_met: expectation.met_by(verdict),
            worst_margin,
            timestamp: None,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        // via Value so keys come out sorted, matching the CLI
        Ok(serde_json::to_string_pretty(&serde_json::to_value(self)?)? + "\n")
    }
}

pub fn now_unix() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_atomic_write() {
        let r = SuiteReport::new("demo", Seed(1), serde_json::json!({"k": 2.0}), vec![], Verdict::NoViolationFound, Expectation::NoViolation, Some(-0.5));
        let text = r.to_json().unwrap();
        let back: SuiteReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json().unwrap(), text);
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.json");
        write_atomic(&p, text.as_bytes()).unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), text);
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn expectations() {
        assert!(Expectation::Violation.met_by(Verdict::Violation));
        assert!(!Expectation::NoViolation.met_by(Verdict::Violation));
        assert!(Expectation::None.met_by(Verdict::Violation));
    }
}
