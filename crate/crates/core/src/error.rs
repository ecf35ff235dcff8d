use thiserror::Error;

/// Errors raised by the geometry kernels, region machinery and suites.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("point {re}+{im}i is not strictly inside the unit disk")]
    OutsideDisk { re: f64, im: f64 },
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("points are antipodal; no unique spherical geodesic")]
    Antipodal,
    #[error("ray does not meet the geodesic arc inside the disk: {0}")]
    NoIntersection(String),
    #[error("dilated distance reaches pi: {0}")]
    Range(String),
    #[error("points do not lie in a common open hemisphere")]
    NoCommonHemisphere,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("rejection sampling failed: acceptance rate {rate:.2e} after {attempts} attempts")]
    SamplingFailure { rate: f64, attempts: u64 },
    #[error("evaluation failed at x = {x}: {reason}")]
    Evaluation { x: f64, reason: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;

impl From<std::io::Error> for GeomError {
    fn from(e: std::io::Error) -> Self {
        GeomError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for GeomError {
    fn from(e: serde_json::Error) -> Self {
        // serde_json already appends "at line L column C"
        GeomError::Schema(e.to_string())
    }
}
