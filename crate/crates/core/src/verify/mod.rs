//! Executable checks of the dilation theorems, their counterexamples, the
//! internal consistency of the radial comparison, and an explorer for
//! asymmetric dilations.

mod conjecture;
mod consistency;
mod counterexamples;
mod report;
mod theorems;

pub use conjecture::{asym_dilate, default_polygon, run_conjecture_scan, AsymMap, AsymModel, AsymmetricDilation, ConjectureParams, INTERPRETATION};
pub use consistency::{run_proof_consistency, ConsistencyReport, ConsistencyTolerances};
pub use counterexamples::{collinearity_defect, figure1_params, run_counterexample, CaseId, CaseResult};
pub use report::{now_unix, write_atomic, Expectation, SuiteReport, VERSION};
pub use theorems::{run_theorem1_suite, run_theorem2_suite, TheoremParams};
