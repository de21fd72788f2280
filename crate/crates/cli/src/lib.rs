//! Command-line front end for `ppmod`: a formula language, scenario files,
//! JSON reports and certificates that re-verify.

pub mod certify;
pub mod dsl;
pub mod error;
pub mod perfect;
pub mod scenario;

pub use error::{CliError, Result};
pub use scenario::{load_scenario, run_scenario, verify_report, Report, Scenario, Task};
