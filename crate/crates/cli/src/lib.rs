//! Command layer over `perdec-core`: JSON instance documents, one-line JSON
//! reports with stable field order, process exit codes, and the seeded
//! cross-validation harness.

pub mod commands;
pub mod error;
pub mod fuzz;
pub mod instance;
pub mod report;

pub use commands::{run_check, run_conditions, run_decompose, run_demo, run_oracle, run_validate, Method};
pub use error::{CliError, ErrorKind};
pub use fuzz::{fuzz_report, run_fuzz, FuzzOptions};
pub use instance::{build_instance, parse_instance, Instance};
pub use report::{Report, Verdict};
