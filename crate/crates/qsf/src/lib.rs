//! Seeded verification harness for the `qsf-core` catalog: parameter
//! sampling, the suite runner and report serialization.

pub mod error;
pub mod report;
pub mod sample;
pub mod suite;

pub use error::{HarnessError, Result};
pub use report::{from_json, serialize_report, to_csv, to_json, Format};
pub use sample::{rng_stream, sample_params};
pub use suite::{run_outcomes, run_suite, EntryReport, SuiteConfig, SuiteReport};
