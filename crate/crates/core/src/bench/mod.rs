//! Workload generation, timing, cross-checking and CSV reporting.

mod dynamic_run;
mod harness;
mod report;
mod verify;
mod workload;

pub use dynamic_run::{run_dynamic, DynamicReport};
pub use harness::{fill_speedups, run_bench, Algorithm, BenchOptions, BenchResult};
pub use report::{read_csv, to_csv_string, write_csv, CsvRow};
pub use verify::{default_matchers, verify_instance, verify_workload, VerifyFailure, VerifyOptions, VerifyReport};
pub use workload::{WorkloadSpec, DEFAULT_LENGTH};
