//! Counting campaigns: spec validation, cached exact counts over a list of
//! fields, polynomial fitting against the oracle, and report rendering.

pub mod cache;
pub mod catalog;
pub mod report;
pub mod run;
pub mod spec;
pub mod verify;

pub use cache::Cache;
pub use catalog::{
    catalog, cross_check_sweep, fit_catalog, run_entry, CatalogEntry, CatalogOutcome,
};
pub use report::{emit_report, Format, Report};
pub use run::{
    check_budget, estimate_cost, run_experiment, run_problem, CountRecord, RunOptions,
    DEFAULT_BUDGET,
};
pub use spec::{ExperimentSpec, Kind, Problem, Resolved, CODE_VERSION, CONVENTIONS};
pub use verify::{
    cross_check_a_type, expected_leading, fit_and_verify, Check, CrossCheckReport, CrossRow,
    Residual, Verdict, VerifyReport,
};
