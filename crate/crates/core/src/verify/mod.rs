//! Enumeration, per-graph checks, and sweep aggregation.

mod enumerate;
mod output;
mod record;
mod sweep;

pub use enumerate::{
    default_cap, enumerate_oriented, oriented_count, oriented_from_index, sample_at,
    sample_oriented, CAP_ENV, DEFAULT_EXHAUSTIVE_CAP,
};
pub use output::{write_counterexamples, write_records_csv, CSV_COLUMNS};
pub use record::{check_graph, Verdict, VerificationRecord};
pub use sweep::{
    audit_readings, run_sweep, run_sweep_checkpointed, ClauseTally, ReadingAudit, SweepFilters,
    SweepMode, SweepProgress, SweepReport, SweepSpec, SweepSummary,
};
