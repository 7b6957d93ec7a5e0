//! Batch verification lab over the `coherence-core` engines: experiment
//! configuration, sweeps, example regressions, module file IO, and
//! machine-readable reports.

pub mod config;
pub mod examples;
pub mod experiments;
pub mod format;
pub mod report;
