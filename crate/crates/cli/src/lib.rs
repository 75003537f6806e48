//! Command line front end: dataset ingestion, analysis commands and
//! machine-readable reports.

pub mod commands;
pub mod decimal;
pub mod ingest;
pub mod report;

pub use commands::{execute, run, Cli, Command, EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK};
pub use ingest::{Dataset, Format, IngestError, Input};
pub use report::AnalysisReport;
