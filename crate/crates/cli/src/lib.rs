//! Batch front end for the companion-matrix condition analyzer: polynomial
//! ingestion, family enumeration and comparison, recommendation, theorem
//! verification sweeps, and report emission.

pub mod analyze;
pub mod emit;
pub mod input;
pub mod verify;

pub use analyze::{
    analyze, Analysis, AnalysisRequest, Recommendation, ReportRow, StepSelection, TupleSelection,
};
pub use emit::{emit_report, OutputFormat};
pub use input::{parse_document, parse_inline, parse_poly_argument};
pub use verify::{verify_suite, PropertyOutcome, VerificationReport};

use std::fmt;

/// Front-end errors, mapped onto process exit codes by the binary:
/// parse errors exit 2, infeasible requests exit 3, I/O failures exit 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(String),
    Infeasible(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(msg) => write!(f, "parse error: {}", msg),
            CliError::Infeasible(msg) => write!(f, "infeasible request: {}", msg),
            CliError::Io(msg) => write!(f, "io error: {}", msg),
        }
    }
}

impl std::error::Error for CliError {}
