//! Corpus benchmark harness: every file and every ordered merge set is
//! compressed with every requested variant, round-trip verified, and
//! reported as space savings.

use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub mod manifest;
mod report;
mod suite;

pub use actw_core::synthetic;
pub use manifest::{Manifest, MergeSet};
pub use report::{render, BenchReport, Cell, CellResult, Format, Row};
pub use suite::{run_inputs, run_suite, Input};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("manifest line {line}: {reason}")]
    Manifest { line: usize, reason: String },

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}
