//! Merge-set manifests.
//!
//! ```text
//! # comments and blank lines are ignored
//! [calgary-text]
//! bib
//! book1
//! paper1
//! ```
//!
//! Each `[name]` header opens a set; the following lines are file paths,
//! relative to the corpus directory, concatenated in the listed order.

use std::fs;
use std::path::{Path, PathBuf};

use crate::BenchError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeSet {
    pub name: String,
    pub files: Vec<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Manifest {
    pub sets: Vec<MergeSet>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self, BenchError> {
        let mut sets: Vec<MergeSet> = Vec::new();
        for (number, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let name = name.trim();
                if name.is_empty() {
                    return Err(BenchError::Manifest {
                        line: number + 1,
                        reason: "empty set name".into(),
                    });
                }
                if sets.iter().any(|s| s.name == name) {
                    return Err(BenchError::Manifest {
                        line: number + 1,
                        reason: format!("duplicate set `{name}`"),
                    });
                }
                sets.push(MergeSet {
                    name: name.to_string(),
                    files: Vec::new(),
                });
            } else {
                match sets.last_mut() {
                    Some(set) => set.files.push(PathBuf::from(line)),
                    None => {
                        return Err(BenchError::Manifest {
                            line: number + 1,
                            reason: "file listed before any [set] header".into(),
                        })
                    }
                }
            }
        }
        Ok(Manifest { sets })
    }

    pub fn load(path: &Path) -> Result<Self, BenchError> {
        let text = fs::read_to_string(path).map_err(|source| BenchError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }
}
