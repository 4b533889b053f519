use std::fs;
use std::path::Path;
use std::time::Instant;

use actw_core::{compress, decompress, space_saving, VariantConfig};
use rayon::prelude::*;

use crate::manifest::Manifest;
use crate::report::{BenchReport, Cell, CellResult, Row};
use crate::BenchError;

/// One benchmark input: a single file or a merge set's concatenation.
#[derive(Debug, Clone)]
pub struct Input {
    pub name: String,
    pub merge: bool,
    /// File contents, or why they could not be read.
    pub data: Result<Vec<u8>, String>,
}

impl Input {
    pub fn file(name: impl Into<String>, data: Vec<u8>) -> Self {
        Input {
            name: name.into(),
            merge: false,
            data: Ok(data),
        }
    }

    pub fn merge(name: impl Into<String>, parts: &[&[u8]]) -> Self {
        Input {
            name: name.into(),
            merge: true,
            data: Ok(parts.concat()),
        }
    }
}

/// Compresses every regular file directly inside `corpus_dir` (sorted by
/// name) and then every merge set of `manifest`, with each variant.
///
/// Merge sets are raw concatenations without separators. A file that
/// cannot be read fails its row; the rest of the suite still runs.
pub fn run_suite(
    corpus_dir: &Path,
    manifest: &Manifest,
    variants: &[VariantConfig],
) -> Result<BenchReport, BenchError> {
    let io_err = |source| BenchError::Io {
        path: corpus_dir.to_path_buf(),
        source,
    };
    let mut files: Vec<_> = fs::read_dir(corpus_dir)
        .map_err(io_err)?
        .collect::<Result<Vec<_>, _>>()
        .map_err(io_err)?
        .into_iter()
        .filter(|entry| entry.file_type().map(|t| t.is_file()).unwrap_or(false))
        .map(|entry| entry.file_name())
        .collect();
    files.sort();

    let mut inputs: Vec<Input> = files
        .iter()
        .map(|name| Input {
            name: name.to_string_lossy().into_owned(),
            merge: false,
            data: fs::read(corpus_dir.join(name)).map_err(|e| e.to_string()),
        })
        .collect();

    for set in &manifest.sets {
        let data = set.files.iter().try_fold(Vec::new(), |mut acc, file| {
            let bytes = fs::read(corpus_dir.join(file))
                .map_err(|e| format!("{}: {e}", file.display()))?;
            acc.extend_from_slice(&bytes);
            Ok(acc)
        });
        inputs.push(Input {
            name: set.name.clone(),
            merge: true,
            data,
        });
    }

    Ok(run_inputs(&inputs, variants))
}

/// Runs every (input, variant) cell, in parallel on the current rayon pool.
pub fn run_inputs(inputs: &[Input], variants: &[VariantConfig]) -> BenchReport {
    let jobs: Vec<(usize, usize)> = (0..inputs.len())
        .flat_map(|i| (0..variants.len()).map(move |v| (i, v)))
        .collect();
    let mut results: Vec<CellResult> = jobs
        .par_iter()
        .map(|&(i, v)| run_cell(&inputs[i], &variants[v]))
        .collect();

    let mut rows = Vec::with_capacity(inputs.len());
    for input in inputs.iter().rev() {
        let cells = results.split_off(results.len() - variants.len());
        rows.push(Row {
            name: input.name.clone(),
            merge: input.merge,
            original_bytes: input.data.as_ref().ok().map(|d| d.len() as u64),
            cells,
        });
    }
    rows.reverse();

    BenchReport {
        variants: variants.to_vec(),
        rows,
    }
}

fn run_cell(input: &Input, config: &VariantConfig) -> CellResult {
    let data = input.data.as_ref().map_err(Clone::clone)?;
    let start = Instant::now();
    let packed = compress(data, config).map_err(|e| e.to_string())?;
    let seconds = start.elapsed().as_secs_f64();
    let restored = decompress(&packed).map_err(|e| format!("round trip failed: {e}"))?;
    if &restored != data {
        return Err("round trip mismatch".into());
    }
    let saving = space_saving(data.len() as u64, packed.len() as u64).map_err(|e| e.to_string())?;
    Ok(Cell {
        compressed_bytes: packed.len() as u64,
        space_saving_pct: saving * 100.0,
        seconds,
    })
}
