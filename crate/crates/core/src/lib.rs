//! Context tree weighting over bits, with discounted Krichevsky-Trofimov
//! estimators at every node.
//!
//! The crate is organised bottom-up:
//!
//! - [`estimator`]: the KT estimator and its discounted update.
//! - [`variant`]: discount schedules and their parameters.
//! - [`context_tree`]: the lazily materialized weighted context tree.
//! - [`coder`]: a binary arithmetic coder driven by external probabilities.
//! - [`codec`]: the file container and the predict/code/update loop.
//! - [`analysis`]: redundancy formula, entropy and synthetic bit sources.
//! - [`synthetic`]: seeded byte corpora for merge experiments.

pub mod analysis;
mod bitio;
pub mod codec;
pub mod coder;
pub mod context_tree;
mod error;
pub mod estimator;
pub mod synthetic;
pub mod variant;

pub use analysis::{
    binary_entropy, expected_redundancy, generate, redundancy_curve, SourceKind, SourceSpec,
};
pub use codec::{
    compress, compress_with_stats, decompress, space_saving, CodecHeader, CompressStats,
};
pub use coder::{Decoder, Encoder};
pub use context_tree::{ContextTree, NodeView};
pub use error::{Error, Result};
pub use estimator::{kt_block_logprob, kt_predict, kt_update, CountPair};
pub use variant::{Preset, Schedule, VariantConfig, DEFAULT_DEPTH, MAX_DEPTH};

/// Flattens bytes into bits, most significant bit first.
pub fn bytes_to_bits(bytes: &[u8]) -> Vec<bool> {
    bytes
        .iter()
        .flat_map(|&byte| (0..8).rev().map(move |i| (byte >> i) & 1 == 1))
        .collect()
}

/// Packs bits into bytes, most significant bit first. A trailing partial
/// byte is padded with zeros.
pub fn bits_to_bytes(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &bit)| acc | (u8::from(bit) << (7 - i)))
        })
        .collect()
}
