//! Container format and the predict/code/update loop.
//!
//! Layout, all multi-byte fields little-endian:
//!
//! ```text
//! offset  size  field
//!      0     4  magic "ACTW"
//!      4     1  version (1)
//!      5     1  variant code (0 ctw, 1 fixed-rate, 2 seq-length,
//!               3 partial-visit, 4 full-visit, 5 leaf-visit)
//!      6     1  context depth, 1..=63
//!      7     8  param1 (f64): gamma, or c
//!     15     8  param2 (f64): alpha, or 0
//!     23     8  original length in bytes (u64)
//!     31     -  arithmetic-coded payload
//! ```
//!
//! Input bytes are flattened most significant bit first and the context
//! window runs across byte boundaries.

use crate::bytes_to_bits;
use crate::coder::{Decoder, Encoder};
use crate::context_tree::ContextTree;
use crate::error::{Error, Result};
use crate::estimator::clamp_probability;
use crate::variant::{Schedule, VariantConfig, MAX_DEPTH};

pub const MAGIC: [u8; 4] = *b"ACTW";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 31;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodecHeader {
    pub config: VariantConfig,
    pub original_length: u64,
}

impl CodecHeader {
    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        let (p1, p2) = self.config.schedule.params();
        out[..4].copy_from_slice(&MAGIC);
        out[4] = VERSION;
        out[5] = self.config.schedule.code();
        out[6] = self.config.depth as u8;
        out[7..15].copy_from_slice(&p1.to_le_bytes());
        out[15..23].copy_from_slice(&p2.to_le_bytes());
        out[23..31].copy_from_slice(&self.original_length.to_le_bytes());
        out
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            if bytes.len() >= 4 && bytes[..4] != MAGIC {
                return Err(Error::Format("bad magic".into()));
            }
            return Err(Error::Truncated);
        }
        if bytes[..4] != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        if bytes[4] != VERSION {
            return Err(Error::Format(format!("unsupported version {}", bytes[4])));
        }
        let f64_at = |at: usize| f64::from_le_bytes(bytes[at..at + 8].try_into().unwrap());
        let schedule = Schedule::from_parts(bytes[5], f64_at(7), f64_at(15))?;
        let depth = usize::from(bytes[6]);
        let config = VariantConfig { schedule, depth };
        config
            .validate()
            .map_err(|e| Error::Format(format!("bad parameters: {e}")))?;
        debug_assert!(depth <= MAX_DEPTH);
        let original_length = u64::from_le_bytes(bytes[23..31].try_into().unwrap());
        Ok(CodecHeader {
            config,
            original_length,
        })
    }
}

/// Side information from a compression run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompressStats {
    /// Payload bits emitted by the coder, without byte padding.
    pub payload_bits: u64,
    /// Natural log of the model's joint probability of the input.
    pub joint_logprob: f64,
    /// Materialized tree nodes at the end of the run.
    pub nodes: usize,
}

/// Compresses `input` and also reports model and coder statistics.
pub fn compress_with_stats(input: &[u8], config: &VariantConfig) -> Result<(Vec<u8>, CompressStats)> {
    config.validate()?;
    let header = CodecHeader {
        config: *config,
        original_length: input.len() as u64,
    };
    let mut tree = ContextTree::new(*config);
    let mut encoder = Encoder::new();
    for bit in bytes_to_bits(input) {
        encoder.encode_bit(bit, clamp_probability(tree.predict()))?;
        tree.update(bit);
    }
    encoder.flush()?;
    let stats = CompressStats {
        payload_bits: encoder.bits_written(),
        joint_logprob: tree.joint_logprob(),
        nodes: tree.node_count(),
    };
    let mut out = header.to_bytes().to_vec();
    out.extend_from_slice(&encoder.into_bytes());
    Ok((out, stats))
}

pub fn compress(input: &[u8], config: &VariantConfig) -> Result<Vec<u8>> {
    compress_with_stats(input, config).map(|(out, _)| out)
}

pub fn decompress(input: &[u8]) -> Result<Vec<u8>> {
    let header = CodecHeader::parse(input)?;
    let length = usize::try_from(header.original_length)
        .map_err(|_| Error::Format("original length does not fit in memory".into()))?;
    let mut tree = ContextTree::new(header.config);
    let mut decoder = Decoder::new(&input[HEADER_LEN..])?;
    let mut out = Vec::with_capacity(length.min(input.len().saturating_mul(64)));
    for _ in 0..length {
        let mut byte = 0u8;
        for _ in 0..8 {
            let bit = decoder.decode_bit(clamp_probability(tree.predict()))?;
            tree.update(bit);
            byte = (byte << 1) | u8::from(bit);
        }
        out.push(byte);
    }
    Ok(out)
}

/// `1 - compressed / original`; negative when the output is larger.
pub fn space_saving(original: u64, compressed: u64) -> Result<f64> {
    if original == 0 {
        return Err(Error::UndefinedMetric);
    }
    Ok(1.0 - compressed as f64 / original as f64)
}
