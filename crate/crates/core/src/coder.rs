//! Binary arithmetic coder with 62-bit interval registers.
//!
//! Probabilities are quantized to 30-bit fixed point before every split, so
//! the interval arithmetic is integer-only and identical on every platform.
//! Renormalization shifts out one bit at a time; straddling the midpoint is
//! handled with a pending-bit counter, which keeps the interval wider than a
//! quarter of the register after every step.
//!
//! [`Encoder::flush`] writes all 62 bits of the final low end, so a decoder
//! consumes exactly the bits the encoder produced and a missing byte is
//! reported as truncation instead of being silently zero-filled.

use crate::bitio::{BitReader, BitWriter};
use crate::error::{Error, Result};
use crate::estimator::{MAX_PROBABILITY, MIN_PROBABILITY};

const PRECISION: u32 = 62;
const TOP: u64 = (1 << PRECISION) - 1;
const HALF: u64 = 1 << (PRECISION - 1);
const QUARTER: u64 = 1 << (PRECISION - 2);
const THREE_QUARTERS: u64 = HALF + QUARTER;

const PROB_BITS: u32 = 30;
const PROB_ONE: u64 = 1 << PROB_BITS;

/// Quantizes the probability of a one to 30-bit fixed point.
fn quantize(p1: f64) -> Result<u64> {
    if !(MIN_PROBABILITY..=MAX_PROBABILITY).contains(&p1) {
        return Err(Error::range("p1", p1, "[2^-30, 1 - 2^-30]"));
    }
    Ok(((p1 * PROB_ONE as f64) as u64).clamp(1, PROB_ONE - 1))
}

/// Width of the sub-interval assigned to a one.
#[inline]
fn split(low: u64, high: u64, q1: u64) -> u64 {
    let range = (high - low + 1) as u128;
    ((range * q1 as u128) >> PROB_BITS) as u64
}

#[derive(Debug)]
pub struct Encoder {
    low: u64,
    high: u64,
    pending: u64,
    out: BitWriter,
    flushed: bool,
}

impl Default for Encoder {
    fn default() -> Self {
        Self::new()
    }
}

impl Encoder {
    pub fn new() -> Self {
        Encoder {
            low: 0,
            high: TOP,
            pending: 0,
            out: BitWriter::default(),
            flushed: false,
        }
    }

    #[inline]
    fn emit(&mut self, bit: bool) {
        self.out.push(bit);
        self.out.push_repeated(!bit, self.pending);
        self.pending = 0;
    }

    /// Codes `bit`, where `p1` is the model's probability of a one.
    pub fn encode_bit(&mut self, bit: bool, p1: f64) -> Result<()> {
        if self.flushed {
            return Err(Error::AlreadyFlushed);
        }
        let width = split(self.low, self.high, quantize(p1)?);
        if bit {
            self.high = self.low + width - 1;
        } else {
            self.low += width;
        }

        loop {
            if self.high < HALF {
                self.emit(false);
            } else if self.low >= HALF {
                self.emit(true);
                self.low -= HALF;
                self.high -= HALF;
            } else if self.low >= QUARTER && self.high < THREE_QUARTERS {
                self.pending += 1;
                self.low -= QUARTER;
                self.high -= QUARTER;
            } else {
                break;
            }
            self.low <<= 1;
            self.high = (self.high << 1) | 1;
        }
        Ok(())
    }

    /// Terminates the message. A second call is an error.
    pub fn flush(&mut self) -> Result<()> {
        if self.flushed {
            return Err(Error::AlreadyFlushed);
        }
        self.flushed = true;
        let low = self.low;
        self.emit(low & HALF != 0);
        for shift in (0..PRECISION - 1).rev() {
            self.out.push((low >> shift) & 1 == 1);
        }
        Ok(())
    }

    /// Exact number of payload bits produced so far, excluding byte padding.
    pub fn bits_written(&self) -> u64 {
        self.out.bits_written()
    }

    /// The coded bytes. Call [`Encoder::flush`] first.
    pub fn into_bytes(self) -> Vec<u8> {
        debug_assert!(self.flushed, "encoder dropped without flush");
        self.out.into_bytes()
    }
}

#[derive(Debug)]
pub struct Decoder<'a> {
    low: u64,
    high: u64,
    value: u64,
    input: BitReader<'a>,
}

impl<'a> Decoder<'a> {
    pub fn new(data: &'a [u8]) -> Result<Self> {
        let mut input = BitReader::new(data);
        let mut value = 0u64;
        for _ in 0..PRECISION {
            value = (value << 1) | u64::from(input.next_bit().ok_or(Error::Truncated)?);
        }
        Ok(Decoder {
            low: 0,
            high: TOP,
            value,
            input,
        })
    }

    /// Decodes one bit; `p1` must equal what the encoder used at this position.
    pub fn decode_bit(&mut self, p1: f64) -> Result<bool> {
        let width = split(self.low, self.high, quantize(p1)?);
        let bit = self.value < self.low + width;
        if bit {
            self.high = self.low + width - 1;
        } else {
            self.low += width;
        }

        loop {
            let offset = if self.high < HALF {
                0
            } else if self.low >= HALF {
                HALF
            } else if self.low >= QUARTER && self.high < THREE_QUARTERS {
                QUARTER
            } else {
                break;
            };
            self.low -= offset;
            self.high -= offset;
            self.value -= offset;
            let next = self.input.next_bit().ok_or(Error::Truncated)?;
            self.low <<= 1;
            self.high = (self.high << 1) | 1;
            self.value = (self.value << 1) | u64::from(next);
        }
        Ok(bit)
    }
}
