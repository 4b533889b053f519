//! Seeded synthetic files for desk-scale merge experiments.
//!
//! Three deliberately different sources: English-like word salad, uniform
//! random bytes, and a highly repetitive log-style record stream.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SYLLABLES: [&str; 24] = [
    "the", "an", "ing", "er", "on", "re", "at", "en", "es", "or", "ti", "st", "al", "ou", "is",
    "ar", "le", "co", "de", "ra", "ne", "pro", "ma", "ly",
];

/// Text built from a Zipf-weighted vocabulary of pseudo-words, with simple
/// punctuation and line breaks around 72 columns.
pub fn text_like(len: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vocabulary: Vec<String> = (0..400)
        .map(|_| {
            let parts = rng.gen_range(1..=3);
            (0..parts)
                .map(|_| SYLLABLES[rng.gen_range(0..SYLLABLES.len())])
                .collect()
        })
        .collect();
    let zipf = WeightedIndex::new((1..=vocabulary.len()).map(|r| 1.0 / r as f64)).unwrap();

    let mut out = Vec::with_capacity(len + 16);
    let mut column = 0;
    let mut sentence_start = true;
    while out.len() < len {
        let word = vocabulary[zipf.sample(&mut rng)].as_bytes();
        if sentence_start {
            out.push(word[0].to_ascii_uppercase());
            out.extend_from_slice(&word[1..]);
            sentence_start = false;
        } else {
            out.extend_from_slice(word);
        }
        column += word.len();
        if rng.gen_bool(0.08) {
            out.push(b'.');
            sentence_start = true;
            column += 1;
        } else if rng.gen_bool(0.05) {
            out.push(b',');
            column += 1;
        }
        if column > 72 {
            out.push(b'\n');
            column = 0;
        } else {
            out.push(b' ');
            column += 1;
        }
    }
    out.truncate(len);
    out
}

/// Uniformly random bytes.
pub fn random(len: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![0u8; len];
    rng.fill(out.as_mut_slice());
    out
}

/// Fixed-format records with a counter and a few rare field changes.
pub fn repetitive(len: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(len + 64);
    let mut id = 0u32;
    while out.len() < len {
        let status = if rng.gen_bool(0.02) { "FAIL" } else { "OK" };
        out.extend_from_slice(format!("record {id:06}: status={status} host=node-a\n").as_bytes());
        id += 1;
    }
    out.truncate(len);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths_and_determinism() {
        for generator in [text_like, random, repetitive] {
            let a = generator(5000, 3);
            assert_eq!(a.len(), 5000);
            assert_eq!(a, generator(5000, 3));
            assert_ne!(a, generator(5000, 4));
        }
    }

    #[test]
    fn text_is_printable() {
        let text = text_like(2000, 1);
        assert!(text.iter().all(|&c| c.is_ascii_graphic() || c == b' ' || c == b'\n'));
        assert!(text.windows(2).any(|w| w == b". "));
    }

    #[test]
    fn repetitive_starts_with_a_record() {
        assert!(repetitive(100, 0).starts_with(b"record 000000: status="));
    }
}
