//! MSB-first bit packing for the coder payload.

#[derive(Debug, Default)]
pub(crate) struct BitWriter {
    bytes: Vec<u8>,
    current: u8,
    filled: u8,
    written: u64,
}

impl BitWriter {
    #[inline]
    pub fn push(&mut self, bit: bool) {
        self.current = (self.current << 1) | u8::from(bit);
        self.filled += 1;
        self.written += 1;
        if self.filled == 8 {
            self.bytes.push(self.current);
            self.current = 0;
            self.filled = 0;
        }
    }

    #[inline]
    pub fn push_repeated(&mut self, bit: bool, count: u64) {
        for _ in 0..count {
            self.push(bit);
        }
    }

    pub fn bits_written(&self) -> u64 {
        self.written
    }

    /// Pads the last partial byte with zeros and returns the buffer.
    pub fn into_bytes(mut self) -> Vec<u8> {
        if self.filled > 0 {
            self.bytes.push(self.current << (8 - self.filled));
        }
        self.bytes
    }
}

#[derive(Debug)]
pub(crate) struct BitReader<'a> {
    data: &'a [u8],
    position: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        BitReader { data, position: 0 }
    }

    /// Next bit, or `None` once the input is exhausted.
    #[inline]
    pub fn next_bit(&mut self) -> Option<bool> {
        let byte = *self.data.get(self.position / 8)?;
        let bit = (byte >> (7 - self.position % 8)) & 1 == 1;
        self.position += 1;
        Some(bit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_msb_first_and_pads() {
        let mut w = BitWriter::default();
        for bit in [true, false, true, true, false, false, false, false, true, true] {
            w.push(bit);
        }
        assert_eq!(w.bits_written(), 10);
        let bytes = w.into_bytes();
        assert_eq!(bytes, vec![0b1011_0000, 0b1100_0000]);

        let mut r = BitReader::new(&bytes);
        let read: Vec<bool> = std::iter::from_fn(|| r.next_bit()).collect();
        assert_eq!(read.len(), 16);
        assert_eq!(&read[..4], &[true, false, true, true]);
        assert_eq!(r.next_bit(), None);
    }
}
