//! Packed rows of bits over the two-element field.
//!
//! Bit `i` lives in word `i / 64` at position `i % 64` (little-endian). Bits at
//! positions `>= len` are always zero, so derived equality and hashing are exact.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Row of length `len` with the single bit `index` set.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut row = Self::zeros(len);
        row.set(index, true);
        row
    }

    /// Low `len` bits of `value`; higher bits are dropped.
    pub fn from_u64(len: usize, value: u64) -> Self {
        let mut row = Self::zeros(len);
        if len > 0 {
            row.words[0] = value;
            row.trim();
        }
        row
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut row = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                row.set(i, true);
            }
        }
        row
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        (self.words[index / WORD] >> (index % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        let mask = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn highest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + (WORD - 1 - w.leading_zeros() as usize))
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * WORD + t)
                }
            })
        })
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        assert_eq!(self.len, other.len, "bit row width mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitRow) -> BitRow {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// XOR `other`, shifted up by `shift` positions, into `self`. Bits falling
    /// past `self.len()` must be zero.
    pub fn xor_shifted(&mut self, other: &BitRow, shift: usize) {
        if other.len == 0 {
            return;
        }
        let word_shift = shift / WORD;
        let bit_shift = shift % WORD;
        for (i, &w) in other.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let lo = i + word_shift;
            if bit_shift == 0 {
                self.words[lo] ^= w;
            } else {
                self.words[lo] ^= w << bit_shift;
                let hi = w >> (WORD - bit_shift);
                if hi != 0 {
                    self.words[lo + 1] ^= hi;
                }
            }
        }
        debug_assert!(self.tail_is_clean(), "shifted xor overflowed row");
    }

    /// Copy into a row of length `len` with every bit moved up by `shift`.
    pub fn shifted(&self, shift: usize, len: usize) -> BitRow {
        let mut out = BitRow::zeros(len);
        out.xor_shifted(self, shift);
        out
    }

    /// Copy of bits `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitRow {
        let mut out = BitRow::zeros(len);
        for i in self.ones().filter(|&i| i >= start && i < start + len) {
            out.set(i - start, true);
        }
        out
    }

    /// Same bits in a row of a different length. Truncation must only drop zeros.
    pub fn resized(&self, len: usize) -> BitRow {
        let mut out = self.clone();
        out.words.resize(words_for(len), 0);
        out.len = len;
        if len < self.len {
            assert!(
                self.highest_one().is_none_or(|h| h < len),
                "resize would drop set bits"
            );
        }
        out.trim();
        out
    }

    /// Bit `i` of the result is bit `len - 1 - i` of `self`.
    pub fn reversed(&self) -> BitRow {
        let mut out = BitRow::zeros(self.len);
        for i in self.ones() {
            out.set(self.len - 1 - i, true);
        }
        out
    }

    /// Carry-less product: the coefficient rows of two polynomials multiplied.
    /// Result length is `self.len() + other.len() - 1` (0 if either is empty).
    pub fn clmul(&self, other: &BitRow) -> BitRow {
        if self.len == 0 || other.len == 0 {
            return BitRow::zeros(0);
        }
        let mut out = BitRow::zeros(self.len + other.len - 1);
        let (sparse, dense) = if self.count_ones() <= other.count_ones() {
            (self, other)
        } else {
            (other, self)
        };
        for i in sparse.ones() {
            out.xor_shifted(dense, i);
        }
        out
    }

    /// Spread bit `i` to position `2 i`. Squaring in characteristic two.
    pub fn spread(&self) -> BitRow {
        if self.len == 0 {
            return BitRow::zeros(0);
        }
        let mut out = BitRow::zeros(2 * self.len - 1);
        for i in self.ones() {
            out.set(2 * i, true);
        }
        out
    }

    /// Inverse of [`BitRow::spread`]; `None` if any odd position is set.
    pub fn unspread(&self) -> Option<BitRow> {
        if self.ones().any(|i| i % 2 == 1) {
            return None;
        }
        let mut out = BitRow::zeros(self.len.div_ceil(2));
        for i in self.ones() {
            out.set(i / 2, true);
        }
        Some(out)
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    fn tail_is_clean(&self) -> bool {
        let rem = self.len % WORD;
        rem == 0 || self.words.last().is_none_or(|w| w >> rem == 0)
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitRow(")?;
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        write!(f, ")")
    }
}
