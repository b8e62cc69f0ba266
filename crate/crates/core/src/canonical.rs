//! Canonical prefix codes.
//!
//! Codewords of each length are consecutive integers, and symbols of equal
//! length receive them in increasing index order, so a code is fully
//! described by its per-length counts. Encoding maps `(depth, offset)` to a
//! codeword with one addition; decoding finds the depth with a predecessor
//! search over the zero-padded first codewords.

use crate::error::{Error, Result};
use crate::huffman::LengthAssignment;

/// Longest codeword the tables support: one 64-bit decode window.
pub const MAX_CODE_LEN: u32 = 64;

/// A codeword, most significant bit first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    pub bits: u64,
    pub len: u32,
}

impl Codeword {
    pub fn new(bits: u64, len: u32) -> Result<Self> {
        if len == 0 || len > MAX_CODE_LEN {
            return Err(Error::LengthTooLarge(len));
        }
        if len < 64 && bits >> len != 0 {
            return Err(Error::ValueTooWide { value: bits, len });
        }
        Ok(Codeword { bits, len })
    }

    /// The codeword left-aligned in a 64-bit window, zero-filled.
    pub fn left_aligned(self) -> u64 {
        self.bits << (64 - self.len)
    }

    /// Whether `self` is a proper or improper prefix of `other`.
    pub fn is_prefix_of(self, other: Codeword) -> bool {
        self.len <= other.len && other.bits >> (other.len - self.len) == self.bits
    }
}

impl std::fmt::Display for Codeword {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.len as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalTable {
    max_len: u32,
    /// `first_code[ℓ]`, for `ℓ` in `1..=max_len + 1`.
    first_code: Vec<u128>,
    /// `count[ℓ]`, for `ℓ` in `0..=max_len` (index 0 unused).
    count: Vec<u64>,
    /// Zero-padded first codewords of the lengths in use, ascending.
    padded_first: Vec<u64>,
    /// Length belonging to each `padded_first` entry.
    padded_len: Vec<u32>,
}

impl CanonicalTable {
    pub fn build(lengths: &LengthAssignment) -> Result<Self> {
        let max_len = lengths.max_len();
        if max_len > MAX_CODE_LEN {
            return Err(Error::LengthTooLarge(max_len));
        }
        let mut count = vec![0u64; max_len as usize + 1];
        for &l in lengths.lengths() {
            if l > 0 {
                count[l as usize] += 1;
            }
        }
        CanonicalTable::from_length_counts(&count)
    }

    /// Builds from `count[ℓ]` = number of codewords of length `ℓ`
    /// (`count[0]` is ignored).
    pub fn from_length_counts(count: &[u64]) -> Result<Self> {
        let mut count = count.to_vec();
        if count.is_empty() {
            count.push(0);
        }
        count[0] = 0;
        while count.len() > 1 && *count.last().unwrap() == 0 {
            count.pop();
        }
        let max_len = (count.len() - 1) as u32;
        if max_len > MAX_CODE_LEN {
            return Err(Error::LengthTooLarge(max_len));
        }
        let mut kraft = 0u128;
        for (l, &c) in count.iter().enumerate().skip(1) {
            kraft += (c as u128) << (max_len as usize - l);
        }
        if max_len > 0 && kraft > 1u128 << max_len {
            return Err(Error::KraftViolation);
        }

        let mut first_code = vec![0u128; max_len as usize + 2];
        for l in 1..=max_len as usize {
            first_code[l + 1] = (first_code[l] + count[l] as u128) * 2;
        }
        let (padded_first, padded_len) = (1..=max_len)
            .filter(|&l| count[l as usize] > 0)
            .map(|l| ((first_code[l as usize] << (64 - l)) as u64, l))
            .unzip();
        Ok(CanonicalTable { max_len, first_code, count, padded_first, padded_len })
    }

    pub fn max_len(&self) -> u32 {
        self.max_len
    }

    /// Number of codewords of length `len`.
    pub fn count(&self, len: u32) -> u64 {
        self.count.get(len as usize).copied().unwrap_or(0)
    }

    /// First codeword value of length `len`, defined for `1..=max_len + 1`.
    pub fn first_code(&self, len: u32) -> u128 {
        assert!(len >= 1 && len <= self.max_len + 1, "length {len} outside table");
        self.first_code[len as usize]
    }

    pub fn padded_first(&self) -> &[u64] {
        &self.padded_first
    }

    /// Total number of codewords.
    pub fn len(&self) -> u64 {
        self.count.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Codeword of length `depth` with 1-based rank `offset` among its length.
    pub fn codeword_of(&self, depth: u32, offset: u64) -> Result<Codeword> {
        let count = self.count(depth);
        if offset == 0 || offset > count {
            return Err(Error::OutOfRange { index: offset, len: count });
        }
        let bits = self.first_code[depth as usize] + offset as u128 - 1;
        Ok(Codeword { bits: bits as u64, len: depth })
    }

    /// `(depth, offset)` of the codeword at the front of a left-aligned
    /// 64-bit window.
    #[inline]
    pub fn decode_prefix(&self, window: u64) -> Result<(u32, u64)> {
        let keys = &self.padded_first;
        if keys.is_empty() {
            return Err(Error::CorruptCodeword);
        }
        // Branch-free predecessor search; keys[0] is always 0.
        let mut base = 0usize;
        let mut size = keys.len();
        while size > 1 {
            let half = size / 2;
            base = if keys[base + half] <= window { base + half } else { base };
            size -= half;
        }
        let depth = self.padded_len[base];
        let code = if depth == 64 { window } else { window >> (64 - depth) };
        let offset = (code as u128 - self.first_code[depth as usize]) as u64;
        if offset >= self.count[depth as usize] {
            return Err(Error::CorruptCodeword);
        }
        Ok((depth, offset + 1))
    }

    /// Codeword of every symbol in `lengths` (`None` for length 0).
    pub fn assign(&self, lengths: &[u32]) -> Vec<Option<Codeword>> {
        let mut next = vec![0u64; self.max_len as usize + 1];
        lengths
            .iter()
            .map(|&l| {
                if l == 0 {
                    return None;
                }
                let slot = &mut next[l as usize];
                *slot += 1;
                self.codeword_of(l, *slot).ok()
            })
            .collect()
    }
}
