//! Binary wavelet tree over a small integer alphabet `1..=sigma`.
//!
//! Levels are stored pointerlessly: level `l` holds one bit per position
//! (bit `l` of the value, most significant first) and every node occupies
//! the same position range on its level as its two children do on the next
//! one. All positions in the public API are 1-based.

mod bitvec;

pub use bitvec::BitVec;

use crate::distribution::ceil_log2;
use crate::error::{Error, Result};

#[cfg(test)]
thread_local! {
    pub(crate) static QUERIES: std::cell::Cell<u64> = const { std::cell::Cell::new(0) };
}

#[inline]
fn count_query() {
    #[cfg(test)]
    QUERIES.with(|q| q.set(q.get() + 1));
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveletTree {
    sigma: u32,
    len: usize,
    levels: Vec<BitVec>,
}

impl WaveletTree {
    pub fn build(seq: &[u32], sigma: u32) -> Result<Self> {
        if sigma == 0 {
            return Err(Error::InvalidArgument("sigma must be positive".into()));
        }
        if let Some(&bad) = seq.iter().find(|&&c| c == 0 || c > sigma) {
            return Err(Error::OutOfRange { index: bad as u64, len: sigma as u64 });
        }
        let depth = ceil_log2(sigma as u64).max(1);
        let mut cur: Vec<u32> = seq.iter().map(|&c| c - 1).collect();
        let mut levels = Vec::with_capacity(depth as usize);
        for l in 0..depth {
            let shift = depth - 1 - l;
            levels.push(BitVec::from_bits(cur.iter().map(|&v| v >> shift & 1 == 1)));
            // Stable partition by the top l+1 bits keeps every node contiguous.
            cur.sort_by_key(|&v| v >> shift);
        }
        Ok(WaveletTree { sigma, len: seq.len(), levels })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    fn depth(&self) -> u32 {
        self.levels.len() as u32
    }

    fn check_symbol(&self, c: u32) -> Result<u32> {
        if c == 0 || c > self.sigma {
            return Err(Error::OutOfRange { index: c as u64, len: self.sigma as u64 });
        }
        Ok(c - 1)
    }

    /// `S[i]`.
    pub fn access(&self, i: usize) -> Result<u32> {
        count_query();
        if i == 0 || i > self.len {
            return Err(Error::OutOfRange { index: i as u64, len: self.len as u64 });
        }
        let (mut start, mut end, mut pos) = (0usize, self.len, i - 1);
        let mut value = 0u32;
        for level in &self.levels {
            let zeros_start = level.rank0(start) as usize;
            let zeros = level.rank0(end) as usize - zeros_start;
            if level.get(pos) {
                pos = start + zeros + (level.rank1(pos) as usize - (start - zeros_start));
                start += zeros;
                value = value << 1 | 1;
            } else {
                pos = start + (level.rank0(pos) as usize - zeros_start);
                end = start + zeros;
                value <<= 1;
            }
        }
        Ok(value + 1)
    }

    /// Occurrences of `c` in `S[1..=i]`.
    pub fn rank(&self, c: u32, i: usize) -> Result<usize> {
        count_query();
        let v = self.check_symbol(c)?;
        if i > self.len {
            return Err(Error::OutOfRange { index: i as u64, len: self.len as u64 });
        }
        let depth = self.depth();
        let (mut start, mut end, mut cut) = (0usize, self.len, i);
        for (l, level) in self.levels.iter().enumerate() {
            let zeros_start = level.rank0(start) as usize;
            let zeros = level.rank0(end) as usize - zeros_start;
            if v >> (depth - 1 - l as u32) & 1 == 1 {
                cut = start + zeros + (level.rank1(cut) as usize - (start - zeros_start));
                start += zeros;
            } else {
                cut = start + (level.rank0(cut) as usize - zeros_start);
                end = start + zeros;
            }
        }
        Ok(cut - start)
    }

    /// Position of the `j`-th occurrence of `c`.
    pub fn select(&self, c: u32, j: usize) -> Result<usize> {
        count_query();
        let v = self.check_symbol(c)?;
        let depth = self.depth();
        let mut starts = [0usize; 32];
        let (mut start, mut end) = (0usize, self.len);
        for (l, level) in self.levels.iter().enumerate() {
            starts[l] = start;
            let zeros_start = level.rank0(start) as usize;
            let zeros = level.rank0(end) as usize - zeros_start;
            if v >> (depth - 1 - l as u32) & 1 == 1 {
                start += zeros;
            } else {
                end = start + zeros;
            }
        }
        let occurrences = end - start;
        if j == 0 || j > occurrences {
            return Err(Error::OutOfRange { index: j as u64, len: occurrences as u64 });
        }
        let mut rel = j - 1;
        for (l, level) in self.levels.iter().enumerate().rev() {
            let s = starts[l];
            let pos = if v >> (depth - 1 - l as u32) & 1 == 1 {
                level.select1(level.rank1(s) + rel as u64 + 1)
            } else {
                level.select0(level.rank0(s) + rel as u64 + 1)
            }
            .expect("node ranges are consistent");
            rel = pos - s;
        }
        Ok(rel + 1)
    }

    /// In-memory size of the level bit vectors and their directories.
    pub fn size_bits(&self) -> usize {
        self.levels.iter().map(BitVec::size_bits).sum()
    }
}
