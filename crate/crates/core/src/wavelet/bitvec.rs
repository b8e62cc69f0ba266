//! Plain bit vector with constant-time rank and sampled select.
//!
//! Rank uses absolute counts per 512-bit superblock and 16-bit relative
//! counts per 64-bit word. Select keeps the superblock of every 512th
//! one (and zero), binary searches between two samples and finishes with an
//! in-word scan. Positions are 0-based here; the wavelet tree on top exposes
//! 1-based positions.

const WORD: usize = 64;
const WORDS_PER_SUPER: usize = 8;
const SUPER: usize = WORD * WORDS_PER_SUPER;
const SELECT_SAMPLE: u64 = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
    super_ranks: Vec<u64>,
    word_ranks: Vec<u16>,
    ones: u64,
    select1_hints: Vec<u32>,
    select0_hints: Vec<u32>,
}

impl BitVec {
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0usize;
        for b in bits {
            if len.is_multiple_of(WORD) {
                words.push(0);
            }
            if b {
                *words.last_mut().unwrap() |= 1 << (len % WORD);
            }
            len += 1;
        }
        BitVec::from_words(words, len)
    }

    fn from_words(words: Vec<u64>, len: usize) -> Self {
        let supers = words.len().div_ceil(WORDS_PER_SUPER);
        let mut super_ranks = Vec::with_capacity(supers + 1);
        let mut word_ranks = Vec::with_capacity(words.len());
        let mut total = 0u64;
        for chunk in words.chunks(WORDS_PER_SUPER) {
            super_ranks.push(total);
            let mut inner = 0u16;
            for w in chunk {
                word_ranks.push(inner);
                inner += w.count_ones() as u16;
            }
            total += inner as u64;
        }
        super_ranks.push(total);

        let mut bv = BitVec {
            words,
            len,
            super_ranks,
            word_ranks,
            ones: total,
            select1_hints: Vec::new(),
            select0_hints: Vec::new(),
        };
        bv.select1_hints = bv.sample(|bv, s| bv.super_ranks[s], bv.ones);
        bv.select0_hints = bv.sample(|bv, s| bv.zeros_before_super(s), bv.len as u64 - bv.ones);
        bv
    }

    /// Superblock holding the (k·SAMPLE + 1)-th matching bit, for each k.
    fn sample(&self, before: impl Fn(&BitVec, usize) -> u64, total: u64) -> Vec<u32> {
        let supers = self.super_ranks.len() - 1;
        let mut hints = Vec::with_capacity((total / SELECT_SAMPLE) as usize + 1);
        let mut s = 0usize;
        let mut k = 0u64;
        while k * SELECT_SAMPLE < total {
            let target = k * SELECT_SAMPLE + 1;
            while s + 1 < supers && before(self, s + 1) < target {
                s += 1;
            }
            hints.push(s as u32);
            k += 1;
        }
        hints
    }

    fn zeros_before_super(&self, s: usize) -> u64 {
        ((s * SUPER).min(self.len)) as u64 - self.super_ranks[s]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> u64 {
        self.ones
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    /// Ones in `[0, i)`.
    #[inline]
    pub fn rank1(&self, i: usize) -> u64 {
        debug_assert!(i <= self.len);
        let w = i / WORD;
        if w >= self.words.len() {
            return self.ones;
        }
        let bit = i % WORD;
        let mut r = self.super_ranks[w / WORDS_PER_SUPER] + self.word_ranks[w] as u64;
        if bit > 0 {
            r += (self.words[w] & ((1u64 << bit) - 1)).count_ones() as u64;
        }
        r
    }

    /// Zeros in `[0, i)`.
    #[inline]
    pub fn rank0(&self, i: usize) -> u64 {
        i as u64 - self.rank1(i)
    }

    /// Position of the `k`-th one, `k >= 1`.
    pub fn select1(&self, k: u64) -> Option<usize> {
        if k == 0 || k > self.ones {
            return None;
        }
        let s = self.find_super(k, &self.select1_hints, |bv, s| bv.super_ranks[s]);
        let mut remaining = k - self.super_ranks[s];
        let first = s * WORDS_PER_SUPER;
        let last = (first + WORDS_PER_SUPER).min(self.words.len());
        for w in first..last {
            let ones = self.words[w].count_ones() as u64;
            if remaining <= ones {
                return Some(w * WORD + select_in_word(self.words[w], remaining));
            }
            remaining -= ones;
        }
        unreachable!("rank directory inconsistent")
    }

    /// Position of the `k`-th zero, `k >= 1`.
    pub fn select0(&self, k: u64) -> Option<usize> {
        if k == 0 || k > self.len as u64 - self.ones {
            return None;
        }
        let s = self.find_super(k, &self.select0_hints, |bv, s| bv.zeros_before_super(s));
        let mut remaining = k - self.zeros_before_super(s);
        let first = s * WORDS_PER_SUPER;
        let last = (first + WORDS_PER_SUPER).min(self.words.len());
        for w in first..last {
            let valid = (self.len - w * WORD).min(WORD);
            let word = !self.words[w] & low_mask(valid);
            let zeros = word.count_ones() as u64;
            if remaining <= zeros {
                return Some(w * WORD + select_in_word(word, remaining));
            }
            remaining -= zeros;
        }
        unreachable!("rank directory inconsistent")
    }

    /// Last superblock `s` with `before(s) < k`, searched between samples.
    fn find_super(&self, k: u64, hints: &[u32], before: impl Fn(&BitVec, usize) -> u64) -> usize {
        let sample = ((k - 1) / SELECT_SAMPLE) as usize;
        let mut lo = hints[sample] as usize;
        let mut hi = hints
            .get(sample + 1)
            .map(|&h| h as usize + 1)
            .unwrap_or(self.super_ranks.len() - 1);
        // invariant: before(lo) < k, and the answer lies in [lo, hi)
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if before(self, mid) < k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Heap size of the bits and directories, in bits.
    pub fn size_bits(&self) -> usize {
        64 * self.words.len()
            + 64 * self.super_ranks.len()
            + 16 * self.word_ranks.len()
            + 32 * (self.select0_hints.len() + self.select1_hints.len())
    }
}

#[inline]
fn low_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Position of the `k`-th set bit of `word` (`k >= 1`, LSB = position 0).
#[inline]
fn select_in_word(mut word: u64, k: u64) -> usize {
    for _ in 1..k {
        word &= word - 1;
    }
    word.trailing_zeros() as usize
}
