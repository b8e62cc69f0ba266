//! Symbol frequency tables and the synthetic families used by the sweeps.

use crate::error::{Error, Result};

/// Integer frequency counts over an alphabet of `n` symbols.
///
/// Symbols with a zero count take no part in code construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    counts: Vec<u64>,
    total: u64,
}

impl Distribution {
    pub fn from_counts(counts: Vec<u64>) -> Result<Self> {
        let total = counts
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .ok_or_else(|| Error::InvalidArgument("counts overflow u64".into()))?;
        if total == 0 {
            return Err(Error::EmptyDistribution);
        }
        Ok(Distribution { counts, total })
    }

    /// Histogram of `symbols` over an alphabet of size `n`.
    pub fn from_symbols<I>(symbols: I, n: usize) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut counts = vec![0u64; n];
        for s in symbols {
            let slot = counts
                .get_mut(s)
                .ok_or(Error::OutOfRange { index: s as u64, len: n as u64 })?;
            *slot += 1;
        }
        Distribution::from_counts(counts)
    }

    /// Byte-value histogram (n = 256).
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        Distribution::from_symbols(bytes.iter().map(|&b| b as usize), 256)
    }

    /// Parses whitespace-separated non-negative integer counts.
    pub fn parse_counts(text: &str) -> Result<Self> {
        let counts = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad count {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Distribution::from_counts(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Alphabet size, including zero-count symbols.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Number of symbols with a positive count.
    pub fn support(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn probability(&self, symbol: usize) -> f64 {
        self.counts[symbol] as f64 / self.total as f64
    }

    /// Shannon entropy in bits per symbol.
    pub fn entropy_bits(&self) -> f64 {
        let total = self.total as f64;
        self.counts
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let c = c as f64;
                c / total * (total / c).log2()
            })
            .sum()
    }

    /// Restriction to the positive-count symbols, in index order.
    pub(crate) fn positive(&self) -> (Vec<usize>, Vec<u64>) {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i, c))
            .unzip()
    }
}

/// Dyadic distribution whose optimal lengths are forced to `1, 2, …, n−1, n−1`.
///
/// Counts are `2^(n−1−i)` for `i < n−1` and `1` for the last symbol, so
/// `n` is limited to 64.
pub fn gen_dyadic(n: usize) -> Result<Distribution> {
    if n < 2 {
        return Err(Error::InvalidArgument("dyadic distribution needs n >= 2".into()));
    }
    if n > 64 {
        return Err(Error::InvalidArgument("dyadic distribution needs n <= 64".into()));
    }
    let counts = (0..n)
        .map(|i| if i + 1 < n { 1u64 << (n - 2 - i) } else { 1 })
        .collect();
    Distribution::from_counts(counts)
}

/// Dyadic staircase capped at depth `max_depth`.
///
/// The first `k` symbols take probabilities `1/2, 1/4, …, 1/2^k` and the
/// remaining `n − k` symbols share the last `1/2^k` as a complete subtree,
/// with `k` as large as the depth cap allows. Identical to [`gen_dyadic`]
/// whenever `n − 1 <= max_depth`.
pub fn gen_dyadic_capped(n: usize, max_depth: u32) -> Result<Distribution> {
    if !(1..=63).contains(&max_depth) {
        return Err(Error::InvalidArgument("max_depth must lie in 1..=63".into()));
    }
    if n < 2 || ceil_log2(n as u64) > max_depth {
        return Err(Error::InvalidArgument(format!(
            "cannot fit {n} symbols under depth {max_depth}"
        )));
    }
    let d = max_depth as usize;
    // Largest staircase length k with the tail still fitting under the cap.
    let mut k = (n - 2).min(d - 1);
    while k + ceil_log2((n - k) as u64) as usize > d {
        k -= 1;
    }
    let mut depths: Vec<usize> = (1..=k).collect();
    let r = n - k;
    let h = ceil_log2(r as u64) as usize;
    let shallow = (1usize << h) - r;
    depths.extend(std::iter::repeat_n(k + h - 1, shallow));
    depths.extend(std::iter::repeat_n(k + h, r - shallow));
    let counts = depths.iter().map(|&depth| 1u64 << (d - depth)).collect();
    Distribution::from_counts(counts)
}

/// Zipf weights `1/rank^s` scaled by the smallest power of ten that keeps
/// every truncated count at least 1.
pub fn gen_zipf(n: usize, s: f64) -> Result<Distribution> {
    if n == 0 || s.is_nan() || s <= 0.0 {
        return Err(Error::InvalidArgument("zipf needs n >= 1 and s > 0".into()));
    }
    let weight = |rank: usize| (rank as f64).powf(-s);
    let min_weight = weight(n);
    let mut scale = 1f64;
    let mut found = false;
    for _ in 0..=19 {
        if (scale * min_weight).floor() >= 1.0 {
            found = true;
            break;
        }
        scale *= 10.0;
    }
    if !found {
        return Err(Error::InvalidArgument("zipf weights too skewed for u64 counts".into()));
    }
    let counts = (1..=n).map(|rank| (scale * weight(rank)).floor() as u64).collect();
    Distribution::from_counts(counts)
}

/// `n` symbols with count 1 each.
pub fn gen_uniform(n: usize) -> Result<Distribution> {
    Distribution::from_counts(vec![1; n])
}

/// `⌈log₂ x⌉`, with `ceil_log2(0) = ceil_log2(1) = 0`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}
