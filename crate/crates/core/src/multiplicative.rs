//! Codec with expected length within a factor `c` of optimal, storing only
//! the short codewords.
//!
//! The code is restricted to `L = ⌈log₂ n⌉ + ⌈1/(c−1)⌉ + 1`. Codewords of
//! length at most `⌊L/c⌋ + 2` are short and kept in a dictionary. Every
//! longer codeword is extended to `L + 1` bits; the extensions form one run
//! of consecutive integers starting at `α_f`, and symbol `a` (1-based) that
//! is not in the dictionary is sent as `α_f + a − 1`.

use crate::canonical::{CanonicalTable, Codeword};
use crate::dict::StaticMap;
use crate::distribution::{ceil_log2, Distribution};
use crate::error::{Error, Result};
use crate::ratio::Ratio;
use crate::restrict::restrict;

/// Longest extended codeword; keeps `α_f` and `2^(L+1)` inside a `u64`.
pub const MAX_EXTENDED_LEN: u32 = 63;

/// `(L, short_limit)` for alphabet size `n` and factor `c`.
pub fn plan(n: usize, c: Ratio) -> Result<(u32, u32)> {
    let (num, den) = (c.num() as u64, c.den() as u64);
    if num <= den {
        return Err(Error::FactorOutOfRange);
    }
    let slack = den.div_ceil(num - den);
    let limit = ceil_log2(n as u64) as u64 + slack + 1;
    if limit + 1 > MAX_EXTENDED_LEN as u64 {
        return Err(Error::LengthTooLarge((limit + 1).min(u32::MAX as u64) as u32));
    }
    let short = limit * den / num + 2;
    Ok((limit as u32, short as u32))
}

#[derive(Debug, Clone)]
pub struct MultiplicativeCodec {
    n: usize,
    c: Ratio,
    limit: u32,
    short_limit: u32,
    /// Dictionary entries `(symbol, length)`, sorted by symbol.
    entries: Vec<(u32, u32)>,
    dict: StaticMap,
    /// `per_length[ℓ]`: symbols with codewords of length `ℓ`, in codeword order.
    per_length: Vec<Vec<u32>>,
    table: CanonicalTable,
    alpha_f: u64,
    fallback: bool,
}

impl MultiplicativeCodec {
    pub fn build(d: &Distribution, c: Ratio) -> Result<Self> {
        let n = d.len();
        let (limit, short_limit) = plan(n, c)?;
        let lengths = restrict(d, limit)?;
        let lengths = lengths.lengths();

        let mut capacity = 0u128;
        let mut has_long = false;
        for &l in lengths.iter().filter(|&&l| l > short_limit) {
            has_long = true;
            capacity += 1u128 << (limit + 1 - l);
        }
        let fallback = has_long && capacity < n as u128;
        let entries: Vec<(u32, u32)> = lengths
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > 0 && (fallback || l <= short_limit))
            .map(|(s, &l)| (s as u32, l))
            .collect();
        Self::assemble(n, c, limit, short_limit, entries, fallback)
    }

    /// Rebuilds a codec from its dictionary entries.
    pub(crate) fn assemble(
        n: usize,
        c: Ratio,
        limit: u32,
        short_limit: u32,
        mut entries: Vec<(u32, u32)>,
        fallback: bool,
    ) -> Result<Self> {
        entries.sort_unstable();
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::CorruptModel("duplicate dictionary symbol".into()));
        }
        let top = if fallback { limit } else { short_limit.min(limit) };
        let mut per_length: Vec<Vec<u32>> = vec![Vec::new(); top as usize + 1];
        for &(s, l) in &entries {
            if s as usize >= n || l == 0 || l > top {
                return Err(Error::CorruptModel(format!("bad dictionary entry ({s}, {l})")));
            }
            per_length[l as usize].push(s);
        }
        let counts: Vec<u64> = per_length.iter().map(|v| v.len() as u64).collect();
        let table = CanonicalTable::from_length_counts(&counts)?;

        let alpha_f = if fallback {
            1u64 << (limit + 1)
        } else {
            // first codeword of length short_limit + 1, extended to L + 1 bits
            let mut first = 0u64;
            for &count in counts.iter().skip(1) {
                first = (first + count) * 2;
            }
            first << (limit - top)
        };

        let mut pairs = Vec::with_capacity(entries.len());
        for (l, symbols) in per_length.iter().enumerate().skip(1) {
            for (k, &s) in symbols.iter().enumerate() {
                pairs.push((s, table.codeword_of(l as u32, k as u64 + 1)?));
            }
        }
        let dict = StaticMap::build(&pairs);

        Ok(MultiplicativeCodec {
            n,
            c,
            limit,
            short_limit,
            entries,
            dict,
            per_length,
            table,
            alpha_f,
            fallback,
        })
    }

    pub fn alphabet_size(&self) -> usize {
        self.n
    }

    pub fn factor(&self) -> Ratio {
        self.c
    }

    /// `L`; long symbols are sent in `L + 1` bits.
    pub fn limit(&self) -> u32 {
        self.limit
    }

    pub fn short_limit(&self) -> u32 {
        self.short_limit
    }

    pub fn extended_len(&self) -> u32 {
        self.limit + 1
    }

    pub fn alpha_f(&self) -> u64 {
        self.alpha_f
    }

    pub fn is_fallback(&self) -> bool {
        self.fallback
    }

    /// Number of dictionary (short) symbols.
    pub fn dictionary_len(&self) -> usize {
        self.entries.len()
    }

    pub(crate) fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn table(&self) -> &CanonicalTable {
        &self.table
    }

    /// Count of `(L+1)`-bit values at or above `α_f`.
    pub fn new_codeword_capacity(&self) -> u64 {
        (1u64 << (self.limit + 1)).saturating_sub(self.alpha_f)
    }

    /// Codeword of `symbol` (0-based alphabet index).
    #[inline]
    pub fn encode_symbol(&self, symbol: usize) -> Result<Codeword> {
        if symbol >= self.n {
            return Err(Error::UnknownSymbol(symbol));
        }
        if let Some(cw) = self.dict.get(symbol as u32) {
            return Ok(cw);
        }
        // α_f + a − 1 with a = symbol + 1
        let bits = self.alpha_f + symbol as u64;
        if self.fallback || bits >> (self.limit + 1) != 0 {
            return Err(Error::UnknownSymbol(symbol));
        }
        Ok(Codeword { bits, len: self.limit + 1 })
    }

    /// Decodes the codeword at the front of a left-aligned 64-bit window.
    #[inline]
    pub fn decode_symbol(&self, window: u64) -> Result<(usize, u32)> {
        let prefix = window >> (63 - self.limit);
        if prefix >= self.alpha_f {
            let symbol = (prefix - self.alpha_f) as usize;
            if symbol >= self.n || self.dict.get(symbol as u32).is_some() {
                return Err(Error::CorruptCodeword);
            }
            return Ok((symbol, self.limit + 1));
        }
        let (len, offset) = self.table.decode_prefix(window)?;
        let symbol = self.per_length[len as usize][offset as usize - 1];
        Ok((symbol as usize, len))
    }

    /// Emitted codeword length per alphabet symbol: dictionary length, or
    /// `L + 1` for everything else when the arithmetic path is live.
    pub fn emitted_lengths(&self) -> Vec<u32> {
        let mut out = vec![if self.fallback { 0 } else { self.limit + 1 }; self.n];
        for &(s, l) in &self.entries {
            out[s as usize] = l;
        }
        out
    }

    /// Weighted length of the emitted code over `d`.
    pub fn weighted_length(&self, d: &Distribution) -> Result<u128> {
        let lengths = self.emitted_lengths();
        let counts = d.counts();
        if counts.len() != lengths.len() {
            return Err(Error::SizeMismatch { left: lengths.len(), right: counts.len() });
        }
        let mut total = 0u128;
        for (s, (&l, &count)) in lengths.iter().zip(counts).enumerate() {
            if count > 0 && l == 0 {
                return Err(Error::UnknownSymbol(s));
            }
            total += l as u128 * count as u128;
        }
        Ok(total)
    }

    /// Bits needed to store a symbol index.
    pub(crate) fn index_bits(&self) -> u32 {
        ceil_log2(self.n as u64)
    }

    /// Serialized model size in bits: the scalars `L`, `α_f`, the fallback
    /// flag and `|F|`, then one `(index, length)` pair per dictionary symbol.
    pub fn model_size_bits(&self) -> u64 {
        SCALAR_BITS + self.entries.len() as u64 * (self.index_bits() as u64 + 8)
    }
}

/// `L` (8) + `α_f` (64) + fallback flag (8) + `|F|` (32).
pub(crate) const SCALAR_BITS: u64 = 8 + 64 + 8 + 32;
