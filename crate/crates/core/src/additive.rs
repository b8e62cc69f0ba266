//! Codec with expected length within an additive `ε` of optimal.
//!
//! Lengths come from [`restrict`](crate::restrict::restrict) with
//! `L = ⌈log₂ n⌉ + ⌈log₂(2/ε)⌉`. The canonical code is indexed through the
//! depth sequence `S` (`S[c]` = codeword length of symbol `c`): a symbol's
//! depth is `S[c]` and its offset `rank_{S[c]}(S, c)`; a `(depth, offset)`
//! pair decodes to `select_depth(S, offset)`.
//!
//! The excess over Huffman is at most `1/φ^e` per symbol (see
//! [`RestrictionBound`](crate::restrict::RestrictionBound)), which at this
//! `L` is about `ε^0.69`. On the usual families the measured excess stays
//! well under `ε`; heavily skewed inputs can exceed it, and no code limited
//! to this `L` avoids that in every case.

use crate::canonical::{CanonicalTable, Codeword};
use crate::distribution::{ceil_log2, Distribution};
use crate::error::{Error, Result};
use crate::huffman::LengthAssignment;
use crate::ratio::Ratio;
use crate::restrict::restrict;
use crate::wavelet::WaveletTree;

/// Largest accepted `1/ε`.
pub const MAX_INV_EPSILON: u64 = 1 << 20;

#[derive(Debug, Clone)]
pub struct AdditiveCodec {
    n: usize,
    epsilon: Ratio,
    limit: u32,
    table: CanonicalTable,
    depths: WaveletTree,
    /// Alphabet index → 1-based position in `S`, 0 when absent. `None`
    /// when every symbol is present.
    dense: Option<Vec<u32>>,
    /// Position in `S` (0-based) → alphabet index.
    sparse: Option<Vec<u32>>,
}

/// Checks `0 < ε < 1/2` and `1/ε <= 2^20`.
pub fn check_epsilon(epsilon: Ratio) -> Result<()> {
    let (num, den) = (epsilon.num() as u64, epsilon.den() as u64);
    if num == 0 || 2 * num >= den {
        return Err(Error::EpsilonOutOfRange);
    }
    if den > MAX_INV_EPSILON * num {
        return Err(Error::EpsilonTooSmall);
    }
    Ok(())
}

/// `L = ⌈log₂ n⌉ + ⌈log₂(2/ε)⌉`.
pub fn plan_limit(n: usize, epsilon: Ratio) -> Result<u32> {
    check_epsilon(epsilon)?;
    // smallest k with 2^k · num >= 2 · den
    let (num, den) = (epsilon.num() as u64, epsilon.den() as u64);
    let mut k = 0u32;
    while (num << k) < 2 * den {
        k += 1;
    }
    let limit = ceil_log2(n as u64) + k;
    if limit > crate::canonical::MAX_CODE_LEN {
        return Err(Error::LengthTooLarge(limit));
    }
    Ok(limit)
}

impl AdditiveCodec {
    pub fn build(d: &Distribution, epsilon: Ratio) -> Result<Self> {
        let support = d.support();
        let limit = plan_limit(support, epsilon)?;
        let lengths = restrict(d, limit)?;
        let present: Vec<bool> = d.counts().iter().map(|&c| c > 0).collect();
        let seq: Vec<u32> = lengths.lengths().iter().copied().filter(|&l| l > 0).collect();
        Self::assemble(d.len(), epsilon, limit, &present, &seq)
    }

    /// Rebuilds a codec from its depth sequence; `present` marks the
    /// alphabet symbols that `seq` covers, in order.
    pub(crate) fn assemble(
        n: usize,
        epsilon: Ratio,
        limit: u32,
        present: &[bool],
        seq: &[u32],
    ) -> Result<Self> {
        debug_assert_eq!(present.len(), n);
        if seq.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        if let Some(&bad) = seq.iter().find(|&&l| l == 0 || l > limit) {
            return Err(Error::CorruptModel(format!("depth {bad} outside 1..={limit}")));
        }
        let table = CanonicalTable::build(&LengthAssignment::new(seq.to_vec())?)?;
        let depths = WaveletTree::build(seq, table.max_len())?;
        let (dense, sparse) = if seq.len() == n {
            (None, None)
        } else {
            let mut dense = vec![0u32; n];
            let mut sparse = Vec::with_capacity(seq.len());
            for (i, _) in present.iter().enumerate().filter(|(_, &p)| p) {
                sparse.push(i as u32);
                dense[i] = sparse.len() as u32;
            }
            if sparse.len() != seq.len() {
                return Err(Error::CorruptModel("presence map does not match depths".into()));
            }
            (Some(dense), Some(sparse))
        };
        Ok(AdditiveCodec { n, epsilon, limit, table, depths, dense, sparse })
    }

    /// Alphabet size, including symbols without a codeword.
    pub fn alphabet_size(&self) -> usize {
        self.n
    }

    /// Number of symbols with a codeword (the length of `S`).
    pub fn coded_symbols(&self) -> usize {
        self.depths.len()
    }

    pub fn epsilon(&self) -> Ratio {
        self.epsilon
    }

    /// The planned limit `L`.
    pub fn limit(&self) -> u32 {
        self.limit
    }

    pub fn max_codeword_len(&self) -> u32 {
        self.table.max_len()
    }

    pub fn table(&self) -> &CanonicalTable {
        &self.table
    }

    pub fn depth_index(&self) -> &WaveletTree {
        &self.depths
    }

    pub(crate) fn is_dense(&self) -> bool {
        self.dense.is_none()
    }

    pub(crate) fn is_present(&self, symbol: usize) -> bool {
        match &self.dense {
            None => symbol < self.n,
            Some(dense) => dense.get(symbol).is_some_and(|&p| p > 0),
        }
    }

    fn position(&self, symbol: usize) -> Result<usize> {
        match &self.dense {
            None if symbol < self.n => Ok(symbol + 1),
            Some(dense) => match dense.get(symbol) {
                Some(&p) if p > 0 => Ok(p as usize),
                _ => Err(Error::UnknownSymbol(symbol)),
            },
            None => Err(Error::UnknownSymbol(symbol)),
        }
    }

    /// Codeword of `symbol` (0-based alphabet index).
    #[inline]
    pub fn encode_symbol(&self, symbol: usize) -> Result<Codeword> {
        let c = self.position(symbol)?;
        let depth = self.depths.access(c)?;
        let offset = self.depths.rank(depth, c)?;
        self.table.codeword_of(depth, offset as u64)
    }

    /// Decodes the codeword at the front of a left-aligned 64-bit window,
    /// returning the symbol and the codeword length.
    #[inline]
    pub fn decode_symbol(&self, window: u64) -> Result<(usize, u32)> {
        let (depth, offset) = self.table.decode_prefix(window)?;
        let c = self
            .depths
            .select(depth, offset as usize)
            .map_err(|_| Error::CorruptCodeword)?;
        let symbol = match &self.sparse {
            None => c - 1,
            Some(sparse) => sparse[c - 1] as usize,
        };
        Ok((symbol, depth))
    }

    /// The depth sequence `S`, read back through the index.
    pub fn depth_sequence(&self) -> Vec<u32> {
        (1..=self.depths.len())
            .map(|i| self.depths.access(i).expect("in range"))
            .collect()
    }

    /// Codeword length per alphabet symbol (0 when absent).
    pub fn lengths(&self) -> Vec<u32> {
        let seq = self.depth_sequence();
        match &self.sparse {
            None => seq,
            Some(sparse) => {
                let mut out = vec![0u32; self.n];
                for (&s, &l) in sparse.iter().zip(&seq) {
                    out[s as usize] = l;
                }
                out
            }
        }
    }

    pub fn weighted_length(&self, d: &Distribution) -> Result<u128> {
        crate::huffman::weighted_length(&self.lengths(), d.counts())
    }

    /// Empirical zero-order entropy `H₀(S)` of the depth sequence, in bits.
    pub fn measure_depth_entropy(&self) -> f64 {
        depth_entropy(&self.depth_sequence())
    }
}

/// `Σ (n_ℓ/n) · log₂(n/n_ℓ)` over the values of `seq`.
pub fn depth_entropy(seq: &[u32]) -> f64 {
    let mut hist = std::collections::BTreeMap::<u32, u64>::new();
    for &l in seq {
        *hist.entry(l).or_default() += 1;
    }
    let n = seq.len() as f64;
    hist.values()
        .map(|&c| {
            let c = c as f64;
            c / n * (n / c).log2()
        })
        .sum()
}
