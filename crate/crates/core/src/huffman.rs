//! Optimal (Huffman) code lengths, the reference every redundancy bound is
//! measured against.

use crate::distribution::Distribution;
use crate::error::{Error, Result};

/// Codeword length per symbol; `0` marks a symbol without a codeword
/// (zero count).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthAssignment {
    lengths: Vec<u32>,
    max_len: u32,
}

impl LengthAssignment {
    /// Validates the Kraft inequality `Σ 2^-ℓ <= 1` in exact arithmetic.
    pub fn new(lengths: Vec<u32>) -> Result<Self> {
        let max_len = lengths.iter().copied().max().unwrap_or(0);
        if max_len > 127 {
            return Err(Error::LengthTooLarge(max_len));
        }
        let la = LengthAssignment { lengths, max_len };
        if !la.satisfies_kraft() {
            return Err(Error::KraftViolation);
        }
        Ok(la)
    }

    pub(crate) fn new_unchecked(lengths: Vec<u32>) -> Self {
        let max_len = lengths.iter().copied().max().unwrap_or(0);
        LengthAssignment { lengths, max_len }
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn max_len(&self) -> u32 {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    /// `Σ 2^(max_len − ℓ)` over symbols with a codeword; the Kraft sum
    /// scaled by `2^max_len`.
    pub fn kraft_scaled(&self) -> u128 {
        self.lengths
            .iter()
            .filter(|&&l| l > 0)
            .map(|&l| 1u128 << (self.max_len - l))
            .sum()
    }

    pub fn satisfies_kraft(&self) -> bool {
        self.max_len == 0 || self.kraft_scaled() <= 1u128 << self.max_len
    }

    pub fn is_kraft_tight(&self) -> bool {
        self.max_len > 0 && self.kraft_scaled() == 1u128 << self.max_len
    }

    pub fn weighted_length(&self, d: &Distribution) -> Result<u128> {
        weighted_length(&self.lengths, d.counts())
    }
}

/// `Σ count_i · ℓ_i`, the expected codeword length scaled by the total.
pub fn weighted_length(lengths: &[u32], counts: &[u64]) -> Result<u128> {
    if lengths.len() != counts.len() {
        return Err(Error::SizeMismatch { left: lengths.len(), right: counts.len() });
    }
    Ok(lengths
        .iter()
        .zip(counts)
        .map(|(&l, &c)| l as u128 * c as u128)
        .sum())
}

/// Optimal code lengths over the positive-count symbols of `d`.
///
/// Ties are broken deterministically: among equal weights the smaller
/// symbol index is taken first and leaves are taken before merged nodes.
/// A single-symbol alphabet gets length 1.
pub fn huffman_lengths(d: &Distribution) -> LengthAssignment {
    let (symbols, weights) = d.positive();
    let depths = huffman_depths(&weights);
    let mut lengths = vec![0u32; d.len()];
    for (&s, &depth) in symbols.iter().zip(&depths) {
        lengths[s] = depth;
    }
    LengthAssignment::new_unchecked(lengths)
}

/// Huffman depths for `weights` (all positive), in input order.
pub(crate) fn huffman_depths(weights: &[u64]) -> Vec<u32> {
    let m = weights.len();
    if m == 0 {
        return Vec::new();
    }
    if m == 1 {
        return vec![1];
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (weights[i], i));

    // Nodes 0..m are leaves in sorted order; m.. are merged nodes in creation order.
    let mut node_weight: Vec<u128> = order.iter().map(|&i| weights[i] as u128).collect();
    node_weight.reserve(m - 1);
    let mut parent = vec![0usize; 2 * m - 1];
    let (mut next_leaf, mut next_inner) = (0usize, m);

    let take = |node_weight: &Vec<u128>, next_leaf: &mut usize, next_inner: &mut usize| {
        let inner_end = node_weight.len();
        let use_leaf = *next_leaf < m
            && (*next_inner >= inner_end || node_weight[*next_leaf] <= node_weight[*next_inner]);
        if use_leaf {
            *next_leaf += 1;
            *next_leaf - 1
        } else {
            *next_inner += 1;
            *next_inner - 1
        }
    };

    for _ in 0..m - 1 {
        let a = take(&node_weight, &mut next_leaf, &mut next_inner);
        let b = take(&node_weight, &mut next_leaf, &mut next_inner);
        let id = node_weight.len();
        node_weight.push(node_weight[a] + node_weight[b]);
        parent[a] = id;
        parent[b] = id;
    }

    let root = 2 * m - 2;
    let mut depth = vec![0u32; 2 * m - 1];
    for node in (0..root).rev() {
        depth[node] = depth[parent[node]] + 1;
    }
    let mut out = vec![0u32; m];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = depth[rank];
    }
    out
}
