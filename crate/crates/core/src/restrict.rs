//! Length-restricted codes: turns a Huffman code into one whose longest
//! codeword is at most `L`, paying at most `1/φ^e` bits per symbol, where
//! `e = L − ⌈log₂(n + ⌈log₂ n⌉ − L)⌉ − 1`.
//!
//! The construction works on the canonical tree of the Huffman lengths
//! (leaves sorted by decreasing weight within each depth, leaves left of
//! internal nodes):
//!
//! 1. every leaf at depth `>= L` is removed, `r` leaves in total;
//! 2. those leaves are rebuilt as a complete binary tree `T₂` of height
//!    `h = ⌈log₂ r⌉`;
//! 3. at depth `L − h − 1` the node `v` whose remaining subtree `T₃` is
//!    lightest is replaced by a fresh node with children `T₂` and `T₃`.
//!
//! `T₂`'s leaves land at depth `L − 1` or `L`, `T₃`'s leaves move down by one
//! and never pass `L` because every leaf left in `T₃` was shallower than `L`.

use crate::distribution::{ceil_log2, Distribution};
use crate::error::{Error, Result};
use crate::huffman::{huffman_depths, LengthAssignment};

/// The redundancy guarantee of [`restrict`] for a given `L` and `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RestrictionBound {
    pub limit: u32,
    pub symbols: usize,
    /// `L − ⌈log₂(n + ⌈log₂ n⌉ − L)⌉ − 1`
    pub exponent: u32,
    /// `1/φ^exponent`
    pub value: f64,
}

pub const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;

impl RestrictionBound {
    pub fn new(limit: u32, symbols: usize) -> Result<Self> {
        if symbols == 0 {
            return Err(Error::EmptyDistribution);
        }
        let log_n = ceil_log2(symbols as u64) as i64;
        let l = limit as i64;
        if l <= log_n {
            return Err(Error::InfeasibleLimit { limit, symbols });
        }
        let inner = symbols as i64 + log_n - l;
        if inner < 1 {
            return Err(Error::InvalidArgument(format!(
                "bound undefined: n + ceil(log n) - L = {inner} < 1"
            )));
        }
        let exponent = l - ceil_log2(inner as u64) as i64 - 1;
        debug_assert!(exponent >= 0);
        let exponent = exponent as u32;
        Ok(RestrictionBound {
            limit,
            symbols,
            exponent,
            value: GOLDEN_RATIO.powi(-(exponent as i32)),
        })
    }

    /// `⌈value · total⌉`, the permitted excess in weighted length.
    pub fn weighted_slack(&self, total: u64) -> u128 {
        (self.value * total as f64).ceil() as u128
    }
}

/// `1/φ^(L − ⌈log₂(n + ⌈log₂ n⌉ − L)⌉ − 1)`.
pub fn redundancy_bound(limit: u32, symbols: usize) -> Result<f64> {
    RestrictionBound::new(limit, symbols).map(|b| b.value)
}

/// Code lengths for `d` with every codeword at most `limit` bits.
///
/// Returns the Huffman lengths unchanged when they already fit.
pub fn restrict(d: &Distribution, limit: u32) -> Result<LengthAssignment> {
    let (symbols, weights) = d.positive();
    if symbols.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    if limit <= ceil_log2(symbols.len() as u64) {
        return Err(Error::InfeasibleLimit { limit, symbols: symbols.len() });
    }
    let depths = huffman_depths(&weights);
    let restricted = restrict_depths(&weights, &depths, limit);
    let mut lengths = vec![0u32; d.len()];
    for (&s, &l) in symbols.iter().zip(&restricted) {
        lengths[s] = l;
    }
    let la = LengthAssignment::new_unchecked(lengths);
    debug_assert!(la.satisfies_kraft());
    debug_assert!(la.max_len() <= limit);
    Ok(la)
}

/// Optimal code lengths for `d` under the cap `limit`, by package-merge.
///
/// Slower than [`restrict`] (`O(n·L)` time and space) but never worse.
pub fn restrict_optimal(d: &Distribution, limit: u32) -> Result<LengthAssignment> {
    let (symbols, weights) = d.positive();
    if symbols.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    if limit == 0 || limit < ceil_log2(symbols.len() as u64) || limit > 127 {
        return Err(Error::InfeasibleLimit { limit, symbols: symbols.len() });
    }
    let mut lengths = vec![0u32; d.len()];
    for (&s, l) in symbols.iter().zip(package_merge(&weights, limit)) {
        lengths[s] = l;
    }
    let la = LengthAssignment::new_unchecked(lengths);
    debug_assert!(la.satisfies_kraft());
    Ok(la)
}

fn package_merge(weights: &[u64], limit: u32) -> Vec<u32> {
    let m = weights.len();
    if m == 1 {
        return vec![1];
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (weights[i], i));
    let sorted: Vec<u128> = order.iter().map(|&i| weights[i] as u128).collect();

    // Each row lists item weights in increasing order; `leaf[k]` is the
    // sorted leaf index of item k, or NONE for a package of items 2j, 2j+1
    // of the row below.
    const NONE: u32 = u32::MAX;
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(limit as usize);
    let mut row_w: Vec<u128> = sorted.clone();
    rows.push((0..m as u32).collect());
    for _ in 1..limit {
        let pairs = row_w.len() / 2;
        let mut next_w = Vec::with_capacity(m + pairs);
        let mut next = Vec::with_capacity(m + pairs);
        let (mut a, mut b) = (0usize, 0usize);
        while a < m || b < pairs {
            let pw = if b < pairs { row_w[2 * b] + row_w[2 * b + 1] } else { u128::MAX };
            if a < m && sorted[a] <= pw {
                next_w.push(sorted[a]);
                next.push(a as u32);
                a += 1;
            } else {
                next_w.push(pw);
                next.push(NONE);
                b += 1;
            }
        }
        rows.push(next);
        row_w = next_w;
    }

    // Take the 2m − 2 cheapest items of the top row and push the choice down.
    let mut depth = vec![0u32; m];
    let mut take = 2 * m - 2;
    for row in rows.iter().rev() {
        let mut packages = 0;
        for &item in &row[..take] {
            if item == NONE {
                packages += 1;
            } else {
                depth[item as usize] += 1;
            }
        }
        // packages are the first ones formed, so they cover a prefix below
        take = 2 * packages;
    }
    let mut out = vec![0u32; m];
    for (k, &i) in order.iter().enumerate() {
        out[i] = depth[k];
    }
    out
}

/// Applies the restriction to an optimal depth assignment. `limit` must
/// exceed `⌈log₂ m⌉` for `m = weights.len()`.
pub(crate) fn restrict_depths(weights: &[u64], depths: &[u32], limit: u32) -> Vec<u32> {
    let max_depth = depths.iter().copied().max().unwrap_or(0);
    if max_depth <= limit {
        return depths.to_vec();
    }
    let limit = limit as usize;
    let max_depth = max_depth as usize;

    // Leaves per depth, heaviest first.
    let mut by_depth: Vec<Vec<usize>> = vec![Vec::new(); max_depth + 1];
    for (i, &d) in depths.iter().enumerate() {
        by_depth[d as usize].push(i);
    }
    for level in &mut by_depth {
        level.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    }

    // Node count per depth of the canonical tree: leaves first, then internals.
    let mut nodes = vec![0usize; max_depth + 1];
    nodes[0] = 1;
    for d in 0..max_depth {
        let internal = nodes[d] - by_depth[d].len();
        nodes[d + 1] = 2 * internal;
    }

    let removed: Vec<usize> = by_depth[limit..].iter().flatten().copied().collect();
    let r = removed.len();
    let h = ceil_log2(r as u64) as usize;
    let top = limit - h - 1;

    // Subtree weights after pruning, from depth L−1 up to `top`.
    let mut below: Vec<u128> = by_depth[limit - 1]
        .iter()
        .map(|&s| weights[s] as u128)
        .chain(std::iter::repeat_n(0, nodes[limit - 1] - by_depth[limit - 1].len()))
        .collect();
    for d in (top..limit - 1).rev() {
        let leaves = &by_depth[d];
        let mut level: Vec<u128> = leaves.iter().map(|&s| weights[s] as u128).collect();
        level.extend(below.chunks_exact(2).map(|pair| pair[0] + pair[1]));
        debug_assert_eq!(level.len(), nodes[d]);
        below = level;
    }
    let v = below
        .iter()
        .enumerate()
        .min_by_key(|&(pos, &w)| (w, pos))
        .map(|(pos, _)| pos)
        .expect("depth L-h-1 is populated");

    let mut out = depths.to_vec();

    // T₃: every surviving leaf under v moves down one level.
    let (mut lo, mut hi) = (v, v + 1);
    for level in by_depth.iter().take(limit).skip(top) {
        let leaves = level.len();
        for &s in &level[lo.min(leaves)..hi.min(leaves)] {
            out[s] += 1;
        }
        let (ilo, ihi) = (lo.max(leaves) - leaves, hi.max(leaves) - leaves);
        lo = 2 * ilo;
        hi = 2 * ihi;
    }

    // T₂: complete tree of height h, shallow slots to the heaviest leaves.
    let mut removed = removed;
    removed.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    let shallow = (1usize << h) - r;
    for (k, &s) in removed.iter().enumerate() {
        out[s] = if k < shallow { limit as u32 - 1 } else { limit as u32 };
    }
    out
}
