//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use pfxc::Distribution;
use rand::distributions::{Distribution as _, WeightedIndex};
use rand::Rng;

/// Minimum weighted length over all prefix codes with lengths at most
/// `limit`, by exhaustive search. `None` if `2^limit < n`.
///
/// Heavier symbols never get longer codewords in an optimal code, so it is
/// enough to enumerate nondecreasing length sequences against the weights
/// sorted in decreasing order.
pub fn optimal_weighted(counts: &[u64], limit: u32) -> Option<u128> {
    let mut w: Vec<u64> = counts.iter().copied().filter(|&c| c > 0).collect();
    w.sort_unstable_by(|a, b| b.cmp(a));
    let n = w.len();
    if n == 1 {
        return Some(w[0] as u128);
    }
    let limit = limit.min(n as u32 - 1);
    if (1u128 << limit) < n as u128 {
        return None;
    }
    let full = 1u128 << limit;
    let mut suffix = vec![0u128; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + w[i] as u128;
    }
    let mut best = u128::MAX;
    search(&w, &suffix, 0, 1, 0, 0, limit, full, &mut best);
    Some(best)
}

#[allow(clippy::too_many_arguments)]
fn search(
    w: &[u64],
    suffix: &[u128],
    i: usize,
    min_len: u32,
    kraft: u128,
    cost: u128,
    limit: u32,
    full: u128,
    best: &mut u128,
) {
    if i == w.len() {
        *best = (*best).min(cost);
        return;
    }
    // every remaining symbol costs at least min_len
    if cost + suffix[i] * min_len as u128 >= *best {
        return;
    }
    let remaining = (w.len() - i) as u128;
    for len in min_len..=limit {
        let unit = 1u128 << (limit - len);
        // the rest need at least one unit of the deepest level each
        if kraft + unit + (remaining - 1) > full {
            continue;
        }
        search(w, suffix, i + 1, len, kraft + unit, cost + w[i] as u128 * len as u128, limit, full, best);
    }
}

pub fn kraft_holds(lengths: &[u32]) -> bool {
    let max = lengths.iter().copied().max().unwrap_or(0);
    let used: u128 = lengths.iter().filter(|&&l| l > 0).map(|&l| 1u128 << (max - l)).sum();
    used <= 1u128 << max
}

/// Straight scans over a plain sequence.
pub struct NaiveSeq {
    seq: Vec<u32>,
    occurrences: Vec<Vec<usize>>,
}

impl NaiveSeq {
    pub fn new(seq: &[u32], sigma: u32) -> Self {
        let mut occurrences = vec![Vec::new(); sigma as usize + 1];
        for (i, &c) in seq.iter().enumerate() {
            occurrences[c as usize].push(i + 1);
        }
        NaiveSeq { seq: seq.to_vec(), occurrences }
    }

    /// Element at 1-based position `i`.
    pub fn access(&self, i: usize) -> u32 {
        self.seq[i - 1]
    }

    /// Occurrences of `c` in positions `1..=i`.
    pub fn rank(&self, c: u32, i: usize) -> usize {
        self.occurrences.get(c as usize).map_or(0, |o| o.partition_point(|&p| p <= i))
    }

    /// 1-based position of the `j`-th `c`.
    pub fn select(&self, c: u32, j: usize) -> Option<usize> {
        self.occurrences.get(c as usize)?.get(j.checked_sub(1)?).copied()
    }

    pub fn count(&self, c: u32) -> usize {
        self.occurrences.get(c as usize).map_or(0, Vec::len)
    }
}

/// `len` symbols drawn i.i.d. from `d`.
pub fn sample_message<R: Rng>(d: &Distribution, len: usize, rng: &mut R) -> Vec<u32> {
    let w = WeightedIndex::new(d.counts()).unwrap();
    (0..len).map(|_| w.sample(rng) as u32).collect()
}

/// Random counts with a mix of flat and steeply skewed shapes.
pub fn random_counts<R: Rng>(n: usize, rng: &mut R) -> Vec<u64> {
    match rng.gen_range(0..3) {
        0 => (0..n).map(|_| rng.gen_range(1..=1000)).collect(),
        1 => (0..n).map(|_| 1u64 << rng.gen_range(0..40)).collect(),
        _ => {
            let mut x = 1u64 << 50;
            (0..n)
                .map(|_| {
                    x = (x / rng.gen_range(1..=3)).max(1);
                    x
                })
                .collect()
        }
    }
}

/// Optimal lengths under a cap `limit`, by package-merge. Zero counts get 0.
pub fn package_merge(counts: &[u64], limit: u32) -> Vec<u32> {
    enum Item {
        Leaf(usize),
        Package(usize, usize),
    }
    let mut leaves: Vec<(u128, usize)> =
        counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| (c as u128, i)).collect();
    leaves.sort();
    let n = leaves.len();
    let mut lengths = vec![0u32; counts.len()];
    if n == 1 {
        lengths[leaves[0].1] = 1;
        return lengths;
    }
    assert!((1u128 << limit) >= n as u128, "infeasible limit");
    let mut lists: Vec<Vec<(u128, Item)>> = Vec::with_capacity(limit as usize);
    lists.push(leaves.iter().map(|&(w, i)| (w, Item::Leaf(i))).collect());
    for _ in 1..limit {
        let prev = lists.last().unwrap();
        let packages: Vec<(u128, Item)> =
            (0..prev.len() / 2).map(|k| (prev[2 * k].0 + prev[2 * k + 1].0, Item::Package(2 * k, 2 * k + 1))).collect();
        let mut merged = Vec::with_capacity(n + packages.len());
        let (mut a, mut b) = (leaves.iter().peekable(), packages.into_iter().peekable());
        loop {
            let take_leaf = match (a.peek(), b.peek()) {
                (Some(l), Some(p)) => l.0 <= p.0,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if take_leaf {
                let &(w, i) = a.next().unwrap();
                merged.push((w, Item::Leaf(i)));
            } else {
                merged.push(b.next().unwrap());
            }
        }
        lists.push(merged);
    }
    let mut marks = vec![false; lists.last().unwrap().len()];
    for m in marks.iter_mut().take(2 * n - 2) {
        *m = true;
    }
    for level in (0..lists.len()).rev() {
        let mut below = if level > 0 { vec![false; lists[level - 1].len()] } else { Vec::new() };
        for (item, &m) in lists[level].iter().zip(&marks) {
            if !m {
                continue;
            }
            match item.1 {
                Item::Leaf(i) => lengths[i] += 1,
                Item::Package(x, y) => {
                    below[x] = true;
                    below[y] = true;
                }
            }
        }
        marks = below;
    }
    lengths
}
