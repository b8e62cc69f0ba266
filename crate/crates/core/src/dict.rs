//! Static dictionary with worst-case constant lookup (hash and displace).
//!
//! Keys are hashed into buckets of about four; each bucket then gets the
//! smallest seed that sends all of its keys to distinct free slots. A
//! lookup is two hashes and one key comparison.

use crate::canonical::Codeword;

const EMPTY: u32 = u32::MAX;
const BUCKET_SIZE: usize = 4;
const MAX_SEED: u32 = 1 << 20;

#[derive(Debug, Clone)]
pub(crate) struct StaticMap {
    global: u64,
    seeds: Vec<u32>,
    keys: Vec<u32>,
    values: Vec<Codeword>,
}

#[inline]
fn mix(key: u32, seed: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = (key as u64) ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[inline]
fn reduce(h: u64, m: usize) -> usize {
    ((h as u128 * m as u128) >> 64) as usize
}

impl StaticMap {
    /// Keys must be distinct.
    pub(crate) fn build(entries: &[(u32, Codeword)]) -> Self {
        if entries.is_empty() {
            return StaticMap { global: 0, seeds: vec![0], keys: Vec::new(), values: Vec::new() };
        }
        let n = entries.len();
        let slots = n + n / 4 + 1;
        let buckets = n.div_ceil(BUCKET_SIZE);
        let mut global = 0x5eed_u64;
        loop {
            if let Some(map) = Self::try_build(entries, global, buckets, slots) {
                return map;
            }
            global = global.wrapping_add(0x1_0000_0001);
        }
    }

    fn try_build(entries: &[(u32, Codeword)], global: u64, buckets: usize, slots: usize) -> Option<Self> {
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); buckets];
        for (i, &(k, _)) in entries.iter().enumerate() {
            members[reduce(mix(k, global), buckets)].push(i);
        }
        let mut order: Vec<usize> = (0..buckets).collect();
        order.sort_by_key(|&b| std::cmp::Reverse(members[b].len()));

        let mut seeds = vec![0u32; buckets];
        let mut keys = vec![EMPTY; slots];
        let mut values = vec![Codeword { bits: 0, len: 0 }; slots];
        let mut chosen = Vec::with_capacity(BUCKET_SIZE * 4);
        for b in order {
            if members[b].is_empty() {
                break;
            }
            let mut seed = 0u32;
            'search: loop {
                if seed >= MAX_SEED {
                    return None;
                }
                chosen.clear();
                for &i in &members[b] {
                    let slot = reduce(mix(entries[i].0, global ^ (seed as u64 + 1)), slots);
                    if keys[slot] != EMPTY || chosen.contains(&slot) {
                        seed += 1;
                        continue 'search;
                    }
                    chosen.push(slot);
                }
                break;
            }
            seeds[b] = seed;
            for (&i, &slot) in members[b].iter().zip(&chosen) {
                keys[slot] = entries[i].0;
                values[slot] = entries[i].1;
            }
        }
        Some(StaticMap { global, seeds, keys, values })
    }

    #[inline]
    pub(crate) fn get(&self, key: u32) -> Option<Codeword> {
        if self.keys.is_empty() {
            return None;
        }
        let b = reduce(mix(key, self.global), self.seeds.len());
        let seed = self.seeds[b] as u64;
        let slot = reduce(mix(key, self.global ^ (seed + 1)), self.keys.len());
        (self.keys[slot] == key).then(|| self.values[slot])
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        self.keys.iter().filter(|&&k| k != EMPTY).count()
    }
}
