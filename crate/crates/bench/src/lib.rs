//! Workloads for the codec benchmarks.

use pfxc::distribution::{gen_dyadic_capped, gen_uniform, gen_zipf};
use pfxc::Distribution;
use rand::distributions::{Distribution as _, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed;

pub fn family(name: &str, n: usize) -> Distribution {
    match name {
        "dyadic" => gen_dyadic_capped(n, 40).unwrap(),
        "zipf" => gen_zipf(n, 1.0).unwrap(),
        "uniform" => gen_uniform(n).unwrap(),
        other => panic!("unknown family {other}"),
    }
}

/// `len` symbols drawn i.i.d. from `d`.
pub fn message(d: &Distribution, len: usize) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let w = WeightedIndex::new(d.counts()).unwrap();
    (0..len).map(|_| w.sample(&mut rng) as u32).collect()
}
