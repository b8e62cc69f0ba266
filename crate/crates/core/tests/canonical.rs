use pfxc::{huffman_lengths, CanonicalTable, Codeword, Distribution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_code(rng: &mut ChaCha8Rng) -> (Vec<u32>, CanonicalTable, Vec<Option<Codeword>>) {
    let n = rng.gen_range(1..=200);
    let counts: Vec<u64> = (0..n).map(|_| if rng.gen_bool(0.1) { 0 } else { 1 << rng.gen_range(0..30) }).collect();
    let counts = if counts.iter().all(|&c| c == 0) { vec![1] } else { counts };
    let lengths = huffman_lengths(&Distribution::from_counts(counts).unwrap());
    let table = CanonicalTable::build(&lengths).unwrap();
    let codes = table.assign(lengths.lengths());
    (lengths.lengths().to_vec(), table, codes)
}

#[test]
fn codewords_are_prefix_free_and_canonical() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let (lengths, _, codes) = random_code(&mut rng);
        let present: Vec<(usize, Codeword)> = codes.iter().enumerate().filter_map(|(s, c)| c.map(|c| (s, c))).collect();
        for (s, c) in &present {
            assert_eq!(c.len, lengths[*s]);
        }
        for (i, &(_, a)) in present.iter().enumerate() {
            for &(_, b) in &present[i + 1..] {
                assert!(!a.is_prefix_of(b) && !b.is_prefix_of(a), "{a} / {b}");
            }
        }
        // same length: consecutive integers in symbol order
        for &(s, a) in &present {
            if let Some(&(_, b)) = present.iter().find(|&&(t, b)| t > s && b.len == a.len) {
                assert_eq!(b.bits, a.bits + 1);
            }
        }
    }
}

#[test]
fn decode_prefix_matches_linear_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..100 {
        let (_, table, codes) = random_code(&mut rng);
        let all: Vec<Codeword> = codes.iter().flatten().copied().collect();
        for _ in 0..500 {
            let window: u64 = rng.gen();
            let scan = all.iter().find(|c| {
                window >> (64 - c.len) == c.bits
            });
            match (table.decode_prefix(window), scan) {
                (Ok((len, offset)), Some(c)) => {
                    assert_eq!(len, c.len);
                    assert_eq!(table.codeword_of(len, offset).unwrap(), *c);
                }
                (Err(_), None) => {}
                (got, want) => panic!("window {window:064b}: {got:?} vs {want:?}"),
            }
        }
        for c in &all {
            let tail = rng.gen::<u64>() >> c.len.min(63) >> (c.len == 64) as u32;
            let (len, _) = table.decode_prefix(c.left_aligned() | tail).unwrap();
            assert_eq!(len, c.len);
        }
    }
}
