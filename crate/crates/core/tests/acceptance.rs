//! End-to-end acceptance checks. Runs as a plain binary so that the summary
//! lines are always printed; exits nonzero if any check fails.

mod common;

use std::time::{Duration, Instant};

use pfxc::additive::plan_limit;
use pfxc::container::{compress_stream, decompress_stream, Alphabet, Codec, Mode};
use pfxc::distribution::{ceil_log2, gen_dyadic_capped, gen_uniform, gen_zipf};
use pfxc::multiplicative::plan;
use pfxc::{
    huffman_lengths, restrict, AdditiveCodec, Distribution, MultiplicativeCodec, Ratio,
    RestrictionBound, WaveletTree,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{optimal_weighted, random_counts, sample_message, NaiveSeq};

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

const FAMILIES: [&str; 3] = ["dyadic", "zipf", "uniform"];
const SIZES: [u32; 3] = [8, 12, 16];

fn r(num: u32, den: u32) -> Ratio {
    Ratio::new(num, den).unwrap()
}

fn epsilons() -> [Ratio; 3] {
    [r(31, 64), r(1, 10), r(1, 100)]
}

fn factors() -> [Ratio; 3] {
    [r(3, 2), r(2, 1), r(3, 1)]
}

fn family(name: &str, n: usize) -> Distribution {
    match name {
        // exact dyadic counts need n−1 bits, so deep staircases are capped
        "dyadic" => gen_dyadic_capped(n, 62).unwrap(),
        "zipf" => gen_zipf(n, 1.0).unwrap(),
        "uniform" => gen_uniform(n).unwrap(),
        _ => unreachable!(),
    }
}

fn huffman_weighted(d: &Distribution) -> u128 {
    huffman_lengths(d).weighted_length(d).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn additive_bound() -> Outcome {
    let start = Instant::now();
    let mut cells = 0;
    for fam in FAMILIES {
        for log_n in SIZES {
            let d = family(fam, 1 << log_n);
            let opt = huffman_weighted(&d);
            for eps in epsilons() {
                let codec = AdditiveCodec::build(&d, eps).map_err(|e| format!("{fam} 2^{log_n} {eps}: {e}"))?;
                let got = codec.weighted_length(&d).unwrap();
                let slack = eps.mul_ceil(d.total() as u128);
                ensure(got >= opt && got - opt <= slack, || {
                    format!("{fam} n=2^{log_n} eps={eps}: {got} - {opt} > {slack}")
                })?;
                cells += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("sweep took {elapsed:?}"))?;
    Ok(format!("{cells} cells in {:.2}s", elapsed.as_secs_f64()))
}

fn multiplicative_bound() -> Outcome {
    let mut cells = 0;
    let mut fallbacks = 0;
    for fam in FAMILIES {
        for log_n in SIZES {
            let d = family(fam, 1 << log_n);
            let opt = huffman_weighted(&d);
            for c in factors() {
                let codec = MultiplicativeCodec::build(&d, c).map_err(|e| format!("{fam} 2^{log_n} {c}: {e}"))?;
                let got = codec.weighted_length(&d).unwrap();
                ensure(got * c.den() as u128 <= c.num() as u128 * opt, || {
                    format!("{fam} n=2^{log_n} c={c}: {got} > {c} * {opt}")
                })?;
                fallbacks += codec.is_fallback() as usize;
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} cells, {fallbacks} in fallback"))
}

fn length_caps() -> Outcome {
    let mut symbols = 0usize;
    for fam in FAMILIES {
        for log_n in SIZES {
            let n = 1usize << log_n;
            let d = family(fam, n);
            for eps in epsilons() {
                let codec = AdditiveCodec::build(&d, eps).unwrap();
                let two_over_eps = Ratio::new(2 * eps.den(), eps.num()).unwrap();
                let cap = log_n + ceil_log2(two_over_eps.mul_ceil(1) as u64);
                for s in 0..n {
                    let len = codec.encode_symbol(s).unwrap().len;
                    ensure(len <= cap, || format!("additive {fam} 2^{log_n} {eps}: symbol {s} has {len} > {cap}"))?;
                }
                symbols += n;
            }
            for c in factors() {
                let codec = MultiplicativeCodec::build(&d, c).unwrap();
                let l = codec.limit();
                let short = l * c.den() / c.num() + 2;
                ensure(codec.short_limit() == short, || format!("short limit {} != {short}", codec.short_limit()))?;
                for s in 0..n {
                    let len = codec.encode_symbol(s).unwrap().len;
                    ensure(len <= short || len == l + 1, || {
                        format!("multiplicative {fam} 2^{log_n} {c}: symbol {s} has length {len} (short {short}, L {l})")
                    })?;
                }
                symbols += n;
            }
        }
    }
    Ok(format!("{symbols} codewords checked"))
}

fn sublinear_model() -> Outcome {
    let c = r(2, 1);
    let mut summary = Vec::new();
    for fam in ["dyadic", "zipf"] {
        let mut k = 0f64;
        let mut prev_ratio = f64::INFINITY;
        for log_n in 10..=16u32 {
            let n = 1usize << log_n;
            let codec = Codec::build(&family(fam, n), Mode::Multiplicative, c).unwrap();
            let bits = codec.serialize_model().len() as f64 * 8.0;
            let scale = (n as f64).sqrt() * log_n as f64;
            if log_n == 10 {
                k = bits / scale;
            }
            ensure(bits <= k * scale + 1e-9, || format!("{fam} n=2^{log_n}: {bits} bits > K·√n·log n = {}", k * scale))?;
            let ratio = bits / n as f64;
            ensure(ratio < prev_ratio, || format!("{fam} n=2^{log_n}: bits/n {ratio} not decreasing"))?;
            prev_ratio = ratio;
        }
        summary.push(format!("{fam} K={k:.3}"));
    }
    Ok(summary.join(", "))
}

fn additive_model_size() -> Outcome {
    let mut worst_h0 = 0f64;
    for fam in FAMILIES {
        for log_n in SIZES {
            let n = 1usize << log_n;
            let d = family(fam, n);
            for eps in epsilons() {
                let codec = AdditiveCodec::build(&d, eps).unwrap();
                let h0 = codec.measure_depth_entropy();
                let l = codec.limit() as f64;
                let bits = Codec::Additive(codec).serialize_model().len() as f64 * 8.0;
                let cap = n as f64 * (h0 + 1.0) + 8.0 * (l + 2.0) + n as f64 + 128.0;
                ensure(bits <= cap, || format!("{fam} 2^{log_n} {eps}: model {bits} bits > {cap}"))?;
                let two_over_eps = Ratio::new(2 * eps.den(), eps.num()).unwrap();
                let h0_cap = ((ceil_log2(two_over_eps.mul_ceil(1) as u64) + 1) as f64).log2() + 4.0;
                ensure(h0 <= h0_cap, || format!("{fam} 2^{log_n} {eps}: H0(S) {h0} > {h0_cap}"))?;
                worst_h0 = worst_h0.max(h0);
            }
        }
    }
    Ok(format!("max H0(S) = {worst_h0:.3}"))
}

fn small_example() -> Outcome {
    let c = r(3, 1);
    let (l, short) = plan(16, c).unwrap();
    ensure((l, short) == (6, 4), || format!("plan gave L={l}, short={short}"))?;
    for fam in FAMILIES {
        let d = family(fam, 16);
        let codec = MultiplicativeCodec::build(&d, c).unwrap();
        ensure(codec.extended_len() == 7, || format!("extended length {}", codec.extended_len()))?;
        for s in 0..16 {
            let cw = codec.encode_symbol(s).unwrap();
            let (back, len) = codec.decode_symbol(cw.left_aligned()).unwrap();
            ensure(back == s && len == cw.len, || format!("{fam}: symbol {s} came back as {back}"))?;
        }
    }
    Ok("L=6, short_limit=4, extended length 7".into())
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    for round in 0..20 {
        let len = rng.gen_range(1..=100_000);
        let sigma = rng.gen_range(1..=64u32);
        let seq: Vec<u32> = (0..len).map(|_| rng.gen_range(1..=sigma)).collect();
        let wt = WaveletTree::build(&seq, sigma).unwrap();
        let naive = NaiveSeq::new(&seq, sigma);
        for _ in 0..10_000 {
            let c = rng.gen_range(1..=sigma);
            match rng.gen_range(0..3) {
                0 => {
                    let i = rng.gen_range(1..=len);
                    ensure(wt.access(i).unwrap() == naive.access(i), || format!("round {round}: access({i})"))?;
                }
                1 => {
                    let i = rng.gen_range(0..=len);
                    ensure(wt.rank(c, i).unwrap() == naive.rank(c, i), || format!("round {round}: rank({c}, {i})"))?;
                }
                _ => {
                    let j = rng.gen_range(1..=naive.count(c) + 1);
                    ensure(wt.select(c, j).ok() == naive.select(c, j), || format!("round {round}: select({c}, {j})"))?;
                }
            }
        }
    }
    for instance in 0..100 {
        let n = rng.gen_range(1..=12);
        let counts = random_counts(n, &mut rng);
        let d = Distribution::from_counts(counts.clone()).unwrap();
        let got = huffman_weighted(&d);
        let want = optimal_weighted(&counts, 64).unwrap();
        ensure(got == want, || format!("instance {instance} {counts:?}: huffman {got}, optimum {want}"))?;
    }
    Ok("200000 wavelet queries, 100 Huffman instances".into())
}

fn fuzz_buffer(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    match rng.gen_range(0..4) {
        0 => (0..len).map(|_| rng.gen()).collect(),
        1 => {
            let k = rng.gen_range(1..=256u32);
            (0..len).map(|_| rng.gen_range(0..k) as u8).collect()
        }
        2 => {
            // geometric-ish skew
            (0..len).map(|_| (rng.gen::<u32>() | 1).trailing_zeros() as u8 * 7).collect()
        }
        _ => {
            let words: [&[u8]; 6] = [b"the ", b"prefix ", b"code ", b"of ", b"length ", b"\n"];
            let mut out = Vec::with_capacity(len);
            while out.len() < len {
                out.extend_from_slice(words[rng.gen_range(0..words.len())]);
            }
            out.truncate(len);
            out
        }
    }
}

fn roundtrip_fuzz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf022);
    let params = [
        (Mode::Additive, r(1, 10)),
        (Mode::Additive, r(31, 64)),
        (Mode::Multiplicative, r(3, 2)),
        (Mode::Multiplicative, r(3, 1)),
    ];
    let mut bytes = 0usize;
    for i in 0..200 {
        let len = if i == 0 { 1 << 20 } else { 2f64.powf(rng.gen_range(0.0..=20.0)).round() as usize };
        let buf = fuzz_buffer(&mut rng, len);
        for (mode, param) in params {
            let packed = compress_stream(&buf, mode, param, Alphabet::Byte)
                .map_err(|e| format!("buffer {i} ({len} B) {mode:?} {param}: {e}"))?;
            let back = decompress_stream(&packed).map_err(|e| format!("buffer {i} {mode:?} {param}: {e}"))?;
            ensure(back == buf, || format!("buffer {i} ({len} B) {mode:?} {param}: mismatch"))?;
        }
        bytes += len;
    }
    Ok(format!("200 buffers, {bytes} bytes, 4 parameter settings"))
}

fn restriction_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a2b);
    let mut restricted = 0;
    let mut pairs = 0;
    while pairs < 100 {
        let n = rng.gen_range(2..=2000);
        let d = Distribution::from_counts(random_counts(n, &mut rng)).unwrap();
        let huff = huffman_lengths(&d);
        let lo = ceil_log2(n as u64) + 1;
        let hi = huff.max_len().max(lo);
        let limit = rng.gen_range(lo..=hi);
        let Ok(bound) = RestrictionBound::new(limit, n) else { continue };
        let got = restrict(&d, limit).unwrap();
        ensure(got.max_len() <= limit, || format!("n={n} L={limit}: max length {}", got.max_len()))?;
        let opt = huff.weighted_length(&d).unwrap();
        let w = got.weighted_length(&d).unwrap();
        let slack = bound.weighted_slack(d.total());
        ensure(w - opt <= slack, || format!("n={n} L={limit}: excess {} > {slack}", w - opt))?;
        if huff.max_len() > limit {
            restricted += 1;
        }
        pairs += 1;
    }
    Ok(format!("100 pairs, {restricted} needed restriction"))
}

fn decode_ns(codec: &Codec, payload: &[u8], count: u64) -> f64 {
    let mut best = f64::INFINITY;
    for _ in 0..5 {
        let start = Instant::now();
        let out = codec.decode_all(payload, count).unwrap();
        let t = start.elapsed().as_nanos() as f64 / count as f64;
        std::hint::black_box(out);
        best = best.min(t);
    }
    best
}

fn decode_time() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7173);
    let len = 1 << 18;
    let mut lines = Vec::new();
    let mut ok = true;
    for fam in FAMILIES {
        for (mode, param) in [(Mode::Additive, r(1, 10)), (Mode::Multiplicative, r(2, 1))] {
            let mut times = [0f64; 2];
            for (slot, log_n) in [8u32, 16].into_iter().enumerate() {
                let d = family(fam, 1 << log_n);
                let msg = sample_message(&d, len, &mut rng);
                let codec = Codec::build(&d, mode, param).unwrap();
                let (payload, _) = codec.encode_all(&msg).unwrap();
                times[slot] = decode_ns(&codec, &payload, len as u64);
            }
            let ratio = times[1] / times[0];
            ok &= ratio <= 3.0;
            lines.push(format!("{fam}/{}: {:.1} vs {:.1} ns (x{ratio:.2})", mode.name(), times[0], times[1]));
        }
    }
    let text = lines.join("; ");
    if ok {
        Ok(text)
    } else {
        Err(text)
    }
}

fn main() {
    // the additive plan is shared by several checks; fail fast if it is off
    assert_eq!(plan_limit(256, r(1, 10)).unwrap(), 8 + 5);

    let checks: [Check; 10] = [
        ("additive bound", additive_bound),
        ("multiplicative bound", multiplicative_bound),
        ("length caps", length_caps),
        ("sublinear multiplicative model", sublinear_model),
        ("additive model size", additive_model_size),
        ("n=16 c=3 example", small_example),
        ("oracle equivalence", oracle_equivalence),
        ("roundtrip fuzz", roundtrip_fuzz),
        ("restriction bound", restriction_bound),
        ("decode time independent of n", decode_time),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
