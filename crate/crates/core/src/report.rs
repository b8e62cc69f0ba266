//! Per-run measurements shared by the command line tool and the benches.

use std::time::Instant;

use serde::Serialize;

use crate::container::{Codec, Mode};
use crate::distribution::Distribution;
use crate::error::Result;
use crate::huffman::huffman_lengths;
use crate::ratio::Ratio;

/// Weighted lengths are exact `Σ count·length` sums over the build
/// distribution.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub mode: &'static str,
    pub param: String,
    pub n: usize,
    pub support: usize,
    pub total: u64,
    pub entropy_bits: f64,
    pub optimal_weighted: u128,
    pub codec_weighted: u128,
    /// Additive: permitted excess `⌈ε·total⌉`. Multiplicative: `⌊c·optimal⌋`.
    pub bound: u128,
    pub within_bound: bool,
    pub max_codeword_len: u32,
    pub model_bits: u64,
    pub payload_bits: u64,
    pub message_len: usize,
    pub encode_ns_per_symbol: f64,
    pub decode_ns_per_symbol: f64,
}

pub fn bound_for(mode: Mode, param: Ratio, optimal: u128, total: u64) -> u128 {
    match mode {
        Mode::Additive => param.mul_ceil(total as u128),
        Mode::Multiplicative => optimal * param.num() as u128 / param.den() as u128,
    }
}

pub fn within_bound(mode: Mode, optimal: u128, codec: u128, bound: u128) -> bool {
    match mode {
        Mode::Additive => codec <= optimal + bound,
        Mode::Multiplicative => codec <= bound,
    }
}

impl RunReport {
    /// Checks `codec` against its guarantee on `d` and times a full encode
    /// and decode of `message`. Also returns the encoded payload.
    pub fn measure(codec: &Codec, d: &Distribution, message: &[u32]) -> Result<(Self, Vec<u8>)> {
        let mode = codec.mode();
        let param = codec.param();
        let optimal = huffman_lengths(d).weighted_length(d)?;
        let weighted = codec.weighted_length(d)?;
        let bound = bound_for(mode, param, optimal, d.total());

        let start = Instant::now();
        let (payload, payload_bits) = codec.encode_all(message)?;
        let encode = start.elapsed();
        let start = Instant::now();
        let decoded = codec.decode_all(&payload, message.len() as u64)?;
        let decode = start.elapsed();
        debug_assert_eq!(decoded, message);
        let per = |ns: u128| if message.is_empty() { 0.0 } else { ns as f64 / message.len() as f64 };

        let report = RunReport {
            mode: mode.name(),
            param: param.to_string(),
            n: d.len(),
            support: d.support(),
            total: d.total(),
            entropy_bits: d.entropy_bits(),
            optimal_weighted: optimal,
            codec_weighted: weighted,
            bound,
            within_bound: within_bound(mode, optimal, weighted, bound),
            max_codeword_len: codec.max_codeword_len(),
            model_bits: codec.serialize_model().len() as u64 * 8,
            payload_bits,
            message_len: message.len(),
            encode_ns_per_symbol: per(encode.as_nanos()),
            decode_ns_per_symbol: per(decode.as_nanos()),
        };
        Ok((report, payload))
    }
}

/// Builds a codec for `d` and measures it on `message`.
pub fn run_point(d: &Distribution, mode: Mode, param: Ratio, message: &[u32]) -> Result<RunReport> {
    let codec = Codec::build(d, mode, param)?;
    RunReport::measure(&codec, d, message).map(|(r, _)| r)
}
