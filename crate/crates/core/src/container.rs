//! The `PFXC` file format.
//!
//! ```text
//! offset size  field
//!      0    4  magic "PFXC"
//!      4    1  version (1)
//!      5    1  mode (0 additive, 1 multiplicative)
//!      6    4  n, alphabet size
//!     10    4  parameter numerator   (ε or c)
//!     14    4  parameter denominator
//!     18    8  m, number of encoded symbols
//!     26    4  model length in bytes
//!     30    …  model, then payload (m codewords, MSB first, zero-padded)
//! ```
//!
//! All integers are little-endian.
//!
//! Additive model: `K = L` (1 byte), `K` inner code lengths (1 byte per
//! depth value `1..=K`, 0 when unused), a flags byte (bit 0: presence
//! bitmap follows), the optional `⌈n/8⌉`-byte presence bitmap (MSB first),
//! then the depth sequence coded with its own canonical Huffman code.
//!
//! Multiplicative model: `L` (1 byte), `α_f` (8 bytes), fallback flag
//! (1 byte), `|F|` (4 bytes), then per dictionary symbol its index in
//! `⌈log₂ n⌉` bits and its codeword length in 8 bits, MSB first.

use crate::additive::{plan_limit, AdditiveCodec};
use crate::bitio::{BitReader, BitWriter};
use crate::canonical::{CanonicalTable, Codeword};
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::huffman::huffman_lengths;
use crate::multiplicative::{plan, MultiplicativeCodec};
use crate::ratio::Ratio;

pub const MAGIC: [u8; 4] = *b"PFXC";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Additive,
    Multiplicative,
}

impl Mode {
    fn to_byte(self) -> u8 {
        match self {
            Mode::Additive => 0,
            Mode::Multiplicative => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Additive => "additive",
            Mode::Multiplicative => "multiplicative",
        }
    }
}

/// How input bytes map to symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alphabet {
    /// One symbol per byte, n = 256.
    Byte,
    /// One symbol per little-endian byte pair, n = 65536.
    U16,
}

impl Alphabet {
    pub fn size(self) -> usize {
        match self {
            Alphabet::Byte => 256,
            Alphabet::U16 => 65536,
        }
    }

    pub fn symbols(self, input: &[u8]) -> Result<Vec<u32>> {
        match self {
            Alphabet::Byte => Ok(input.iter().map(|&b| b as u32).collect()),
            Alphabet::U16 => {
                if !input.len().is_multiple_of(2) {
                    return Err(Error::InvalidArgument(
                        "u16 alphabet needs an even number of input bytes".into(),
                    ));
                }
                Ok(input
                    .chunks_exact(2)
                    .map(|p| u16::from_le_bytes([p[0], p[1]]) as u32)
                    .collect())
            }
        }
    }

    fn from_size(n: u32) -> Result<Self> {
        match n {
            256 => Ok(Alphabet::Byte),
            65536 => Ok(Alphabet::U16),
            _ => Err(Error::CorruptModel(format!("no byte mapping for alphabet size {n}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Header {
    pub mode: Mode,
    pub n: u32,
    pub param: Ratio,
    pub symbols: u64,
    pub model_len: u32,
}

impl Header {
    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[0..4].copy_from_slice(&MAGIC);
        out[4] = VERSION;
        out[5] = self.mode.to_byte();
        out[6..10].copy_from_slice(&self.n.to_le_bytes());
        out[10..14].copy_from_slice(&self.param.num().to_le_bytes());
        out[14..18].copy_from_slice(&self.param.den().to_le_bytes());
        out[18..26].copy_from_slice(&self.symbols.to_le_bytes());
        out[26..30].copy_from_slice(&self.model_len.to_le_bytes());
        out
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 4 || bytes[0..4] != MAGIC {
            return Err(Error::BadMagic);
        }
        if bytes.len() < HEADER_LEN {
            return Err(Error::Truncated);
        }
        if bytes[4] != VERSION {
            return Err(Error::BadVersion(bytes[4]));
        }
        let mode = match bytes[5] {
            0 => Mode::Additive,
            1 => Mode::Multiplicative,
            other => return Err(Error::CorruptModel(format!("unknown mode {other}"))),
        };
        let u32_at = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().unwrap());
        let den = u32_at(14);
        if den == 0 {
            return Err(Error::CorruptModel("zero parameter denominator".into()));
        }
        Ok(Header {
            mode,
            n: u32_at(6),
            param: Ratio::new(u32_at(10), den)?,
            symbols: u64::from_le_bytes(bytes[18..26].try_into().unwrap()),
            model_len: u32_at(26),
        })
    }
}

/// Either codec behind one interface.
#[derive(Debug, Clone)]
pub enum Codec {
    Additive(AdditiveCodec),
    Multiplicative(MultiplicativeCodec),
}

impl Codec {
    pub fn build(d: &Distribution, mode: Mode, param: Ratio) -> Result<Self> {
        Ok(match mode {
            Mode::Additive => Codec::Additive(AdditiveCodec::build(d, param)?),
            Mode::Multiplicative => Codec::Multiplicative(MultiplicativeCodec::build(d, param)?),
        })
    }

    pub fn mode(&self) -> Mode {
        match self {
            Codec::Additive(_) => Mode::Additive,
            Codec::Multiplicative(_) => Mode::Multiplicative,
        }
    }

    pub fn param(&self) -> Ratio {
        match self {
            Codec::Additive(c) => c.epsilon(),
            Codec::Multiplicative(c) => c.factor(),
        }
    }

    pub fn alphabet_size(&self) -> usize {
        match self {
            Codec::Additive(c) => c.alphabet_size(),
            Codec::Multiplicative(c) => c.alphabet_size(),
        }
    }

    #[inline]
    pub fn encode_symbol(&self, symbol: usize) -> Result<Codeword> {
        match self {
            Codec::Additive(c) => c.encode_symbol(symbol),
            Codec::Multiplicative(c) => c.encode_symbol(symbol),
        }
    }

    #[inline]
    pub fn decode_symbol(&self, window: u64) -> Result<(usize, u32)> {
        match self {
            Codec::Additive(c) => c.decode_symbol(window),
            Codec::Multiplicative(c) => c.decode_symbol(window),
        }
    }

    pub fn weighted_length(&self, d: &Distribution) -> Result<u128> {
        match self {
            Codec::Additive(c) => c.weighted_length(d),
            Codec::Multiplicative(c) => c.weighted_length(d),
        }
    }

    pub fn max_codeword_len(&self) -> u32 {
        match self {
            Codec::Additive(c) => c.max_codeword_len(),
            Codec::Multiplicative(c) => {
                if c.is_fallback() {
                    c.table().max_len()
                } else {
                    c.table().max_len().max(c.extended_len())
                }
            }
        }
    }

    pub fn serialize_model(&self) -> Vec<u8> {
        match self {
            Codec::Additive(c) => serialize_additive_model(c),
            Codec::Multiplicative(c) => serialize_multiplicative_model(c),
        }
    }

    pub fn deserialize_model(mode: Mode, n: usize, param: Ratio, model: &[u8]) -> Result<Self> {
        Ok(match mode {
            Mode::Additive => Codec::Additive(deserialize_additive_model(model, n, param)?),
            Mode::Multiplicative => {
                Codec::Multiplicative(deserialize_multiplicative_model(model, n, param)?)
            }
        })
    }

    /// Encodes `symbols` back to back; returns the bytes and the exact bit count.
    pub fn encode_all(&self, symbols: &[u32]) -> Result<(Vec<u8>, u64)> {
        let mut w = BitWriter::with_capacity(symbols.len());
        for &s in symbols {
            let cw = self.encode_symbol(s as usize)?;
            w.put(cw.bits, cw.len)?;
        }
        let bits = w.bit_len();
        Ok((w.finish(), bits))
    }

    pub fn decode_all(&self, payload: &[u8], count: u64) -> Result<Vec<u32>> {
        let mut r = BitReader::new(payload);
        let mut out = Vec::with_capacity(count.min(1 << 24) as usize);
        for _ in 0..count {
            let (symbol, len) = self.decode_symbol(r.peek_window())?;
            r.consume(len)?;
            out.push(symbol as u32);
        }
        Ok(out)
    }
}

pub fn serialize_additive_model(codec: &AdditiveCodec) -> Vec<u8> {
    let seq = codec.depth_sequence();
    let k = codec.limit() as usize;
    let mut hist = vec![0u64; k];
    for &l in &seq {
        hist[l as usize - 1] += 1;
    }
    let inner = huffman_lengths(&Distribution::from_counts(hist).expect("S is nonempty"));
    let table = CanonicalTable::build(&inner).expect("Huffman lengths are valid");
    let codes = table.assign(inner.lengths());

    let mut out = Vec::with_capacity(k + 2);
    out.push(k as u8);
    out.extend(inner.lengths().iter().map(|&l| l as u8));
    let sparse = !codec.is_dense();
    out.push(sparse as u8);
    if sparse {
        let mut w = BitWriter::with_capacity(codec.alphabet_size() / 8 + 1);
        for s in 0..codec.alphabet_size() {
            w.put(codec.is_present(s) as u64, 1).expect("one bit");
        }
        out.extend(w.finish());
    }
    let mut w = BitWriter::with_capacity(seq.len() / 4);
    for &l in &seq {
        let cw = codes[l as usize - 1].expect("every depth value in S has a code");
        w.put(cw.bits, cw.len).expect("codeword fits");
    }
    out.extend(w.finish());
    out
}

pub fn deserialize_additive_model(model: &[u8], n: usize, epsilon: Ratio) -> Result<AdditiveCodec> {
    let corrupt = |m: &str| Error::CorruptModel(m.to_string());
    let (&k, rest) = model.split_first().ok_or(Error::Truncated)?;
    let k = k as usize;
    if rest.len() < k + 1 {
        return Err(Error::Truncated);
    }
    let inner_lengths: Vec<u32> = rest[..k].iter().map(|&b| b as u32).collect();
    let flags = rest[k];
    let mut rest = &rest[k + 1..];
    if flags > 1 {
        return Err(corrupt("unknown flags"));
    }
    let present: Vec<bool> = if flags & 1 == 1 {
        let bytes = n.div_ceil(8);
        if rest.len() < bytes {
            return Err(Error::Truncated);
        }
        let mut r = BitReader::new(&rest[..bytes]);
        let bits = (0..n).map(|_| r.read(1).map(|b| b == 1)).collect::<Result<Vec<_>>>()?;
        rest = &rest[bytes..];
        bits
    } else {
        vec![true; n]
    };
    let coded = present.iter().filter(|&&p| p).count();
    if coded == 0 {
        return Err(corrupt("no coded symbols"));
    }
    let limit = plan_limit(coded, epsilon)?;
    if limit as usize != k {
        return Err(corrupt("length limit does not match epsilon"));
    }

    let inner = crate::huffman::LengthAssignment::new(inner_lengths)
        .map_err(|_| corrupt("invalid inner code lengths"))?;
    let table = CanonicalTable::build(&inner).map_err(|_| corrupt("invalid inner code"))?;
    let mut by_len: Vec<Vec<u32>> = vec![Vec::new(); table.max_len() as usize + 1];
    for (value, &l) in inner.lengths().iter().enumerate() {
        if l > 0 {
            by_len[l as usize].push(value as u32 + 1);
        }
    }
    let mut r = BitReader::new(rest);
    let mut seq = Vec::with_capacity(coded);
    for _ in 0..coded {
        let (len, offset) = table.decode_prefix(r.peek_window())?;
        r.consume(len)?;
        seq.push(by_len[len as usize][offset as usize - 1]);
    }
    AdditiveCodec::assemble(n, epsilon, limit, &present, &seq)
}

pub fn serialize_multiplicative_model(codec: &MultiplicativeCodec) -> Vec<u8> {
    let mut out = Vec::with_capacity(14 + codec.dictionary_len() * 4);
    out.push(codec.limit() as u8);
    out.extend(codec.alpha_f().to_le_bytes());
    out.push(codec.is_fallback() as u8);
    out.extend((codec.dictionary_len() as u32).to_le_bytes());
    let index_bits = codec.index_bits();
    let mut w = BitWriter::with_capacity(codec.dictionary_len() * 3);
    for &(s, l) in codec.entries() {
        w.put(s as u64, index_bits).expect("index fits");
        w.put(l as u64, 8).expect("length fits");
    }
    out.extend(w.finish());
    out
}

pub fn deserialize_multiplicative_model(
    model: &[u8],
    n: usize,
    c: Ratio,
) -> Result<MultiplicativeCodec> {
    let corrupt = |m: &str| Error::CorruptModel(m.to_string());
    if model.len() < 14 {
        return Err(Error::Truncated);
    }
    let limit = model[0] as u32;
    let alpha_f = u64::from_le_bytes(model[1..9].try_into().unwrap());
    let fallback = match model[9] {
        0 => false,
        1 => true,
        _ => return Err(corrupt("bad fallback flag")),
    };
    let count = u32::from_le_bytes(model[10..14].try_into().unwrap()) as usize;
    let (planned, short_limit) = plan(n, c)?;
    if planned != limit {
        return Err(corrupt("length limit does not match c"));
    }
    if count > n {
        return Err(corrupt("dictionary larger than alphabet"));
    }
    let index_bits = crate::distribution::ceil_log2(n as u64);
    let body = &model[14..];
    if (body.len() as u64) * 8 < count as u64 * (index_bits as u64 + 8) {
        return Err(Error::Truncated);
    }
    let mut r = BitReader::new(body);
    let mut entries = Vec::with_capacity(count);
    for _ in 0..count {
        let s = r.read(index_bits)? as u32;
        let l = r.read(8)? as u32;
        entries.push((s, l));
    }
    let codec = MultiplicativeCodec::assemble(n, c, limit, short_limit, entries, fallback)?;
    if codec.alpha_f() != alpha_f {
        return Err(corrupt("first new codeword does not match dictionary"));
    }
    Ok(codec)
}

/// Builds a codec for `symbols` over an alphabet of size `n` and writes a container.
pub fn compress_symbols(symbols: &[u32], n: usize, mode: Mode, param: Ratio) -> Result<(Codec, Vec<u8>)> {
    if symbols.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    let d = Distribution::from_symbols(symbols.iter().map(|&s| s as usize), n)?;
    let codec = Codec::build(&d, mode, param)?;
    let bytes = write_container(&codec, symbols)?;
    Ok((codec, bytes))
}

pub fn write_container(codec: &Codec, symbols: &[u32]) -> Result<Vec<u8>> {
    let model = codec.serialize_model();
    let (payload, _) = codec.encode_all(symbols)?;
    let header = Header {
        mode: codec.mode(),
        n: u32::try_from(codec.alphabet_size())
            .map_err(|_| Error::InvalidArgument("alphabet too large".into()))?,
        param: codec.param(),
        symbols: symbols.len() as u64,
        model_len: model.len() as u32,
    };
    let mut out = Vec::with_capacity(HEADER_LEN + model.len() + payload.len());
    out.extend(header.to_bytes());
    out.extend(model);
    out.extend(payload);
    Ok(out)
}

/// Parses a container into its header, codec and decoded symbols.
pub fn decompress_symbols(container: &[u8]) -> Result<(Header, Codec, Vec<u32>)> {
    let header = Header::parse(container)?;
    let body = &container[HEADER_LEN..];
    let model_len = header.model_len as usize;
    if body.len() < model_len {
        return Err(Error::Truncated);
    }
    let codec = Codec::deserialize_model(header.mode, header.n as usize, header.param, &body[..model_len])?;
    let symbols = codec.decode_all(&body[model_len..], header.symbols)?;
    Ok((header, codec, symbols))
}

pub fn compress_stream(input: &[u8], mode: Mode, param: Ratio, alphabet: Alphabet) -> Result<Vec<u8>> {
    let symbols = alphabet.symbols(input)?;
    compress_symbols(&symbols, alphabet.size(), mode, param).map(|(_, bytes)| bytes)
}

pub fn decompress_stream(container: &[u8]) -> Result<Vec<u8>> {
    let (header, _, symbols) = decompress_symbols(container)?;
    Ok(match Alphabet::from_size(header.n)? {
        Alphabet::Byte => symbols.iter().map(|&s| s as u8).collect(),
        Alphabet::U16 => symbols.iter().flat_map(|&s| (s as u16).to_le_bytes()).collect(),
    })
}
