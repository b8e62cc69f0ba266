//! Compact prefix codes with constant-time encoding and decoding.
//!
//! Two codecs are provided on top of a shared toolkit:
//!
//! * [`AdditiveCodec`]: expected length within `ε` of optimal; the model is
//!   the sequence of codeword lengths, indexed by a wavelet tree and stored
//!   in roughly `n·H₀` bits.
//! * [`MultiplicativeCodec`]: expected length within a factor `c` of
//!   optimal; only the short codewords are stored, every other symbol is
//!   encoded arithmetically from a single base codeword.
//!
//! [`container`] binds either model to an encoded payload.

pub mod additive;
pub mod bitio;
pub mod canonical;
pub mod container;
mod dict;
pub mod distribution;
pub mod error;
pub mod huffman;
pub mod multiplicative;
pub mod ratio;
pub mod report;
pub mod restrict;
pub mod wavelet;

pub use additive::AdditiveCodec;
pub use canonical::{CanonicalTable, Codeword};
pub use distribution::Distribution;
pub use error::{Error, Result};
pub use huffman::{huffman_lengths, weighted_length, LengthAssignment};
pub use multiplicative::MultiplicativeCodec;
pub use ratio::Ratio;
pub use restrict::{redundancy_bound, restrict, restrict_optimal, RestrictionBound};
pub use wavelet::WaveletTree;
