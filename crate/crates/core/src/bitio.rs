//! MSB-first bit streams.

use std::io::{self, Write};

use crate::error::{Error, Result};

#[derive(Debug, Default, Clone)]
pub struct BitWriter {
    buf: Vec<u8>,
    acc: u64,
    pending: u32,
    bits: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bytes: usize) -> Self {
        BitWriter { buf: Vec::with_capacity(bytes), ..Self::default() }
    }

    /// Appends the low `len` bits of `value`, most significant first.
    #[inline]
    pub fn put(&mut self, value: u64, len: u32) -> Result<()> {
        if len > 64 || (len < 64 && value >> len != 0) {
            return Err(Error::ValueTooWide { value, len });
        }
        if len == 0 {
            return Ok(());
        }
        self.bits += len as u64;
        let free = 64 - self.pending;
        if len <= free {
            self.acc |= if len == 64 { value } else { value << (free - len) };
            self.pending += len;
        } else {
            let spill = len - free;
            self.acc |= value >> spill;
            self.pending = 64;
            self.drain();
            self.acc = value << (64 - spill);
            self.pending = spill;
        }
        if self.pending == 64 {
            self.drain();
        }
        Ok(())
    }

    fn drain(&mut self) {
        let bytes = self.pending as usize / 8;
        self.buf.extend_from_slice(&self.acc.to_be_bytes()[..bytes]);
        self.acc = if bytes == 8 { 0 } else { self.acc << (8 * bytes) };
        self.pending -= 8 * bytes as u32;
    }

    /// Bits written so far, excluding padding.
    pub fn bit_len(&self) -> u64 {
        self.bits
    }

    /// Flushes, zero-padding the final partial byte.
    pub fn finish(mut self) -> Vec<u8> {
        self.drain();
        if self.pending > 0 {
            self.buf.push((self.acc >> 56) as u8);
        }
        self.buf
    }

    pub fn write_to<W: Write>(self, out: &mut W) -> io::Result<u64> {
        let bits = self.bits;
        out.write_all(&self.finish())?;
        Ok(bits)
    }
}

/// Reader with fixed-width lookahead; bits past the end read as zero.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    data: &'a [u8],
    len_bits: u64,
    cursor: u64,
}

impl<'a> BitReader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        BitReader { data, len_bits: data.len() as u64 * 8, cursor: 0 }
    }

    pub fn position(&self) -> u64 {
        self.cursor
    }

    pub fn remaining(&self) -> u64 {
        self.len_bits - self.cursor
    }

    /// The next 64 bits, left-aligned, zero-padded past the end.
    #[inline]
    pub fn peek_window(&self) -> u64 {
        let byte = (self.cursor / 8) as usize;
        let shift = (self.cursor % 8) as u32;
        let chunk = if byte + 16 <= self.data.len() {
            u128::from_be_bytes(self.data[byte..byte + 16].try_into().unwrap())
        } else {
            let mut tmp = [0u8; 16];
            if byte < self.data.len() {
                let tail = &self.data[byte..];
                tmp[..tail.len()].copy_from_slice(tail);
            }
            u128::from_be_bytes(tmp)
        };
        ((chunk << shift) >> 64) as u64
    }

    /// The next `k <= 64` bits, right-aligned.
    #[inline]
    pub fn peek(&self, k: u32) -> u64 {
        assert!(k <= 64, "peek width {k} exceeds 64");
        if k == 0 {
            0
        } else {
            self.peek_window() >> (64 - k)
        }
    }

    #[inline]
    pub fn consume(&mut self, k: u32) -> Result<()> {
        if self.cursor + k as u64 > self.len_bits {
            return Err(Error::Truncated);
        }
        self.cursor += k as u64;
        Ok(())
    }

    pub fn read(&mut self, k: u32) -> Result<u64> {
        let v = self.peek(k);
        self.consume(k)?;
        Ok(v)
    }
}
