use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// A non-negative exact rational `num/den`.
///
/// Codec parameters (ε, c) are carried this way so that every bound check
/// stays in integer arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Ratio {
    num: u32,
    den: u32,
}

impl Ratio {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Ratio { num, den })
    }

    pub fn num(self) -> u32 {
        self.num
    }

    pub fn den(self) -> u32 {
        self.den
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `ceil(self * x)`.
    pub fn mul_ceil(self, x: u128) -> u128 {
        (x * self.num as u128).div_ceil(self.den as u128)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("expected a rational num/den, got {s:?}"));
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = num.parse().map_err(|_| bad())?;
        let den = den.parse().map_err(|_| bad())?;
        Ratio::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse() {
        assert_eq!("1/10".parse::<Ratio>().unwrap(), Ratio::new(1, 10).unwrap());
        assert_eq!("2".parse::<Ratio>().unwrap(), Ratio::new(2, 1).unwrap());
        assert!("1/0".parse::<Ratio>().is_err());
        assert!("0.1".parse::<Ratio>().is_err());
        assert!("a/b".parse::<Ratio>().is_err());
    }

    #[test]
    fn mul_ceil_rounds_up() {
        let r = Ratio::new(1, 3).unwrap();
        assert_eq!(r.mul_ceil(9), 3);
        assert_eq!(r.mul_ceil(10), 4);
    }
}
