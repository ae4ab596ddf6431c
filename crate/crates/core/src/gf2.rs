//! Words of GF(2)^n stored as bitmasks.
//!
//! Bit `j` of a word holds coordinate `j`. Words print as strings of `0`
//! and `1` from the most significant bit down, so the decimal value of a
//! word is exactly its printed string read as a binary number: the word
//! printed `0000010` has decimal value 2.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported dimension. A full sequence holds 2^n - 1 words.
pub const MAX_DIM: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    bits: u32,
    dim: u32,
}

impl Word {
    pub fn new(bits: u32, dim: u32) -> Result<Self> {
        check_dim(dim, 1)?;
        if u64::from(bits) >= 1u64 << dim {
            return Err(Error::ValueOutOfRange {
                value: bits.into(),
                dim,
            });
        }
        Ok(Word { bits, dim })
    }

    /// The zero word `z_n`.
    pub fn zero(dim: u32) -> Result<Self> {
        Word::new(0, dim)
    }

    /// Callers guarantee `1 <= dim <= MAX_DIM` and `bits < 2^dim`.
    pub(crate) fn from_raw(bits: u32, dim: u32) -> Self {
        debug_assert!((1..=MAX_DIM).contains(&dim) && u64::from(bits) < 1u64 << dim);
        Word { bits, dim }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn dim(self) -> u32 {
        self.dim
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// Coordinatewise sum (XOR).
    pub fn xor(self, other: Word) -> Result<Word> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(Word::from_raw(self.bits ^ other.bits, self.dim))
    }

    /// Juxtaposition `self other`: `self` takes the high-order positions.
    pub fn concat(self, suffix: Word) -> Result<Word> {
        let dim = self.dim + suffix.dim;
        if dim > MAX_DIM {
            return Err(Error::DimensionOutOfRange {
                dim,
                min: 1,
                max: MAX_DIM,
            });
        }
        Ok(Word::from_raw((self.bits << suffix.dim) | suffix.bits, dim))
    }
}

/// Coordinatewise sum of two words of equal dimension.
pub fn word_add(a: Word, b: Word) -> Result<Word> {
    a.xor(b)
}

/// `prefix` followed by `suffix`, as one word of the combined dimension.
pub fn concat(prefix: Word, suffix: Word) -> Result<Word> {
    prefix.concat(suffix)
}

/// XOR of every nonzero word of GF(2)^dim.
///
/// Zero for `dim >= 2`: for any nonzero `u` the space splits into pairs
/// `{x, x + u}`, each summing to `u`, and there are an even number of them.
pub fn total_xor(dim: u32) -> Result<Word> {
    check_dim(dim, 1)?;
    let acc = (1..1u32 << dim).fold(0u32, |acc, w| acc ^ w);
    Ok(Word::from_raw(acc, dim))
}

pub(crate) fn check_dim(dim: u32, min: u32) -> Result<()> {
    if dim < min || dim > MAX_DIM {
        return Err(Error::DimensionOutOfRange {
            dim,
            min,
            max: MAX_DIM,
        });
    }
    Ok(())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.dim as usize)
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses an MSB-first string of `0`/`1`; the dimension is its length.
    fn from_str(s: &str) -> Result<Self> {
        let dim = s.len() as u32;
        check_dim(dim, 1)?;
        let mut bits = 0u32;
        for c in s.chars() {
            bits = (bits << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => {
                        return Err(Error::InvalidArgument(format!(
                            "{s:?} is not a string of 0 and 1"
                        )))
                    }
                };
        }
        Ok(Word::from_raw(bits, dim))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(word_add(w("01"), w("01")).unwrap(), w("00"));
        assert_eq!(word_add(w("10"), w("01")).unwrap(), w("11"));
        assert!(matches!(
            word_add(w("10"), w("010")),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn juxtaposed_symbols() {
        // 1 alpha 0 beta with alpha = 01, beta = 10.
        let word = [w("01"), w("0"), w("10")]
            .into_iter()
            .try_fold(w("1"), concat)
            .unwrap();
        assert_eq!(word.dim(), 6);
        assert_eq!(word.to_string(), "101010");
        assert_eq!(word.bits(), 0b101010);
    }

    #[test]
    fn concat_examples() {
        let z5 = Word::zero(5).unwrap();
        let a = concat(z5, w("10")).unwrap();
        assert_eq!(
            (a.to_string().as_str(), a.bits(), a.dim()),
            ("0000010", 2, 7)
        );
        assert_eq!(concat(z5, w("01")).unwrap().bits(), 1);
        let b = concat(w("1"), w("01")).unwrap();
        assert_eq!((b.to_string().as_str(), b.bits()), ("101", 5));
        let big = Word::zero(20).unwrap();
        assert!(concat(big, Word::zero(11).unwrap()).is_err());
        assert_eq!(concat(big, Word::zero(10).unwrap()).unwrap().dim(), 30);
    }

    #[test]
    fn total_xor_examples() {
        assert_eq!(total_xor(1).unwrap(), w("1"));
        assert_eq!(total_xor(2).unwrap(), w("00"));
        assert_eq!(total_xor(3).unwrap(), w("000"));
        for dim in 2..=10 {
            assert!(total_xor(dim).unwrap().is_zero(), "dim {dim}");
        }
        assert!(total_xor(0).is_err());
    }

    #[test]
    fn construction_rejects_stray_bits() {
        assert!(Word::new(4, 2).is_err());
        assert!(Word::new(3, 2).is_ok());
        assert!(Word::new(0, 31).is_err());
        assert!(Word::new(u32::MAX >> 2, 30).is_ok());
        assert!("".parse::<Word>().is_err());
        assert!("012".parse::<Word>().is_err());
    }

    #[test]
    fn group_laws_exhaustive_small() {
        for dim in 1..=5u32 {
            let all: Vec<Word> = (0..1u32 << dim)
                .map(|b| Word::new(b, dim).unwrap())
                .collect();
            let zero = Word::zero(dim).unwrap();
            for &a in &all {
                assert_eq!(a.xor(a).unwrap(), zero);
                for &b in &all {
                    assert_eq!(a.xor(b).unwrap(), b.xor(a).unwrap());
                    for &c in &all {
                        assert_eq!(
                            a.xor(b).unwrap().xor(c).unwrap(),
                            a.xor(b.xor(c).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn self_inverse_up_to_dim_8() {
        for dim in 1..=8u32 {
            for bits in 0..1u32 << dim {
                let a = Word::new(bits, dim).unwrap();
                assert!(a.xor(a).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn print_parse_round_trip() {
        for dim in 1..=10u32 {
            for bits in 0..1u32 << dim {
                let a = Word::new(bits, dim).unwrap();
                let s = a.to_string();
                assert_eq!(s.len(), dim as usize);
                assert_eq!(u32::from_str_radix(&s, 2).unwrap(), bits);
                assert_eq!(s.parse::<Word>().unwrap(), a);
            }
        }
    }
}
