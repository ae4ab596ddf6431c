//! Sequences of words and the definition-level check for ternary
//! permutations.
//!
//! Positions are 1-based everywhere they are reported (`v_1 .. v_{2^n-1}`);
//! storage is 0-based.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{check_dim, Word};

/// An ordered list of words of one dimension, claimed (not guaranteed) to
/// be a ternary permutation. Use [`verify`] to check the claim.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernarySequence {
    dim: u32,
    bits: Vec<u32>,
}

impl TernarySequence {
    pub fn from_words(dim: u32, words: &[Word]) -> Result<Self> {
        check_dim(dim, 1)?;
        let bits = words
            .iter()
            .map(|w| {
                if w.dim() == dim {
                    Ok(w.bits())
                } else {
                    Err(Error::DimensionMismatch {
                        left: dim,
                        right: w.dim(),
                    })
                }
            })
            .collect::<Result<_>>()?;
        Ok(TernarySequence { dim, bits })
    }

    /// Builds a sequence from decimal word values. Values must fit in `dim`
    /// bits; zeros and repeats are accepted and left for [`verify`].
    pub fn from_decimals(dim: u32, values: Vec<u32>) -> Result<Self> {
        check_dim(dim, 1)?;
        if let Some(&v) = values.iter().find(|&&v| u64::from(v) >> dim != 0) {
            return Err(Error::ValueOutOfRange {
                value: v.into(),
                dim,
            });
        }
        Ok(TernarySequence { dim, bits: values })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Decimal values in sequence order.
    pub fn decimals(&self) -> &[u32] {
        &self.bits
    }

    /// The word at 1-based `position`.
    pub fn get(&self, position: usize) -> Option<Word> {
        let bits = *self.bits.get(position.checked_sub(1)?)?;
        Some(Word::from_raw(bits, self.dim))
    }

    pub fn words(&self) -> impl ExactSizeIterator<Item = Word> + '_ {
        self.bits.iter().map(|&b| Word::from_raw(b, self.dim))
    }

    /// Required length `2^dim - 1`.
    pub fn expected_len(dim: u32) -> usize {
        (1usize << dim) - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailureKind {
    Length,
    ZeroWord,
    Duplicate,
    TripleSum,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureKind::Length => "length",
            FailureKind::ZeroWord => "zero-word",
            FailureKind::Duplicate => "duplicate",
            FailureKind::TripleSum => "triple-sum",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub kind: FailureKind,
    /// 1-based position of the violation.
    pub index: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    failure: Option<Failure>,
}

impl VerificationReport {
    pub fn valid(&self) -> bool {
        self.failure.is_none()
    }

    pub fn failure(&self) -> Option<&Failure> {
        self.failure.as_ref()
    }

    fn fail(kind: FailureKind, index: usize, detail: String) -> Self {
        VerificationReport {
            failure: Some(Failure {
                kind,
                index,
                detail,
            }),
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => f.write_str("valid"),
            Some(x) => write!(f, "{} at i={}: {}", x.kind, x.index, x.detail),
        }
    }
}

/// Checks that `seq` is a ternary permutation of the nonzero words.
///
/// Reports the first failure only, in this order: length; then zero or
/// repeated words scanning positions upward; then the triple sums
/// `v_{i-1} + v_i + v_{i+1}` at even `i` upward.
pub fn verify(seq: &TernarySequence) -> Result<VerificationReport> {
    let dim = seq.dim();
    check_dim(dim, 2)?;
    let expected = TernarySequence::expected_len(dim);
    let v = seq.decimals();
    if v.len() != expected {
        return Ok(VerificationReport::fail(
            FailureKind::Length,
            v.len().min(expected) + 1,
            format!("expected {expected} words, found {}", v.len()),
        ));
    }

    let mut seen = vec![0u64; (1usize << dim).div_ceil(64)];
    for (i, &w) in v.iter().enumerate() {
        if w == 0 {
            return Ok(VerificationReport::fail(
                FailureKind::ZeroWord,
                i + 1,
                "zero word not permitted".into(),
            ));
        }
        let (slot, bit) = ((w / 64) as usize, 1u64 << (w % 64));
        if seen[slot] & bit != 0 {
            let first = v.iter().position(|&x| x == w).unwrap_or(i) + 1;
            return Ok(VerificationReport::fail(
                FailureKind::Duplicate,
                i + 1,
                format!("word {w} already appears at position {first}"),
            ));
        }
        seen[slot] |= bit;
    }

    // 1-based even i is 0-based odd i - 1.
    for mid in (1..v.len() - 1).step_by(2) {
        let sum = v[mid - 1] ^ v[mid] ^ v[mid + 1];
        if sum != 0 {
            return Ok(VerificationReport::fail(
                FailureKind::TripleSum,
                mid + 1,
                format!("{} ^ {} ^ {} = {sum}", v[mid - 1], v[mid], v[mid + 1]),
            ));
        }
    }
    Ok(VerificationReport { failure: None })
}
