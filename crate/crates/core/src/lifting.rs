//! Lifting a ternary permutation of GF(2)^n to one of GF(2)^{n+2}.
//!
//! With `k = 2^n - 1`, every input word `v_i` appears four times in the
//! output, once with each two-bit modifier `a_i, b_i, c_i, d_i` appended, and
//! the three splice words `z_n 10`, `z_n 11`, `z_n 01` sit at positions
//! `k+1`, `2k+2` and `3k+3`. [`lift_layout`] gives the position of each of
//! the `4k + 3` output words as a table.

use crate::error::{Error, Result};
use crate::gf2::{Word, MAX_DIM};
use crate::verify::{verify, TernarySequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModifierKind {
    A,
    B,
    C,
    D,
}

impl ModifierKind {
    pub const ALL: [ModifierKind; 4] = [
        ModifierKind::A,
        ModifierKind::B,
        ModifierKind::C,
        ModifierKind::D,
    ];
}

/// Two-bit suffix appended to `v_i` for the given family at 1-based `i`.
///
/// | i mod 4 | a  | b  | c  | d  |
/// |---------|----|----|----|----|
/// | 1       | 00 | 10 | 11 | 01 |
/// | 2, 0    | 01 | 00 | 11 | 10 |
/// | 3       | 01 | 10 | 00 | 11 |
pub fn modifier(kind: ModifierKind, i: usize) -> Word {
    debug_assert!(i >= 1);
    let bits = match kind {
        ModifierKind::A if i % 4 == 1 => 0b00,
        ModifierKind::A => 0b01,
        ModifierKind::B if i % 2 == 1 => 0b10,
        ModifierKind::B => 0b00,
        ModifierKind::C if i % 4 == 3 => 0b00,
        ModifierKind::C => 0b11,
        ModifierKind::D if i % 4 == 1 => 0b01,
        ModifierKind::D if i % 4 == 3 => 0b11,
        ModifierKind::D => 0b10,
    };
    Word::from_raw(bits, 2)
}

/// For every `i` in `1..=k` the four modifiers are pairwise distinct, and
/// for every even `i` in `2..k` each family sums to `00` over `i-1, i, i+1`.
pub fn check_modifier_properties(k: usize) -> bool {
    let distinct = (1..=k).all(|i| {
        let m = ModifierKind::ALL.map(|kind| modifier(kind, i).bits());
        (0..4).all(|x| (x + 1..4).all(|y| m[x] != m[y]))
    });
    let triples = (2..k).step_by(2).all(|i| {
        ModifierKind::ALL.iter().all(|&kind| {
            modifier(kind, i - 1).bits() ^ modifier(kind, i).bits() ^ modifier(kind, i + 1).bits()
                == 0
        })
    });
    distinct && triples
}

/// The words `z_n 10`, `z_n 11`, `z_n 01`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Splice {
    Z10,
    Z11,
    Z01,
}

impl Splice {
    pub fn suffix(self) -> Word {
        let bits = match self {
            Splice::Z10 => 0b10,
            Splice::Z11 => 0b11,
            Splice::Z01 => 0b01,
        };
        Word::from_raw(bits, 2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftSource {
    /// `v_{v_index}` followed by its modifier of this kind.
    Vertex {
        v_index: usize,
        kind: ModifierKind,
    },
    Splice(Splice),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LiftLayoutEntry {
    /// 1-based output position.
    pub target_index: usize,
    pub source: LiftSource,
}

/// Output positions `1..=4k+3` and the word each one takes.
///
/// `k` must be `2^n - 1` with `n >= 3`. At `k = 3` positions `2k+4` and
/// `3k+1` coincide, so smaller `k` is rejected.
pub fn lift_layout(k: usize) -> Result<Vec<LiftLayoutEntry>> {
    if k < 7 || !(k + 1).is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "lift layout needs k = 2^n - 1 with n >= 3, got k={k}"
        )));
    }
    use LiftSource::{Splice as S, Vertex};
    use ModifierKind::*;
    let v = |v_index, kind| Vertex { v_index, kind };

    let mut sources = Vec::with_capacity(4 * k + 3);
    sources.extend((1..=k).map(|i| v(k - i + 1, A)));
    sources.push(S(Splice::Z10));
    sources.extend((k + 2..=2 * k - 1).map(|i| v(i - k - 1, B)));
    sources.extend([v(k, B), v(k - 1, B), S(Splice::Z11), v(k - 1, C), v(k, C)]);
    sources.extend((2 * k + 5..=3 * k).map(|i| v(3 * k + 3 - i, C)));
    sources.extend([v(1, C), v(2, C), S(Splice::Z01), v(2, D), v(1, D)]);
    sources.extend((3 * k + 6..=4 * k + 3).map(|i| v(i - 3 * k - 3, D)));
    debug_assert_eq!(sources.len(), 4 * k + 3);

    Ok(sources
        .into_iter()
        .enumerate()
        .map(|(i, source)| LiftLayoutEntry {
            target_index: i + 1,
            source,
        })
        .collect())
}

/// Lifts a ternary permutation of GF(2)^n (`n >= 3`) to one of GF(2)^{n+2}.
pub fn lift(seq: &TernarySequence) -> Result<TernarySequence> {
    let n = seq.dim();
    if n < 3 || n + 2 > MAX_DIM {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: 3,
            max: MAX_DIM - 2,
        });
    }
    let report = verify(seq)?;
    if !report.valid() {
        return Err(Error::InvalidSequence(report));
    }

    let k = seq.len();
    let v = seq.decimals();
    let words: Vec<u32> = lift_layout(k)?
        .iter()
        .map(|entry| match entry.source {
            LiftSource::Vertex { v_index, kind } => {
                (v[v_index - 1] << 2) | modifier(kind, v_index).bits()
            }
            LiftSource::Splice(s) => s.suffix().bits(),
        })
        .collect();

    let lifted = TernarySequence::from_decimals(n + 2, words)?;
    let report = verify(&lifted)?;
    assert!(
        report.valid(),
        "lift produced an invalid sequence: {report}"
    );
    Ok(lifted)
}
