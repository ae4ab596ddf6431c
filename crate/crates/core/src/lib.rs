//! Ternary permutations of the nonzero vectors of GF(2)^n.
//!
//! A ternary permutation orders all `2^n - 1` nonzero words `v_1, v_2, ...`
//! so that `v_{i-1} + v_i + v_{i+1} = 0` at every even position `i`. They
//! exist exactly when `n` is neither 3 nor 4 (for `n >= 2`).
//!
//! - [`gf2`] and [`verify`]: words, sequences and the checker.
//! - [`lifting`]: the `n -> n + 2` construction.
//! - [`search`]: backtracking search and nonexistence certificates.
//! - [`catalog`]: generation for every admissible `n`, base cases, files.
//! - [`cli`]: the `ternary` command.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod format;
pub mod gf2;
pub mod lifting;
pub mod search;
pub mod verify;

pub use catalog::{exists, generate};
pub use error::{Error, Result};
pub use format::Format;
pub use gf2::{concat, total_xor, word_add, Word, MAX_DIM};
pub use lifting::lift;
pub use verify::{verify, Failure, FailureKind, TernarySequence, VerificationReport};
