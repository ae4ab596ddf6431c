//! Generation for every dimension that admits a ternary permutation, plus
//! base-case storage and file I/O.
//!
//! Dimension 2 uses the fixed sequence `1 2 3`. Dimensions 5 and 6 come from
//! the base-case store, which is seeded from the fixture files under
//! `fixtures/` (the smallest solutions found by the search) and falls back
//! to searching. Every larger dimension is reached by lifting `n - 2`
//! repeatedly: odd `n` from 5, even `n` from 6.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::SystemTime;

use crate::error::{Error, Result};
use crate::format::{parse_sequence, write_sequence, Format};
use crate::gf2::MAX_DIM;
use crate::lifting::lift;
use crate::search::{search, SearchConfig, SearchMode, SearchResult};
use crate::verify::{verify, TernarySequence, VerificationReport};

/// Dimensions held by a [`BaseCaseStore`].
pub const BASE_DIMS: [u32; 3] = [2, 5, 6];

const FIXTURE_5: &str = include_str!("../fixtures/dim-5.txt");
const FIXTURE_6: &str = include_str!("../fixtures/dim-6.txt");

/// File name of the fixture for `dim`, e.g. `dim-5.txt`.
pub fn fixture_name(dim: u32) -> String {
    format!("dim-{dim}.txt")
}

/// Whether GF(2)^n has a ternary permutation: every `n >= 2` except 3 and 4.
pub fn exists(n: u32) -> Result<bool> {
    if n < 2 {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: 2,
            max: MAX_DIM,
        });
    }
    Ok(!matches!(n, 3 | 4))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteStep {
    Base(u32),
    /// Lifted from the given smaller dimension.
    LiftedFrom(u32),
}

impl fmt::Display for RouteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RouteStep::Base(d) => write!(f, "base-{d}"),
            RouteStep::LiftedFrom(d) => write!(f, "lifted-from-{d}"),
        }
    }
}

/// How `generate(n)` is built, outermost step first: for `n = 9` this is
/// `[LiftedFrom(7), LiftedFrom(5), Base(5)]`.
pub fn route(n: u32) -> Result<Vec<RouteStep>> {
    check_generable(n)?;
    let base = base_for(n);
    let mut steps: Vec<RouteStep> = (base..n)
        .step_by(2)
        .rev()
        .map(RouteStep::LiftedFrom)
        .collect();
    steps.push(RouteStep::Base(base));
    Ok(steps)
}

pub fn format_route(steps: &[RouteStep]) -> String {
    steps
        .iter()
        .map(RouteStep::to_string)
        .collect::<Vec<_>>()
        .join(" ← ")
}

fn base_for(n: u32) -> u32 {
    match n {
        2 => 2,
        n if n % 2 == 1 => 5,
        _ => 6,
    }
}

fn check_generable(n: u32) -> Result<()> {
    if !exists(n)? {
        return Err(Error::Nonexistent { dim: n });
    }
    if n > MAX_DIM {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: 2,
            max: MAX_DIM,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// The fixed dimension-2 sequence.
    Builtin,
    /// Fixture compiled into the library.
    Bundled {
        name: String,
    },
    LoadedFromFile {
        path: PathBuf,
    },
    SearchedLocally {
        nodes_explored: u64,
    },
}

#[derive(Clone, Debug)]
pub struct BaseCase {
    pub sequence: TernarySequence,
    pub provenance: Provenance,
    pub verified_at: SystemTime,
}

/// Verified base sequences for dimensions 2, 5 and 6.
///
/// Reads take `&self`; inserting (including a search on demand) takes
/// `&mut self`, so a shared store needs external locking to be written.
#[derive(Clone, Debug)]
pub struct BaseCaseStore {
    entries: BTreeMap<u32, BaseCase>,
}

impl Default for BaseCaseStore {
    fn default() -> Self {
        Self::bundled()
    }
}

impl BaseCaseStore {
    /// Only the dimension-2 sequence; 5 and 6 are searched when needed.
    pub fn empty() -> Self {
        let mut store = BaseCaseStore {
            entries: BTreeMap::new(),
        };
        let two = TernarySequence::from_decimals(2, vec![1, 2, 3]).expect("fits in 2 bits");
        store
            .insert(two, Provenance::Builtin)
            .expect("1 2 3 is ternary");
        store
    }

    /// Seeded with the bundled fixtures for dimensions 5 and 6.
    pub fn bundled() -> Self {
        let mut store = Self::empty();
        for (dim, text) in [(5, FIXTURE_5), (6, FIXTURE_6)] {
            let (seq, _) =
                parse_sequence(text, Some(Format::Decimal)).expect("bundled fixture parses");
            assert_eq!(seq.dim(), dim);
            store
                .insert(
                    seq,
                    Provenance::Bundled {
                        name: fixture_name(dim),
                    },
                )
                .expect("bundled fixture verifies");
        }
        store
    }

    /// Reads `dim-5.txt` and `dim-6.txt` from `dir` where present. Missing
    /// files are searched on demand; a present but invalid file is an error.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let mut store = Self::empty();
        for dim in [5, 6] {
            let path = dir.join(fixture_name(dim));
            if !path.exists() {
                continue;
            }
            let loaded = load(&path)?;
            if loaded.sequence.dim() != dim {
                return Err(Error::InvalidArgument(format!(
                    "{}: holds n={}, expected n={dim}",
                    path.display(),
                    loaded.sequence.dim()
                )));
            }
            store.insert(loaded.sequence, Provenance::LoadedFromFile { path })?;
        }
        Ok(store)
    }

    /// Adds or replaces a base case after verifying it.
    pub fn insert(&mut self, sequence: TernarySequence, provenance: Provenance) -> Result<()> {
        let dim = sequence.dim();
        if !BASE_DIMS.contains(&dim) {
            return Err(Error::InvalidArgument(format!(
                "base cases are stored for n in {BASE_DIMS:?}, got n={dim}"
            )));
        }
        let report = verify(&sequence)?;
        if !report.valid() {
            return Err(Error::InvalidSequence(report));
        }
        self.entries.insert(
            dim,
            BaseCase {
                sequence,
                provenance,
                verified_at: SystemTime::now(),
            },
        );
        Ok(())
    }

    pub fn get(&self, dim: u32) -> Option<&BaseCase> {
        self.entries.get(&dim)
    }

    pub fn dims(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.keys().copied()
    }

    /// The base case for `dim`, searching for it if the store lacks it.
    pub fn base(&mut self, dim: u32) -> Result<&TernarySequence> {
        if !self.entries.contains_key(&dim) {
            if !BASE_DIMS.contains(&dim) {
                return Err(Error::InvalidArgument(format!(
                    "n={dim} is not a base dimension"
                )));
            }
            let outcome = search(&SearchConfig::new(dim, SearchMode::First).reduced(true))?;
            let SearchResult::First(Some(seq)) = outcome.result else {
                return Err(Error::Nonexistent { dim });
            };
            self.insert(
                seq,
                Provenance::SearchedLocally {
                    nodes_explored: outcome.nodes_explored,
                },
            )?;
        }
        Ok(&self.entries[&dim].sequence)
    }

    pub fn generate(&mut self, n: u32) -> Result<TernarySequence> {
        Ok(self
            .generate_chain(n)?
            .pop()
            .expect("chain holds at least the base case"))
    }

    /// Every sequence on the way to dimension `n`: the base case, then each
    /// lift, ending with dimension `n`.
    pub fn generate_chain(&mut self, n: u32) -> Result<Vec<TernarySequence>> {
        check_generable(n)?;
        let base = base_for(n);
        let mut chain = vec![self.base(base)?.clone()];
        for _ in (base..n).step_by(2) {
            let next = lift(chain.last().expect("nonempty"))?;
            chain.push(next);
        }
        let top = chain.last().expect("nonempty");
        let report = verify(top)?;
        assert!(
            report.valid(),
            "generated n={n} fails verification: {report}"
        );
        Ok(chain)
    }
}

/// A ternary permutation of GF(2)^n, from the bundled base cases.
pub fn generate(n: u32) -> Result<TernarySequence> {
    BaseCaseStore::bundled().generate(n)
}

/// Writes a verified sequence to `path`.
pub fn save(seq: &TernarySequence, format: Format, path: &Path) -> Result<()> {
    let report = verify(seq)?;
    if !report.valid() {
        return Err(Error::InvalidSequence(report));
    }
    fs::write(path, write_sequence(seq, format)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A parsed listing and its verification result. Files that parse but are
/// not ternary permutations load with `report.valid() == false`.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub sequence: TernarySequence,
    pub format: Format,
    pub report: VerificationReport,
}

pub fn load(path: &Path) -> Result<Loaded> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    load_str(&text, None)
}

pub fn load_str(text: &str, format: Option<Format>) -> Result<Loaded> {
    let (sequence, format) = parse_sequence(text, format)?;
    let report = verify(&sequence)?;
    Ok(Loaded {
        sequence,
        format,
        report,
    })
}
