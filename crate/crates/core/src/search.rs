//! Backtracking search for ternary permutations.
//!
//! At each even position `j` the ternary condition forces
//! `v_{j+1} = v_{j-1} + v_j`, so the only free choices are `v_1` and the
//! even positions: `2^{n-1}` free slots in total. Every forced word must be
//! unused, otherwise the branch is dead. Candidates at a free slot are tried
//! in ascending decimal order, so the first solution found is the smallest
//! ternary permutation in decimal-tuple order.
//!
//! Symmetry reduction pins `v_1 = 1` and `v_2 = 2` (see [`canonical_prefix`]).
//! An invertible linear map of GF(2)^n sends ternary permutations to ternary
//! permutations, since every condition is a linear equation, and the distinct
//! nonzero words `v_1, v_2` are linearly independent, so some such map sends
//! them to `1, 2`. Existence is therefore unchanged. Counts under reduction
//! are counts of the reduced search only; no orbit total is claimed.
//!
//! One node is one word placed into a free slot (a candidate that was
//! unused at that point), whether or not its forced successor turns out to
//! be available.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{total_xor, Word};
use crate::verify::{verify, TernarySequence};

/// Largest dimension the search accepts.
pub const MAX_SEARCH_DIM: u32 = 6;

/// Default node budget for `first` mode at dimensions 5 and 6.
pub const DEFAULT_FIRST_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchMode {
    /// Stop at the smallest solution in candidate order.
    First,
    /// Count every solution.
    Count,
    /// Decide that no solution exists.
    ProveNone,
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(SearchMode::First),
            "count" => Ok(SearchMode::Count),
            "prove-none" | "prove_none" => Ok(SearchMode::ProveNone),
            _ => Err(Error::InvalidArgument(format!("unknown search mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub dim: u32,
    pub mode: SearchMode,
    pub symmetry_reduction: bool,
    /// Maximum number of nodes; `None` means unlimited. Running out in
    /// `count` or `prove_none` mode is an error, never a negative answer.
    pub node_budget: Option<u64>,
}

impl SearchConfig {
    /// Unreduced search with the default budget for `dim` and `mode`.
    pub fn new(dim: u32, mode: SearchMode) -> Self {
        let node_budget = match (mode, dim) {
            (SearchMode::First, 5 | 6) => Some(DEFAULT_FIRST_BUDGET),
            _ => None,
        };
        SearchConfig {
            dim,
            mode,
            symmetry_reduction: false,
            node_budget,
        }
    }

    pub fn reduced(mut self, on: bool) -> Self {
        self.symmetry_reduction = on;
        self
    }

    pub fn budget(mut self, budget: Option<u64>) -> Self {
        self.node_budget = budget;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(2..=MAX_SEARCH_DIM).contains(&self.dim) {
            return Err(Error::DimensionOutOfRange {
                dim: self.dim,
                min: 2,
                max: MAX_SEARCH_DIM,
            });
        }
        if self.node_budget == Some(0) {
            return Err(Error::InvalidArgument(
                "node budget must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult {
    /// `first` mode: the smallest solution, or `None` when there is none.
    First(Option<TernarySequence>),
    Count(u64),
    /// `prove_none` mode: `true` iff the exhaustive search found nothing.
    Nonexistent(bool),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub result: SearchResult,
    pub nodes_explored: u64,
    pub symmetry_reduction: bool,
}

/// The pair pinned for `v_1, v_2` under symmetry reduction: decimal 1 and 2.
pub fn canonical_prefix(dim: u32) -> Result<(Word, Word)> {
    if dim < 2 {
        return Err(Error::DimensionOutOfRange {
            dim,
            min: 2,
            max: crate::gf2::MAX_DIM,
        });
    }
    Ok((Word::new(1, dim)?, Word::new(2, dim)?))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

struct BudgetHit;

/// Depth-first state. Slot `t = 0` is `v_1`; slot `t >= 1` is the free word
/// at 0-based index `2t - 1` with its forced successor at `2t`.
#[derive(Clone)]
struct Kernel {
    /// Bit `w` set for every nonzero word `w`.
    universe: u64,
    /// Highest slot index.
    last_slot: usize,
    /// Values pinned for the first slots.
    pinned: Vec<u32>,
    seq: Vec<u32>,
    used: u64,
    nodes: u64,
    budget: u64,
    /// For each nonzero functional `f`, the words `w` with `f(w) = 1`.
    halves: Vec<u64>,
    /// `reach[r][s]`: bit `c` set iff `r` more steps starting from an odd
    /// word on side `s` can consume exactly `c` words from side 1.
    reach: Vec<[u128; 2]>,
}

impl Kernel {
    fn new(config: &SearchConfig) -> Self {
        let pinned = if config.symmetry_reduction {
            vec![1, 2]
        } else {
            Vec::new()
        };
        Kernel::with(config.dim, pinned, true, config.node_budget)
    }

    fn with(dim: u32, pinned: Vec<u32>, prune: bool, budget: Option<u64>) -> Self {
        let len = (1usize << dim) - 1;
        Kernel {
            universe: (u64::MAX >> (63 - len)) & !1,
            last_slot: len / 2,
            pinned,
            seq: vec![0; len],
            used: 0,
            nodes: 0,
            budget: budget.unwrap_or(u64::MAX),
            halves: if prune {
                side_masks(len as u32)
            } else {
                Vec::new()
            },
            reach: side_counts(len / 2),
        }
    }

    /// Necessary condition for completing the sequence from odd word `last`
    /// with `steps` free slots left and `left` the unused words.
    ///
    /// Fix a linear functional `f`. Each step appends `e, o` with
    /// `prev + e + o = 0`, so it takes 0 or 2 words of side 1 when `prev` is
    /// on side 0 and exactly 1 when `prev` is on side 1. The unused words of
    /// side 1 must be a count that some walk of `steps` steps can consume.
    fn completable(&self, last: u32, left: u64, steps: usize) -> bool {
        let reach = &self.reach[steps];
        self.halves.iter().all(|&half| {
            let side = ((half >> last) & 1) as usize;
            let ones = (left & half).count_ones();
            reach[side] >> ones & 1 != 0
        })
    }

    fn candidates(&self, slot: usize) -> u64 {
        let free = self.universe & !self.used;
        match self.pinned.get(slot) {
            Some(&w) => free & (1u64 << w),
            None => free,
        }
    }

    fn descend<F>(&mut self, slot: usize, on_solution: &mut F) -> Result<Flow, BudgetHit>
    where
        F: FnMut(&[u32]) -> Flow,
    {
        if slot > self.last_slot {
            return Ok(on_solution(&self.seq));
        }
        let mut cands = self.candidates(slot);
        while cands != 0 {
            let c = cands.trailing_zeros();
            cands &= cands - 1;
            if self.place(slot, c, on_solution)? == Flow::Stop {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }

    /// Puts unused word `c` into free slot `slot`, applies the forced move
    /// and explores below.
    fn place<F>(&mut self, slot: usize, c: u32, on_solution: &mut F) -> Result<Flow, BudgetHit>
    where
        F: FnMut(&[u32]) -> Flow,
    {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(BudgetHit);
        }
        if slot == 0 {
            self.seq[0] = c;
            self.used |= 1 << c;
            if !self.completable(c, self.universe & !self.used, self.last_slot) {
                self.used &= !(1 << c);
                return Ok(Flow::Continue);
            }
            let flow = self.descend(1, on_solution);
            self.used &= !(1 << c);
            return flow;
        }
        let forced = self.seq[2 * slot - 2] ^ c;
        let pair = (1u64 << c) | (1u64 << forced);
        if self.used & (1 << forced) != 0
            || !self.completable(
                forced,
                self.universe & !(self.used | pair),
                self.last_slot - slot,
            )
        {
            return Ok(Flow::Continue);
        }
        self.seq[2 * slot - 1] = c;
        self.seq[2 * slot] = forced;
        self.used |= pair;
        let flow = self.descend(slot + 1, on_solution);
        self.used &= !pair;
        flow
    }

    /// Places the pinned prefix sequentially; `false` if it is infeasible.
    fn enter_pinned(&mut self) -> Result<bool, BudgetHit> {
        for slot in 0..self.pinned.len().min(self.last_slot + 1) {
            let c = self.pinned[slot];
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(BudgetHit);
            }
            if slot == 0 {
                self.seq[0] = c;
                self.used |= 1 << c;
            } else {
                let forced = self.seq[2 * slot - 2] ^ c;
                if self.used & ((1 << forced) | (1 << c)) != 0 {
                    return Ok(false);
                }
                self.seq[2 * slot - 1] = c;
                self.seq[2 * slot] = forced;
                self.used |= (1 << c) | (1 << forced);
            }
        }
        Ok(true)
    }
}

/// For each nonzero `f <= len`, the mask of words `w <= len` with
/// `popcount(w & f)` odd.
fn side_masks(len: u32) -> Vec<u64> {
    (1..=len)
        .map(|f| {
            (1..=len)
                .filter(|w| (w & f).count_ones() % 2 == 1)
                .fold(0u64, |m, w| m | 1 << w)
        })
        .collect()
}

fn side_counts(max_steps: usize) -> Vec<[u128; 2]> {
    let mut reach = Vec::with_capacity(max_steps + 1);
    for start in 0..2usize {
        // states[s]: reachable side-1 totals while currently on side s.
        let mut states = [0u128; 2];
        states[start] = 1;
        for r in 0..=max_steps {
            if start == 0 {
                reach.push([0, 0]);
            }
            reach[r][start] = states[0] | states[1];
            states = [states[0] | states[1] << 1, states[0] << 2 | states[1] << 1];
        }
    }
    reach
}

/// Runs the search described by `config` on the current thread.
pub fn search(config: &SearchConfig) -> Result<SearchOutcome> {
    config.validate()?;
    run(Kernel::new(config), config)
}

fn run(mut kernel: Kernel, config: &SearchConfig) -> Result<SearchOutcome> {
    let mut found: Option<Vec<u32>> = None;
    let mut count = 0u64;
    let mode = config.mode;
    let mut on_solution = |s: &[u32]| match mode {
        SearchMode::Count => {
            count += 1;
            Flow::Continue
        }
        SearchMode::First | SearchMode::ProveNone => {
            found = Some(s.to_vec());
            Flow::Stop
        }
    };
    let walk = match kernel.enter_pinned() {
        Ok(true) => {
            let start = kernel.pinned.len();
            kernel.descend(start, &mut on_solution).map(|_| ())
        }
        Ok(false) => Ok(()),
        Err(hit) => Err(hit),
    };
    let nodes = kernel.nodes;
    if walk.is_err() {
        return Err(Error::BudgetExhausted {
            budget: kernel.budget,
            nodes,
        });
    }
    let result = match mode {
        SearchMode::First => SearchResult::First(found.map(|v| checked(config.dim, v))),
        SearchMode::Count => SearchResult::Count(count),
        SearchMode::ProveNone => SearchResult::Nonexistent(found.is_none()),
    };
    Ok(SearchOutcome {
        result,
        nodes_explored: nodes,
        symmetry_reduction: config.symmetry_reduction,
    })
}

/// Like [`search`], but splits the first unpinned slot across threads.
///
/// Only `count` and `prove_none` are parallelised; `first` mode falls back
/// to the sequential search so its answer stays the smallest solution.
/// Counts and node totals in `count` mode equal the sequential ones. In
/// `prove_none` mode each branch stops at its own first solution, so node
/// totals may differ. Each branch may use the whole remaining budget; the
/// merged total is checked against the budget after the join.
pub fn search_parallel(config: &SearchConfig) -> Result<SearchOutcome> {
    config.validate()?;
    if config.mode == SearchMode::First {
        return search(config);
    }
    let mut root = Kernel::new(config);
    let exhausted = |nodes| Error::BudgetExhausted {
        budget: root_budget(config),
        nodes,
    };
    match root.enter_pinned() {
        Ok(true) => {}
        Ok(false) => return Ok(empty_outcome(config, root.nodes)),
        Err(BudgetHit) => return Err(exhausted(root.nodes)),
    }
    let slot = root.pinned.len();
    if slot > root.last_slot {
        // The pinned prefix already fills the sequence (dim 2).
        let solutions = u64::from(root.seq.iter().all(|&w| w != 0));
        return Ok(SearchOutcome {
            result: match config.mode {
                SearchMode::Count => SearchResult::Count(solutions),
                _ => SearchResult::Nonexistent(solutions == 0),
            },
            nodes_explored: root.nodes,
            symmetry_reduction: config.symmetry_reduction,
        });
    }

    let remaining = root.budget - root.nodes;
    let mode = config.mode;
    let mut branches: Vec<u32> = Vec::new();
    let mut cands = root.candidates(slot);
    while cands != 0 {
        branches.push(cands.trailing_zeros());
        cands &= cands - 1;
    }
    let parts: Vec<Result<(u64, u64), u64>> = branches
        .into_par_iter()
        .map(|c| {
            let mut k = root.clone();
            k.nodes = 0;
            k.budget = remaining;
            let mut count = 0u64;
            let mut on_solution = |_: &[u32]| {
                count += 1;
                match mode {
                    SearchMode::Count => Flow::Continue,
                    _ => Flow::Stop,
                }
            };
            match k.place(slot, c, &mut on_solution) {
                Ok(_) => Ok((k.nodes, count)),
                Err(BudgetHit) => Err(k.nodes),
            }
        })
        .collect();

    let nodes = root.nodes
        + parts
            .iter()
            .map(|p| match p {
                Ok((n, _)) | Err(n) => *n,
            })
            .sum::<u64>();
    if nodes > root.budget || parts.iter().any(Result::is_err) {
        return Err(exhausted(nodes));
    }
    let count: u64 = parts.iter().flatten().map(|p| p.1).sum();
    let result = match mode {
        SearchMode::Count => SearchResult::Count(count),
        _ => SearchResult::Nonexistent(count == 0),
    };
    Ok(SearchOutcome {
        result,
        nodes_explored: nodes,
        symmetry_reduction: config.symmetry_reduction,
    })
}

fn root_budget(config: &SearchConfig) -> u64 {
    config.node_budget.unwrap_or(u64::MAX)
}

fn empty_outcome(config: &SearchConfig, nodes: u64) -> SearchOutcome {
    SearchOutcome {
        result: match config.mode {
            SearchMode::First => SearchResult::First(None),
            SearchMode::Count => SearchResult::Count(0),
            SearchMode::ProveNone => SearchResult::Nonexistent(true),
        },
        nodes_explored: nodes,
        symmetry_reduction: config.symmetry_reduction,
    }
}

fn checked(dim: u32, values: Vec<u32>) -> TernarySequence {
    let seq = TernarySequence::from_decimals(dim, values).expect("search words fit in dim bits");
    let report = verify(&seq).expect("search dims are >= 2");
    assert!(
        report.valid(),
        "search produced an invalid sequence: {report}"
    );
    seq
}

/// `total_xor(3) = 0`: the step that forces one of the two outer triples
/// of any ordering of the seven nonzero words of GF(2)^3 to be nonzero.
pub fn lemma_n3() -> bool {
    total_xor(3).map(Word::is_zero).unwrap_or(false)
}

/// Record of an exhaustive nonexistence run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub dim: u32,
    pub nonexistence: bool,
    pub nodes_explored: u64,
    pub symmetry_reduction: bool,
    /// Unreduced rerun: (nonexistence, nodes). Present for dim 3.
    pub unreduced_check: Option<(bool, u64)>,
    /// [`lemma_n3`], present for dim 3.
    pub total_xor_lemma: Option<bool>,
    pub verifier_version: String,
}

/// Exhaustively decides that GF(2)^dim has no ternary permutation, for
/// `dim` 3 or 4.
pub fn prove_impossibility(dim: u32) -> Result<Certificate> {
    if !(3..=4).contains(&dim) {
        return Err(Error::InvalidArgument(format!(
            "impossibility certificates cover n=3 and n=4 only, got n={dim}"
        )));
    }
    let reduced = search(&SearchConfig::new(dim, SearchMode::ProveNone).reduced(true))?;
    let nonexistence = matches!(reduced.result, SearchResult::Nonexistent(true));
    let (unreduced_check, total_xor_lemma) = if dim == 3 {
        let full = search(&SearchConfig::new(dim, SearchMode::ProveNone))?;
        let none = matches!(full.result, SearchResult::Nonexistent(true));
        (Some((none, full.nodes_explored)), Some(lemma_n3()))
    } else {
        (None, None)
    };
    Ok(Certificate {
        dim,
        nonexistence,
        nodes_explored: reduced.nodes_explored,
        symmetry_reduction: true,
        unreduced_check,
        total_xor_lemma,
        verifier_version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim={}", self.dim)?;
        writeln!(f, "nonexistence={}", self.nonexistence)?;
        writeln!(f, "nodes_explored={}", self.nodes_explored)?;
        writeln!(f, "symmetry_reduction={}", self.symmetry_reduction)?;
        if let Some((none, nodes)) = self.unreduced_check {
            writeln!(f, "unreduced_nonexistence={none}")?;
            writeln!(f, "unreduced_nodes_explored={nodes}")?;
        }
        if let Some(lemma) = self.total_xor_lemma {
            writeln!(f, "total_xor_zero={lemma}")?;
        }
        writeln!(f, "verifier_version={}", self.verifier_version)
    }
}

impl FromStr for Certificate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut dim = None;
        let mut nonexistence = None;
        let mut nodes = None;
        let mut reduction = None;
        let mut un_none = None;
        let mut un_nodes = None;
        let mut lemma = None;
        let mut version = None;
        for (i, line) in s.lines().enumerate() {
            let line_no = i + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::parse(line_no, format!("expected key=value, got {line:?}"))
            })?;
            let bad = || Error::parse(line_no, format!("bad value for {key}: {value:?}"));
            match key {
                "dim" => dim = Some(value.parse().map_err(|_| bad())?),
                "nonexistence" => nonexistence = Some(value.parse().map_err(|_| bad())?),
                "nodes_explored" => nodes = Some(value.parse().map_err(|_| bad())?),
                "symmetry_reduction" => reduction = Some(value.parse().map_err(|_| bad())?),
                "unreduced_nonexistence" => un_none = Some(value.parse().map_err(|_| bad())?),
                "unreduced_nodes_explored" => un_nodes = Some(value.parse().map_err(|_| bad())?),
                "total_xor_zero" => lemma = Some(value.parse().map_err(|_| bad())?),
                "verifier_version" => version = Some(value.to_string()),
                _ => return Err(Error::parse(line_no, format!("unknown key {key:?}"))),
            }
        }
        let missing = |k: &str| Error::parse(0, format!("missing key {k}"));
        Ok(Certificate {
            dim: dim.ok_or_else(|| missing("dim"))?,
            nonexistence: nonexistence.ok_or_else(|| missing("nonexistence"))?,
            nodes_explored: nodes.ok_or_else(|| missing("nodes_explored"))?,
            symmetry_reduction: reduction.ok_or_else(|| missing("symmetry_reduction"))?,
            unreduced_check: un_none.zip(un_nodes),
            total_xor_lemma: lemma,
            verifier_version: version.ok_or_else(|| missing("verifier_version"))?,
        })
    }
}
