//! Searching for Heffter difference matrices.
//!
//! Every matrix can be normalized to an all-one first column without changing
//! validity or simplicity, so the searches below work over normalized
//! candidate rows `(1, b_1, …, b_{k-1})`. Two rows fit together iff they give
//! different ratios in every column pair, which turns "find `r` rows" into
//! "find an `r`-clique" in the compatibility graph.

pub mod bound;
pub mod clique;
pub mod greedy;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::halfset::HalfSet;
use crate::hdm::{ratio_keys, row_is_simple, HeffterDifferenceMatrix};

pub use bound::{q_bound, q_exceeds_bound, simplified_bound};
pub use clique::{max_clique, BitGraph, CliqueOutcome};
pub use greedy::{greedy_build, greedy_extend, GreedyStats, XRule};

/// Default node budget for searches.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// Largest tuple space `|V_1| ⋯ |V_{k-2}|` that `enumerate_rows` will walk.
pub const MAX_ENUMERATION: u64 = 50_000_000;

/// Largest candidate set for which the dense compatibility graph is built.
pub const DENSE_LIMIT: usize = 16_384;

/// Consecutive incompatible samples before the random search restarts.
const RESTART_AFTER: u64 = 2_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Exhaustive,
    Random,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::Random => "random",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "random" => Ok(Strategy::Random),
            other => Err(format!("unknown strategy `{other}` (expected exhaustive or random)")),
        }
    }
}

/// How a search result was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchMeta {
    pub strategy: Strategy,
    pub seed: Option<u64>,
    pub nodes: u64,
    pub exhaustive: bool,
}

/// Normalized rows `(1, b_1, …, b_{k-1})` with `b_i ∈ V_i` and zero sum.
#[derive(Debug, Clone)]
pub struct CandidateRowSet {
    halfset: HalfSet,
    rows: Vec<Vec<Elem>>,
    // ratio keys, `pairs` per row
    keys: Vec<u32>,
    pairs: usize,
    simple_only: bool,
}

impl CandidateRowSet {
    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn simple_only(&self) -> bool {
        self.simple_only
    }

    pub fn halfset(&self) -> &HalfSet {
        &self.halfset
    }

    fn keys(&self, v: usize) -> &[u32] {
        &self.keys[v * self.pairs..(v + 1) * self.pairs]
    }

    /// Same verdict as [`crate::hdm::rows_compatible`], via precomputed ratio logs.
    pub fn compatible(&self, a: usize, b: usize) -> bool {
        self.keys(a).iter().zip(self.keys(b)).all(|(x, y)| x != y)
    }

    pub fn compatibility_graph(&self) -> BitGraph {
        let mut g = BitGraph::new(self.len());
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.compatible(a, b) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    pub fn matrix(&self, ids: &[usize]) -> HeffterDifferenceMatrix {
        let rows = ids.iter().map(|&v| self.rows[v].clone()).collect();
        HeffterDifferenceMatrix::new(self.halfset.clone(), rows).expect("candidate rows have the right shape")
    }
}

/// Number of prefixes `(b_1, …, b_{k-2})` an enumeration visits.
pub fn tuple_space(halfset: &HalfSet) -> u64 {
    let n = u64::from(halfset.ctx().class_size());
    (0..halfset.k() - 2).fold(1u64, |acc, _| acc.saturating_mul(n))
}

/// All normalized candidate rows, lexicographic in `(dlog b_1, …, dlog b_{k-2})`.
pub fn enumerate_rows(halfset: &HalfSet, simple_only: bool) -> Result<CandidateRowSet> {
    enumerate_rows_limited(halfset, simple_only, MAX_ENUMERATION)
}

pub fn enumerate_rows_limited(halfset: &HalfSet, simple_only: bool, max_tuples: u64) -> Result<CandidateRowSet> {
    let ctx = halfset.ctx();
    if !ctx.is_admissible() {
        return Err(Error::NotAdmissible { q: ctx.q(), k: ctx.k() });
    }
    let space = tuple_space(halfset);
    if space > max_tuples {
        return Err(Error::BudgetExceeded { budget: max_tuples });
    }
    let k = halfset.k();
    let parts: Vec<Vec<Elem>> = (0..k).map(|i| halfset.part_elements(i)).collect();
    let n = parts[1].len();
    let pairs = k * (k - 1) / 2;
    let mut rows = Vec::new();
    let mut keys = Vec::new();
    let mut idx = vec![0usize; k - 2];
    let mut row = vec![1; k];
    for _ in 0..space {
        let mut sum = 1;
        for (i, &t) in idx.iter().enumerate() {
            row[i + 1] = parts[i + 1][t];
            sum = ctx.add(sum, row[i + 1]);
        }
        let last = ctx.neg(sum);
        if halfset.locate(last) == Some(k - 1) {
            row[k - 1] = last;
            if !simple_only || row_is_simple(ctx, &row) {
                keys.extend(ratio_keys(ctx, &row));
                rows.push(row.clone());
            }
        }
        // mixed-radix increment, last position fastest
        for t in idx.iter_mut().rev() {
            *t += 1;
            if *t < n {
                break;
            }
            *t = 0;
        }
    }
    Ok(CandidateRowSet { halfset: halfset.clone(), rows, keys, pairs, simple_only })
}

/// Result of [`exhaustive_max_r`].
#[derive(Debug, Clone)]
pub struct MaxRows {
    pub r_max: usize,
    pub witness: HeffterDifferenceMatrix,
    pub candidates: usize,
    pub meta: SearchMeta,
}

/// Largest `r` admitting a `(V,k,r)` matrix, via maximum clique over all candidates.
///
/// When the node budget runs out, `r_max` is only a lower bound and
/// `meta.exhaustive` is false.
pub fn exhaustive_max_r(halfset: &HalfSet, simple_only: bool, budget: u64) -> Result<MaxRows> {
    let cands = enumerate_rows(halfset, simple_only)?;
    max_r_over(&cands, budget)
}

pub fn max_r_over(cands: &CandidateRowSet, budget: u64) -> Result<MaxRows> {
    if cands.len() > DENSE_LIMIT {
        return Err(Error::BudgetExceeded { budget: DENSE_LIMIT as u64 });
    }
    let graph = cands.compatibility_graph();
    let out = max_clique(&graph, budget, None);
    let witness = cands.matrix(&out.clique);
    debug_assert!(witness.is_valid());
    Ok(MaxRows {
        r_max: out.clique.len(),
        witness,
        candidates: cands.len(),
        meta: SearchMeta { strategy: Strategy::Exhaustive, seed: None, nodes: out.nodes, exhaustive: out.complete },
    })
}

#[derive(Debug, Clone)]
pub struct Found {
    pub hdm: HeffterDifferenceMatrix,
    pub meta: SearchMeta,
}

/// Finds a simple `(V,k,r)` matrix.
///
/// `Exhaustive` walks the compatibility graph depth-first and its failure
/// ([`Error::NotFoundExhaustive`]) proves nonexistence. `Random` grows
/// compatible sets from uniformly sampled rows with restarts; its failure is
/// [`Error::BudgetExceeded`] and proves nothing.
pub fn find_hdm(
    halfset: &HalfSet,
    r: usize,
    strategy: Strategy,
    seed: Option<u64>,
    budget: u64,
) -> Result<Found> {
    let ctx = halfset.ctx();
    if !ctx.is_admissible() {
        return Err(Error::NotAdmissible { q: ctx.q(), k: ctx.k() });
    }
    let found = match strategy {
        Strategy::Exhaustive => {
            let cands = enumerate_rows(halfset, true)?;
            find_exhaustive(&cands, r, budget)?
        }
        Strategy::Random => find_random(halfset, r, seed.unwrap_or(0), budget)?,
    };
    let report = found.hdm.verify()?;
    if !report.is_valid() || !found.hdm.is_simple() {
        return Err(Error::InvalidHdm(report.to_string()));
    }
    Ok(found)
}

struct Dfs<'a> {
    cands: &'a CandidateRowSet,
    target: usize,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Dfs<'_> {
    fn run(&mut self, pool: &[usize]) -> bool {
        if self.chosen.len() == self.target {
            return true;
        }
        for (i, &v) in pool.iter().enumerate() {
            if self.chosen.len() + pool.len() - i < self.target {
                return false;
            }
            if self.nodes >= self.budget {
                self.aborted = true;
                return false;
            }
            self.nodes += 1;
            let next: Vec<usize> = pool[i + 1..].iter().copied().filter(|&w| self.cands.compatible(v, w)).collect();
            self.chosen.push(v);
            if self.run(&next) {
                return true;
            }
            self.chosen.pop();
            if self.aborted {
                return false;
            }
        }
        false
    }
}

fn find_exhaustive(cands: &CandidateRowSet, r: usize, budget: u64) -> Result<Found> {
    let mut dfs = Dfs { cands, target: r, chosen: Vec::new(), nodes: 0, budget, aborted: false };
    let pool: Vec<usize> = (0..cands.len()).collect();
    if dfs.run(&pool) {
        return Ok(Found {
            hdm: cands.matrix(&dfs.chosen),
            meta: SearchMeta { strategy: Strategy::Exhaustive, seed: None, nodes: dfs.nodes, exhaustive: true },
        });
    }
    if dfs.aborted {
        Err(Error::BudgetExceeded { budget })
    } else {
        Err(Error::NotFoundExhaustive { r, nodes: dfs.nodes })
    }
}

fn find_random(halfset: &HalfSet, r: usize, seed: u64, budget: u64) -> Result<Found> {
    let ctx = halfset.ctx();
    let k = halfset.k();
    let parts: Vec<Vec<Elem>> = (0..k).map(|i| halfset.part_elements(i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current: Vec<Vec<Elem>> = Vec::new();
    let mut current_keys: Vec<Vec<u32>> = Vec::new();
    let mut stall = 0u64;
    let mut nodes = 0u64;
    let meta = |nodes| SearchMeta { strategy: Strategy::Random, seed: Some(seed), nodes, exhaustive: false };
    if r == 0 {
        return Ok(Found { hdm: HeffterDifferenceMatrix::empty(halfset.clone()), meta: meta(0) });
    }
    let mut row = vec![1; k];
    while nodes < budget {
        nodes += 1;
        let mut sum = 1;
        for i in 1..k - 1 {
            row[i] = parts[i][rng.random_range(0..parts[i].len())];
            sum = ctx.add(sum, row[i]);
        }
        row[k - 1] = ctx.neg(sum);
        if halfset.locate(row[k - 1]) != Some(k - 1) || !row_is_simple(ctx, &row) {
            continue;
        }
        let keys = ratio_keys(ctx, &row);
        if current_keys.iter().all(|other| other.iter().zip(&keys).all(|(x, y)| x != y)) {
            current.push(row.clone());
            current_keys.push(keys);
            stall = 0;
            if current.len() == r {
                let hdm = HeffterDifferenceMatrix::new(halfset.clone(), current)?;
                return Ok(Found { hdm, meta: meta(nodes) });
            }
        } else {
            stall += 1;
            if stall >= RESTART_AFTER {
                current.clear();
                current_keys.clear();
                stall = 0;
            }
        }
    }
    Err(Error::BudgetExceeded { budget })
}
