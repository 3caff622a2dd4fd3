//! Exact K-way qubit partitioning by dynamic programming over qubit subsets.
//!
//! `T(S, j)` is the cheapest way to split the qubit set `S` into `j`
//! non-empty parts. It is computed bottom-up one `j` level at a time:
//!
//! ```text
//! T(S, 1) = 0
//! T(S, j) = min over non-empty S' ⊂ S of  cut(S', S \ S') + T(S \ S', j - 1)
//! ```
//!
//! The lowest qubit of `S` always stays in the remainder, so each unordered
//! split is considered once. Subsets are `u32` bitmasks with bit `i` for
//! qubit `i`, and a mask's integer value doubles as its table index.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bigraph::WeightMatrix;
use crate::circuit::QubitId;

/// Default refusal threshold for the exact DP.
pub const DEFAULT_QUBIT_CAP: usize = 24;
/// Hard limit imposed by the mask width and dense storage.
pub const MAX_QUBITS: usize = 30;

const UNREACHED: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("number of parts {k} must be between 1 and the qubit count {n}")]
    PartsOutOfRange { k: usize, n: usize },
    #[error("{n} qubits exceeds the cap of {cap}")]
    TooManyQubits { n: usize, cap: usize },
    #[error("{k} parts of at most {max_part_size} qubits cannot hold {n} qubits")]
    InfeasibleCap {
        k: usize,
        max_part_size: usize,
        n: usize,
    },
    #[error("subsets overlap")]
    Overlap,
    #[error("total interaction weight {0} does not fit the cost table")]
    WeightOverflow(u64),
    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),
}

/// A set of qubits as a bitmask.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct QubitSubset(pub u32);

impl QubitSubset {
    pub fn from_qubits(qubits: impl IntoIterator<Item = usize>) -> Self {
        QubitSubset(qubits.into_iter().fold(0, |m, q| m | (1 << q)))
    }

    pub fn full(n: usize) -> Self {
        QubitSubset(full_mask(n))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, q: usize) -> bool {
        self.0 >> q & 1 == 1
    }

    /// Member qubits in ascending order.
    pub fn qubits(self) -> impl Iterator<Item = QubitId> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let q = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(QubitId(q))
        })
    }
}

/// Renders as 1-based qubit numbers, highest first: `{4,3,1}`.
impl fmt::Display for QubitSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let numbers: Vec<String> = self
            .qubits()
            .map(|q| q.number().to_string())
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .collect();
        write!(f, "{{{}}}", numbers.join(","))
    }
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Number of two-qubit gates with one end in `s1` and the other in `s2`.
pub fn connect(s1: QubitSubset, s2: QubitSubset, w: &WeightMatrix) -> Result<u64, PartitionError> {
    if s1.0 & s2.0 != 0 {
        return Err(PartitionError::Overlap);
    }
    Ok(s1
        .qubits()
        .flat_map(|a| s2.qubits().map(move |b| (a, b)))
        .map(|(a, b)| w.get(a.0, b.0))
        .sum())
}

/// Disjoint, covering, non-empty parts, ordered by their lowest qubit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionAssignment {
    parts: Vec<QubitSubset>,
    part_of: Vec<usize>,
}

impl PartitionAssignment {
    /// Validates `parts` against `n` qubits. Part order is preserved.
    pub fn from_parts(n: usize, parts: Vec<QubitSubset>) -> Result<Self, PartitionError> {
        let mut part_of = vec![usize::MAX; n];
        for (p, subset) in parts.iter().enumerate() {
            if subset.is_empty() {
                return Err(PartitionError::InvalidAssignment(format!(
                    "part {p} is empty"
                )));
            }
            for q in subset.qubits() {
                let slot = part_of.get_mut(q.0).ok_or_else(|| {
                    PartitionError::InvalidAssignment(format!("{q} is outside {n} qubits"))
                })?;
                if *slot != usize::MAX {
                    return Err(PartitionError::InvalidAssignment(format!(
                        "{q} appears in more than one part"
                    )));
                }
                *slot = p;
            }
        }
        if let Some(q) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(PartitionError::InvalidAssignment(format!(
                "{} is not assigned",
                QubitId(q)
            )));
        }
        Ok(PartitionAssignment { parts, part_of })
    }

    /// Builds from a per-qubit part label; labels must be `0..k` with none unused.
    pub fn from_labels(labels: &[usize]) -> Result<Self, PartitionError> {
        let k = labels.iter().max().map_or(0, |&m| m + 1);
        let mut parts = vec![QubitSubset(0); k];
        for (q, &p) in labels.iter().enumerate() {
            parts[p].0 |= 1 << q;
        }
        PartitionAssignment::from_parts(labels.len(), parts)
    }

    fn canonical(n: usize, mut parts: Vec<QubitSubset>) -> Self {
        parts.sort_by_key(|s| s.0.trailing_zeros());
        PartitionAssignment::from_parts(n, parts).expect("solver produced an invalid partition")
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn qubit_count(&self) -> usize {
        self.part_of.len()
    }

    pub fn parts(&self) -> &[QubitSubset] {
        &self.parts
    }

    pub fn part_of(&self, q: QubitId) -> usize {
        self.part_of[q.0]
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.len()).collect()
    }

    /// 1-based qubit numbers per part.
    pub fn numbered(&self) -> Vec<Vec<usize>> {
        self.parts
            .iter()
            .map(|p| p.qubits().map(|q| q.number()).collect())
            .collect()
    }

    /// Total weight of pairs split across parts, recounted from `w`.
    pub fn cost(&self, w: &WeightMatrix) -> u64 {
        let n = self.part_of.len();
        let mut total = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.part_of[i] != self.part_of[j] {
                    total += w.get(i, j);
                }
            }
        }
        total
    }
}

#[derive(Debug, Clone)]
struct Level {
    /// Only masks containing qubit 0 are stored; index is `mask >> 1`.
    anchored: bool,
    cost: Vec<u32>,
    choice: Vec<u32>,
}

impl Level {
    fn slot(&self, mask: u32) -> Option<usize> {
        if self.anchored {
            (mask & 1 == 1).then_some((mask >> 1) as usize)
        } else {
            Some(mask as usize)
        }
    }
}

/// Memo table of optimal sub-partition costs with the peeled-off part that
/// achieved each one.
#[derive(Debug, Clone)]
pub struct DpTable {
    n: usize,
    k_max: usize,
    max_part_size: usize,
    /// Levels `2..=k_max`.
    levels: Vec<Level>,
}

impl DpTable {
    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// `T(mask, k)`, or `None` when no `k`-part split exists (or it was not computed).
    pub fn get(&self, mask: u32, k: usize) -> Option<u64> {
        if mask == 0 || mask > full_mask(self.n) || k == 0 || k > self.k_max {
            return None;
        }
        if k == 1 {
            return (mask.count_ones() as usize <= self.max_part_size).then_some(0);
        }
        let level = &self.levels[k - 2];
        let c = *level.cost.get(level.slot(mask)?)?;
        (c != UNREACHED).then_some(u64::from(c))
    }

    /// The part split off from `mask` at level `k` (for `k >= 2`).
    pub fn choice(&self, mask: u32, k: usize) -> Option<QubitSubset> {
        if k < 2 {
            return None;
        }
        self.get(mask, k)?;
        let level = &self.levels[k - 2];
        Some(QubitSubset(level.choice[level.slot(mask)?]))
    }

    fn reconstruct(&self, mask: u32, k: usize) -> Vec<QubitSubset> {
        let mut parts = Vec::with_capacity(k);
        let mut rest = mask;
        for j in (2..=k).rev() {
            let peeled = self.choice(rest, j).expect("reachable state has a choice");
            parts.push(peeled);
            rest ^= peeled.0;
        }
        parts.push(QubitSubset(rest));
        parts
    }

    /// One row per non-empty subset: index, rendered set, then `T` for
    /// `k = 1..=k_max` with `N.A` where unreachable.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,set");
        for k in 1..=self.k_max {
            out.push_str(&format!(",k={k}"));
        }
        out.push('\n');
        for mask in 1..=full_mask(self.n) {
            out.push_str(&format!("{mask},\"{}\"", QubitSubset(mask)));
            for k in 1..=self.k_max {
                match self.get(mask, k) {
                    Some(c) => out.push_str(&format!(",{c}")),
                    None => out.push_str(",N.A"),
                }
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct PartitionResult {
    pub assignment: PartitionAssignment,
    pub cost: u64,
    pub table: Option<DpTable>,
    /// True when a part-size cap was in force.
    pub constrained: bool,
}

#[derive(Debug, Clone)]
pub struct DpOptions {
    pub qubit_cap: usize,
    pub max_part_size: Option<usize>,
    /// Worker threads per level; 0 or 1 runs on the calling thread.
    pub threads: usize,
    /// Compute every `(mask, k)` state and keep the table in the result.
    pub retain_table: bool,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions {
            qubit_cap: DEFAULT_QUBIT_CAP,
            max_part_size: None,
            threads: 1,
            retain_table: false,
        }
    }
}

/// Minimum-communication partition of all qubits into exactly `k` parts.
pub fn dp_partition(w: &WeightMatrix, k: usize) -> Result<PartitionResult, PartitionError> {
    dp_partition_with(w, k, &DpOptions::default())
}

/// Like [`dp_partition`] with every part holding at most `max_part_size` qubits.
pub fn dp_partition_capped(
    w: &WeightMatrix,
    k: usize,
    max_part_size: usize,
) -> Result<PartitionResult, PartitionError> {
    dp_partition_with(
        w,
        k,
        &DpOptions {
            max_part_size: Some(max_part_size),
            ..DpOptions::default()
        },
    )
}

/// Full memo table over every non-empty subset and `1 <= k <= K`.
pub fn dp_table(w: &WeightMatrix, k: usize) -> Result<DpTable, PartitionError> {
    validate(w.n(), k, None, DEFAULT_QUBIT_CAP)?;
    Ok(solve(w, k, usize::MAX, true, 1))
}

pub fn dp_partition_with(
    w: &WeightMatrix,
    k: usize,
    opts: &DpOptions,
) -> Result<PartitionResult, PartitionError> {
    let n = w.n();
    validate(n, k, opts.max_part_size, opts.qubit_cap)?;
    let total = w.total();
    if total >= u64::from(UNREACHED) {
        return Err(PartitionError::WeightOverflow(total));
    }
    let cap = opts.max_part_size.unwrap_or(usize::MAX);
    let table = solve(w, k, cap, opts.retain_table, opts.threads);
    let full = full_mask(n);
    let cost = table
        .get(full, k)
        .expect("feasible request always reaches the full set");
    let assignment = PartitionAssignment::canonical(n, table.reconstruct(full, k));
    debug_assert_eq!(assignment.cost(w), cost);
    Ok(PartitionResult {
        assignment,
        cost,
        table: opts.retain_table.then_some(table),
        constrained: opts.max_part_size.is_some_and(|m| m < n),
    })
}

fn validate(
    n: usize,
    k: usize,
    max_part_size: Option<usize>,
    qubit_cap: usize,
) -> Result<(), PartitionError> {
    if k < 1 || k > n {
        return Err(PartitionError::PartsOutOfRange { k, n });
    }
    let cap = qubit_cap.min(MAX_QUBITS);
    if n > cap {
        return Err(PartitionError::TooManyQubits { n, cap });
    }
    if let Some(m) = max_part_size {
        if m == 0 || k.saturating_mul(m) < n {
            return Err(PartitionError::InfeasibleCap {
                k,
                max_part_size: m,
                n,
            });
        }
    }
    Ok(())
}

/// Weight of all pairs inside each mask.
fn internal_weights(w: &WeightMatrix) -> Vec<u32> {
    let n = w.n();
    let mut internal = vec![0u32; 1 << n];
    for mask in 1..(1u32 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let row = w.row(low);
        let cross: u64 = QubitSubset(rest).qubits().map(|q| row[q.0]).sum();
        internal[mask as usize] = internal[rest as usize] + cross as u32;
    }
    internal
}

fn solve(w: &WeightMatrix, k_max: usize, cap: usize, all_states: bool, threads: usize) -> DpTable {
    let n = w.n();
    let internal = internal_weights(w);
    let full = full_mask(n);
    let mut levels: Vec<Level> = Vec::with_capacity(k_max.saturating_sub(1));

    for j in 2..=k_max {
        // Without the full table, the remainder always keeps qubit 0, so only
        // masks containing it matter below the top level, and only the full
        // set at the top.
        let anchored = !all_states;
        let size = if anchored {
            1usize << (n - 1)
        } else {
            1usize << n
        };
        let top_only = !all_states && j == k_max;
        let prev = levels.last();
        let lookup = |rest: u32| -> u32 {
            match prev {
                None => {
                    if rest.count_ones() as usize <= cap {
                        0
                    } else {
                        UNREACHED
                    }
                }
                Some(level) => level.slot(rest).map_or(UNREACHED, |s| level.cost[s]),
            }
        };
        let cell = |slot: usize| -> (u32, u32) {
            let mask = if anchored {
                ((slot as u32) << 1) | 1
            } else {
                slot as u32
            };
            if mask == 0 || mask.count_ones() < j as u32 || (top_only && mask != full) {
                return (UNREACHED, 0);
            }
            best_split(mask, j, cap, &internal, &lookup)
        };

        let mut cost = vec![UNREACHED; size];
        let mut choice = vec![0u32; size];
        fill(&mut cost, &mut choice, &cell, threads);
        levels.push(Level {
            anchored,
            cost,
            choice,
        });
    }

    DpTable {
        n,
        k_max,
        max_part_size: cap,
        levels,
    }
}

/// Cheapest way to peel one part off `mask` at level `j`. Candidates are
/// visited in increasing mask order and only a strict improvement replaces
/// the incumbent, so ties go to the lowest mask.
fn best_split(
    mask: u32,
    j: usize,
    cap: usize,
    internal: &[u32],
    prev: &impl Fn(u32) -> u32,
) -> (u32, u32) {
    let low = mask & mask.wrapping_neg();
    let free = mask ^ low;
    let size = mask.count_ones() as usize;
    let max_peel = cap.min(size - (j - 1));
    let whole = internal[mask as usize];
    let mut best = (UNREACHED, 0);
    let mut sub = 0u32;
    loop {
        sub = sub.wrapping_sub(free) & free;
        if sub == 0 {
            break;
        }
        if sub.count_ones() as usize > max_peel {
            continue;
        }
        let rest = mask ^ sub;
        let below = prev(rest);
        if below == UNREACHED {
            continue;
        }
        let cut = whole - internal[sub as usize] - internal[rest as usize];
        let total = cut + below;
        if total < best.0 {
            best = (total, sub);
        }
    }
    best
}

#[cfg(feature = "parallel")]
fn fill(
    cost: &mut [u32],
    choice: &mut [u32],
    cell: &(impl Fn(usize) -> (u32, u32) + Sync),
    threads: usize,
) {
    use rayon::prelude::*;
    if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("failed to build thread pool");
        pool.install(|| {
            cost.par_iter_mut()
                .zip(choice.par_iter_mut())
                .enumerate()
                .for_each(|(slot, (c, s))| (*c, *s) = cell(slot));
        });
        return;
    }
    fill_serial(cost, choice, cell);
}

#[cfg(not(feature = "parallel"))]
fn fill(
    cost: &mut [u32],
    choice: &mut [u32],
    cell: &impl Fn(usize) -> (u32, u32),
    _threads: usize,
) {
    fill_serial(cost, choice, cell);
}

fn fill_serial(cost: &mut [u32], choice: &mut [u32], cell: &impl Fn(usize) -> (u32, u32)) {
    for (slot, (c, s)) in cost.iter_mut().zip(choice.iter_mut()).enumerate() {
        (*c, *s) = cell(slot);
    }
}
