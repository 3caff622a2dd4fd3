//! Brute-force reference partitioner.
//!
//! Walks every set partition of the qubits into exactly `k` blocks as a
//! restricted growth string (qubit 0 in block 0, each later qubit in an
//! existing block or the next new one) and keeps the cheapest. Shares no
//! code with the subset DP beyond the assignment type.

use crate::bigraph::WeightMatrix;
use crate::partition::{PartitionAssignment, PartitionError, PartitionResult};

pub const DEFAULT_ORACLE_CAP: usize = 12;

pub fn oracle_partition(w: &WeightMatrix, k: usize) -> Result<PartitionResult, PartitionError> {
    oracle_partition_with_cap(w, k, DEFAULT_ORACLE_CAP)
}

pub fn oracle_partition_with_cap(
    w: &WeightMatrix,
    k: usize,
    cap: usize,
) -> Result<PartitionResult, PartitionError> {
    let n = w.n();
    if k < 1 || k > n {
        return Err(PartitionError::PartsOutOfRange { k, n });
    }
    if n > cap {
        return Err(PartitionError::TooManyQubits { n, cap });
    }
    let mut search = Search {
        w,
        n,
        k,
        labels: vec![0; n],
        best_cost: u64::MAX,
        best: Vec::new(),
    };
    search.descend(1, 1, 0);
    let assignment = PartitionAssignment::from_labels(&search.best)?;
    Ok(PartitionResult {
        assignment,
        cost: search.best_cost,
        table: None,
        constrained: false,
    })
}

struct Search<'a> {
    w: &'a WeightMatrix,
    n: usize,
    k: usize,
    labels: Vec<usize>,
    best_cost: u64,
    best: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, i: usize, used: usize, cost: u64) {
        if i == self.n {
            if used == self.k && cost < self.best_cost {
                self.best_cost = cost;
                self.best = self.labels.clone();
            }
            return;
        }
        let remaining_after = self.n - i - 1;
        for block in 0..=used.min(self.k - 1) {
            let now_used = used.max(block + 1);
            if now_used + remaining_after < self.k {
                continue;
            }
            let added: u64 = (0..i)
                .filter(|&j| self.labels[j] != block)
                .map(|j| self.w.get(i, j))
                .sum();
            self.labels[i] = block;
            self.descend(i + 1, now_used, cost + added);
        }
    }
}

/// Number of set partitions of `n` items into `k` non-empty blocks.
pub fn stirling2(n: usize, k: usize) -> u128 {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=k).rev() {
            row[j] = j as u128 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}
