use serde::{Deserialize, Serialize};

/// Resource limits. Exceeding any of them is reported as
/// [`Error::Budget`](crate::Error::Budget), never silently truncated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Cells of a dense 1-D subset-sum bit vector.
    pub max_sum_cells: u64,
    /// Distinct tuples held by a higher-dimensional sum set.
    pub max_tuples: u64,
    /// Largest set accepted by the partition-based criterion.
    pub max_criterion_size: usize,
    /// Largest `n` for the exact `h(n)` search.
    pub max_h_n: u64,
    /// Largest box (in lattice cells) for the exact box search.
    pub max_box_cells: u64,
    /// Largest `n` for the exact disjoint-sums pair search.
    pub max_pair_n: u64,
    /// Points produced by a construction or enumerated from a progression.
    pub max_points: u64,
    /// Rounding attempts before the zonotope sampler falls back.
    pub retries: u32,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_sum_cells: 100_000_000,
            max_tuples: 10_000_000,
            max_criterion_size: 12,
            max_h_n: 64,
            max_box_cells: 24,
            max_pair_n: 12,
            max_points: 10_000_000,
            retries: 1000,
        }
    }
}
