//! Zero-sum sub-multisets, the reduction engine behind the non-averaging test.

use std::collections::HashSet;

use crate::bitset::Bitset;
use crate::config::Budgets;
use crate::error::{budget, Error, Result};
use crate::lattice::{add, is_zero, neg, Point};

/// Reachable sums of every suffix `V[j..]` of the sorted input.
enum SuffixSums {
    Dense { offset: i128, sets: Vec<Bitset> },
    Sparse(Vec<HashSet<Point>>),
}

impl SuffixSums {
    fn build(vectors: &[Point], dim: usize, budgets: &Budgets) -> Result<Self> {
        let n = vectors.len();
        if dim == 1 {
            let lo: i128 = vectors.iter().map(|v| v[0].min(0) as i128).sum();
            let hi: i128 = vectors.iter().map(|v| v[0].max(0) as i128).sum();
            let cells = (hi - lo + 1) as u128;
            budget(
                "zero-sum table cells",
                cells.saturating_mul(n as u128 + 1),
                budgets.max_sum_cells as u128,
            )?;
            let mut sets = vec![Bitset::new(cells as usize); n + 1];
            sets[n].set((-lo) as usize);
            for j in (0..n).rev() {
                let mut s = sets[j + 1].clone();
                let v = vectors[j][0];
                if v > 0 {
                    s.or_shift_up(v as usize);
                } else {
                    s.or_shift_down(v.unsigned_abs() as usize);
                }
                sets[j] = s;
            }
            Ok(SuffixSums::Dense { offset: lo, sets })
        } else {
            let mut sets = vec![HashSet::new(); n + 1];
            sets[n].insert(vec![0; dim]);
            let mut total = 1u128;
            for j in (0..n).rev() {
                let mut s = sets[j + 1].clone();
                for p in &sets[j + 1] {
                    s.insert(add(p, &vectors[j])?);
                }
                total += s.len() as u128;
                budget("zero-sum table tuples", total, budgets.max_tuples as u128)?;
                sets[j] = s;
            }
            Ok(SuffixSums::Sparse(sets))
        }
    }

    fn reachable(&self, j: usize, target: &[i64]) -> bool {
        match self {
            SuffixSums::Dense { offset, sets } => {
                let idx = target[0] as i128 - offset;
                idx >= 0 && sets[j].get(idx as usize)
            }
            SuffixSums::Sparse(sets) => sets[j].contains(target),
        }
    }
}

/// Finds a nonempty sub-multiset of `vectors` summing to zero.
///
/// The returned witness is sorted and is the lexicographically smallest such
/// list. Zero vectors are rejected: callers strip them.
pub fn has_zero_sum_subset(
    dim: usize,
    vectors: &[Point],
    budgets: &Budgets,
) -> Result<Option<Vec<Point>>> {
    if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: v.len(),
        });
    }
    if vectors.iter().any(|v| is_zero(v)) {
        return Err(Error::invalid("zero vector in zero-sum input"));
    }
    let mut sorted = vectors.to_vec();
    sorted.sort();
    let table = SuffixSums::build(&sorted, dim, budgets)?;

    // Greedy over the sorted order: at each step take the smallest vector
    // that either closes the sum or admits a completion from later indices.
    let mut witness = Vec::new();
    let mut partial = vec![0; dim];
    let mut start = 0;
    loop {
        let mut chosen = None;
        for j in start..sorted.len() {
            if j > start && sorted[j] == sorted[j - 1] {
                continue;
            }
            let next = add(&partial, &sorted[j])?;
            if is_zero(&next) {
                witness.push(sorted[j].clone());
                return Ok(Some(witness));
            }
            if table.reachable(j + 1, &neg(&next)?) {
                chosen = Some((j, next));
                break;
            }
        }
        let Some((j, next)) = chosen else {
            debug_assert!(witness.is_empty(), "greedy step lost feasibility");
            return Ok(None);
        };
        witness.push(sorted[j].clone());
        partial = next;
        start = j + 1;
    }
}
