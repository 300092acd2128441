//! Exact non-averaging verification.
//!
//! `A` is non-averaging when no `a ∈ A` is the mean of a nonempty subset of
//! `A \ {a}`. Both tests here are exact: one through zero-sum subsets of the
//! differences `b - a`, the other through disjointness of the subset-sum sets
//! `Σ(A1 - a)` and `Σ(a - A2)` over all splits.

use serde::{Deserialize, Serialize};

use crate::config::Budgets;
use crate::error::{budget, Result};
use crate::lattice::{add, is_zero, sub, IntSet, Point};
use crate::sumset::{sums_of_vectors, SumSet};
use crate::zero_sum::has_zero_sum_subset;

/// Certificate that `center` is the average of `subset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AveragingWitness {
    pub center: Point,
    pub subset: Vec<Point>,
}

impl AveragingWitness {
    /// Re-checks `|B| * a = Σ B` coordinate-wise in wide arithmetic.
    pub fn is_valid(&self) -> bool {
        if self.subset.is_empty() || self.subset.contains(&self.center) {
            return false;
        }
        let k = self.subset.len() as i128;
        (0..self.center.len()).all(|j| {
            let total: i128 = self.subset.iter().map(|b| b[j] as i128).sum();
            total == k * self.center[j] as i128
        })
    }
}

/// Returns `None` iff `a` is non-averaging, otherwise the witness with the
/// lexicographically smallest `(center, sorted subset)`.
pub fn is_non_averaging(a: &IntSet, budgets: &Budgets) -> Result<Option<AveragingWitness>> {
    for center in a.points() {
        let diffs = a
            .points()
            .iter()
            .filter(|b| *b != center)
            .map(|b| sub(b, center))
            .collect::<Result<Vec<_>>>()?;
        if let Some(zero_sum) = has_zero_sum_subset(a.dim(), &diffs, budgets)? {
            let subset = zero_sum
                .iter()
                .map(|d| add(d, center))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Some(AveragingWitness {
                center: center.clone(),
                subset,
            }));
        }
    }
    Ok(None)
}

/// A split `A = {a} ∪ A1 ∪ A2 ∪ rest` whose sum sets `Σ(A1 - a)` and
/// `Σ(a - A2)` share the nonzero element `common`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionViolation {
    pub center: Point,
    pub a1: Vec<Point>,
    pub a2: Vec<Point>,
    pub common: Point,
}

/// Checks `Σ(A1 - a) ∩ Σ(a - A2) = {0}` for every `a` and every pair of
/// disjoint `A1, A2 ⊆ A \ {a}`.
///
/// A violation `(A1, A2, c)` always comes with its mirror `(A2, A1, -c)`, so
/// only violations whose common element is lexicographically positive are
/// reported. The first one in `(a, A1, A2)` order is returned, with the
/// smallest positive common element.
pub fn erdos_straus_criterion(a: &IntSet, budgets: &Budgets) -> Result<Option<CriterionViolation>> {
    budget(
        "criterion set size",
        a.len() as u128,
        budgets.max_criterion_size as u128,
    )?;
    let dim = a.dim();
    for center in a.points() {
        let others: Vec<&Point> = a.points().iter().filter(|b| *b != center).collect();
        let m = others.len();
        // Subsets as masks, ordered lexicographically by their sorted lists.
        let mut masks: Vec<u32> = (0..1u32 << m).collect();
        masks.sort_by_key(|&x| mask_key(x, m));

        let left: Vec<SumSet> = (0..1u32 << m)
            .map(|mask| {
                let v = select(&others, mask)
                    .map(|b| sub(b, center))
                    .collect::<Result<Vec<_>>>()?;
                sums_of_vectors(dim, &v, budgets)
            })
            .collect::<Result<_>>()?;
        let right: Vec<SumSet> = (0..1u32 << m)
            .map(|mask| {
                let v = select(&others, mask)
                    .map(|b| sub(center, b))
                    .collect::<Result<Vec<_>>>()?;
                sums_of_vectors(dim, &v, budgets)
            })
            .collect::<Result<_>>()?;

        for &m1 in &masks {
            if !has_positive(&left[m1 as usize]) {
                continue;
            }
            for &m2 in masks.iter().filter(|&&m2| m1 & m2 == 0) {
                if let Some(common) = first_common_positive(&left[m1 as usize], &right[m2 as usize])
                {
                    return Ok(Some(CriterionViolation {
                        center: center.clone(),
                        a1: select(&others, m1).cloned().collect(),
                        a2: select(&others, m2).cloned().collect(),
                        common,
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn select<'a>(items: &'a [&'a Point], mask: u32) -> impl Iterator<Item = &'a Point> + 'a {
    items
        .iter()
        .enumerate()
        .filter(move |(i, _)| mask >> i & 1 == 1)
        .map(|(_, p)| *p)
}

/// Sort key making mask order agree with lexicographic order of the selected
/// (already sorted) elements: the list of selected indices.
fn mask_key(mask: u32, m: usize) -> Vec<usize> {
    (0..m).filter(|i| mask >> i & 1 == 1).collect()
}

fn is_positive(p: &[i64]) -> bool {
    p.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

fn has_positive(s: &SumSet) -> bool {
    match s.range_1d() {
        Some((_, hi)) => hi > 0,
        None => s.elements().iter().any(|p| is_positive(p)),
    }
}

fn first_common_positive(s1: &SumSet, s2: &SumSet) -> Option<Point> {
    if s1.dim() == 1 {
        let (_, hi1) = s1.range_1d()?;
        let (_, hi2) = s2.range_1d()?;
        let hi = hi1.min(hi2);
        return (1..=hi)
            .map(|v| vec![v])
            .find(|p| s1.contains(p) && s2.contains(p));
    }
    s1.elements()
        .into_iter()
        .filter(|p| !is_zero(p) && is_positive(p))
        .find(|p| s2.contains(p))
}
