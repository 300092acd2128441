//! Exact extremal values `h(n)` and `H(n)`, plus maxima over small boxes.

mod engine;
mod pairs;

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::config::Budgets;
use crate::error::{budget, Error, Result};
use crate::lattice::{IntSet, Point};
use engine::{search_parallel, search_serial, DenseSums, SparseSums, Universe};

pub use pairs::{big_h_exact, big_h_table_csv, check_h_le_2h_plus_2, PairResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub optimum: usize,
    pub witness: IntSet,
    pub nodes_explored: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

fn check_workers(workers: Option<usize>) -> Result<Option<usize>> {
    match workers {
        Some(0) => Err(Error::invalid("worker count must be positive")),
        w => Ok(w),
    }
}

/// Exact `h(n)` with the lexicographically smallest maximum witness.
///
/// Values `h(1..n)` are computed first and used as tail bounds: whatever is
/// added above `x` is a non-averaging subset of an interval of length `n - x`.
pub fn h_exact(n: u64, workers: Option<usize>, budgets: &Budgets) -> Result<SearchResult> {
    Ok(h_table(n, workers, budgets)?
        .pop()
        .expect("table is nonempty for n >= 1"))
}

/// `h(1), ..., h(n_max)`.
pub fn h_table(n_max: u64, workers: Option<usize>, budgets: &Budgets) -> Result<Vec<SearchResult>> {
    if n_max < 1 {
        return Err(Error::precondition("n must be at least 1"));
    }
    budget("h(n) search size", n_max as u128, budgets.max_h_n as u128)?;
    let workers = check_workers(workers)?;
    let mut table: Vec<usize> = vec![0];
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max as i64 {
        let started = Instant::now();
        let universe = Universe::new((1..=n).collect());
        let known = &table;
        // index x holds value x + 1; n - x - 1 values remain above it
        let tail = move |x: usize| known[n as usize - x - 1];
        let outcome = match workers {
            Some(k) if k > 1 => search_parallel::<DenseSums>(&universe, Some(&tail), k),
            _ => search_serial::<DenseSums>(&universe, Some(&tail)),
        };
        let witness = IntSet::from_ints(outcome.best.iter().map(|&i| i as i64 + 1))?;
        table.push(witness.len());
        out.push(SearchResult {
            optimum: witness.len(),
            witness,
            nodes_explored: outcome.nodes,
            wall_time: started.elapsed(),
        });
    }
    Ok(out)
}

/// CSV with header `n,h,witness`; witnesses are `;`-joined.
pub fn h_table_csv(rows: &[SearchResult]) -> String {
    let mut s = String::from("n,h,witness\n");
    for (i, r) in rows.iter().enumerate() {
        s.push_str(&format!(
            "{},{},{}\n",
            i + 1,
            r.optimum,
            join_values(&r.witness)
        ));
    }
    s
}

pub(crate) fn join_values(set: &IntSet) -> String {
    set.points()
        .iter()
        .map(|p| p.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(";")
}

/// Largest non-averaging subset of the box `[d_1] x ... x [d_k]`.
///
/// Box points are flattened by a base-`H` map (first coordinate most
/// significant) with `H` large enough that no sum of at most `cells`
/// differences carries between digits, so the flattening preserves both the
/// lexicographic order and every averaging relation.
pub fn max_non_averaging_box(
    dims: &[u64],
    workers: Option<usize>,
    budgets: &Budgets,
) -> Result<SearchResult> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::precondition("box dimensions must be positive"));
    }
    let cells = dims
        .iter()
        .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
        .ok_or(Error::Overflow("box cells"))?;
    budget("box cells", cells, budgets.max_box_cells as u128)?;
    let workers = check_workers(workers)?;
    let started = Instant::now();

    let max_digit = dims.iter().max().copied().unwrap_or(1) as i128 - 1;
    let base = (2 * cells as i128 * max_digit + 1).max(2);
    let points = box_points(dims);
    let encode = |p: &Point| -> Result<i64> {
        let mut v: i128 = 0;
        for &x in p {
            v = v * base + (x - 1) as i128;
        }
        i64::try_from(v).map_err(|_| Error::Overflow("box flattening"))
    };
    let values = points.iter().map(encode).collect::<Result<Vec<_>>>()?;
    // positive sums reach at most cells * (max value); keep clear of i64 limits
    let top = *values.last().unwrap() as i128 * (cells as i128 + 1);
    if top > i64::MAX as i128 {
        return Err(Error::Overflow("box flattening"));
    }
    let universe = Universe::new(values);
    let outcome = match workers {
        Some(k) if k > 1 => search_parallel::<SparseSums>(&universe, None, k),
        _ => search_serial::<SparseSums>(&universe, None),
    };
    let witness = IntSet::new(
        dims.len(),
        outcome.best.iter().map(|&i| points[i].clone()).collect(),
    )?;
    Ok(SearchResult {
        optimum: witness.len(),
        witness,
        nodes_explored: outcome.nodes,
        wall_time: started.elapsed(),
    })
}

/// Box points in lexicographic order, coordinates starting at 1.
fn box_points(dims: &[u64]) -> Vec<Point> {
    let mut out = Vec::new();
    let mut p: Point = vec![1; dims.len()];
    loop {
        out.push(p.clone());
        let Some(pos) = p.iter().zip(dims).rposition(|(&x, &d)| (x as u64) < d) else {
            return out;
        };
        p[pos] += 1;
        p[pos + 1..].iter_mut().for_each(|x| *x = 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_small_values() {
        let b = Budgets::default();
        let r = h_exact(1, None, &b).unwrap();
        assert_eq!((r.optimum, r.witness.values().unwrap()), (1, vec![1]));
        let r = h_exact(3, None, &b).unwrap();
        assert_eq!((r.optimum, r.witness.values().unwrap()), (2, vec![1, 2]));
        let r = h_exact(4, None, &b).unwrap();
        assert_eq!((r.optimum, r.witness.values().unwrap()), (3, vec![1, 2, 4]));
    }

    #[test]
    fn table_and_csv() {
        let rows = h_table(4, None, &Budgets::default()).unwrap();
        let h: Vec<usize> = rows.iter().map(|r| r.optimum).collect();
        assert_eq!(h, vec![1, 2, 2, 3]);
        assert_eq!(
            h_table_csv(&rows),
            "n,h,witness\n1,1,1\n2,2,1;2\n3,2,1;2\n4,3,1;2;4\n"
        );
        assert_eq!(h_table(1, None, &Budgets::default()).unwrap().len(), 1);
    }

    #[test]
    fn h_budget_and_args() {
        let b = Budgets {
            max_h_n: 10,
            ..Budgets::default()
        };
        assert!(h_exact(11, None, &b).unwrap_err().is_budget());
        assert!(h_exact(0, None, &b).is_err());
        assert!(h_exact(5, Some(0), &b).is_err());
    }

    #[test]
    fn box_examples() {
        let b = Budgets::default();
        let r = max_non_averaging_box(&[2, 2], None, &b).unwrap();
        assert_eq!(r.optimum, 4);
        assert_eq!(r.witness.len(), 4);
        assert_eq!(max_non_averaging_box(&[3], None, &b).unwrap().optimum, 2);
        let r = max_non_averaging_box(&[1, 1], None, &b).unwrap();
        assert_eq!(r.witness.points(), &[vec![1, 1]]);
        assert!(max_non_averaging_box(&[5, 5], None, &b)
            .unwrap_err()
            .is_budget());
    }

    #[test]
    fn box_points_order() {
        assert_eq!(
            box_points(&[2, 2]),
            vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]
        );
    }
}
