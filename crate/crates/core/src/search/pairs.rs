//! `H(n)`: the largest `k` with two `k`-subsets of `[n]` whose subset sums
//! meet only at 0.
//!
//! Pairs are ordered and may coincide; a shared element is itself a common
//! nonzero sum, so only disjoint pairs can qualify.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bitset::Bitset;
use crate::config::Budgets;
use crate::error::{budget, Error, Result};
use crate::lattice::IntSet;
use crate::search::{h_exact, join_values};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairResult {
    pub optimum: usize,
    pub witness1: IntSet,
    pub witness2: IntSet,
    pub nodes_explored: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

fn sums(values: &[i64], cap: usize) -> Bitset {
    let mut b = Bitset::new(cap + 1);
    b.set(0);
    for &v in values {
        b.or_shift_up(v as usize);
    }
    b
}

fn share_nonzero(x: &Bitset, y: &Bitset) -> bool {
    x.ones().skip(1).any(|i| y.get(i))
}

/// Combinations of `k` items from `pool`, in lexicographic order.
fn combinations(pool: &[i64], k: usize) -> Vec<Vec<i64>> {
    fn rec(pool: &[i64], k: usize, start: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < k - cur.len() {
                break;
            }
            cur.push(pool[i]);
            rec(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(pool, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Lexicographically first pair of `k`-subsets with sums meeting only at 0.
fn first_pair(n: i64, k: usize, nodes: &mut u64) -> Option<(Vec<i64>, Vec<i64>)> {
    let all: Vec<i64> = (1..=n).collect();
    let cap = k * n as usize;
    for b1 in combinations(&all, k) {
        let s1 = sums(&b1, cap);
        let rest: Vec<i64> = all.iter().copied().filter(|v| !b1.contains(v)).collect();
        for b2 in combinations(&rest, k) {
            *nodes += 1;
            if !share_nonzero(&s1, &sums(&b2, cap)) {
                return Some((b1, b2));
            }
        }
    }
    None
}

/// Exact `H(n)`; the witness is the lexicographically smallest ordered pair.
pub fn big_h_exact(n: u64, budgets: &Budgets) -> Result<PairResult> {
    if n < 1 {
        return Err(Error::precondition("n must be at least 1"));
    }
    budget("H(n) search size", n as u128, budgets.max_pair_n as u128)?;
    let started = Instant::now();
    let mut nodes = 0;
    let mut best = (Vec::new(), Vec::new());
    // a pair of size k yields pairs of every smaller size, so stop at the first failure
    for k in 1..=(n as usize / 2) {
        match first_pair(n as i64, k, &mut nodes) {
            Some(pair) => best = pair,
            None => break,
        }
    }
    Ok(PairResult {
        optimum: best.0.len(),
        witness1: IntSet::from_ints(best.0)?,
        witness2: IntSet::from_ints(best.1)?,
        nodes_explored: nodes,
        wall_time: started.elapsed(),
    })
}

/// CSV with header `n,H,witness1,witness2`.
pub fn big_h_table_csv(rows: &[PairResult]) -> String {
    let mut s = String::from("n,H,witness1,witness2\n");
    for (i, r) in rows.iter().enumerate() {
        s.push_str(&format!(
            "{},{},{},{}\n",
            i + 1,
            r.optimum,
            join_values(&r.witness1),
            join_values(&r.witness2)
        ));
    }
    s
}

/// `h(n) <= 2 H(n) + 2`, both sides computed exactly.
pub fn check_h_le_2h_plus_2(n: u64, budgets: &Budgets) -> Result<bool> {
    let h = h_exact(n, None, budgets)?.optimum;
    let big_h = big_h_exact(n, budgets)?.optimum;
    Ok(h <= 2 * big_h + 2)
}
