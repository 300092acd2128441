//! Brute-force oracles written straight from the definitions. They share no
//! code with the library kernels they are compared against.

#![allow(dead_code)]

use std::cmp::Ordering;

/// `A` is non-averaging iff no `a ∈ A` equals the mean of a nonempty subset
/// of `A \ {a}`. Enumerates every subset.
pub fn naive_non_averaging(points: &[Vec<i64>]) -> bool {
    let n = points.len();
    assert!(n <= 20, "naive oracle is exponential");
    let dim = points.first().map_or(0, Vec::len);
    for (ai, a) in points.iter().enumerate() {
        for mask in 1u32..1 << n {
            if mask >> ai & 1 == 1 {
                continue;
            }
            let k = mask.count_ones() as i64;
            let mut sum = vec![0i64; dim];
            for (j, p) in points.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    for (s, x) in sum.iter_mut().zip(p) {
                        *s += x;
                    }
                }
            }
            if sum.iter().zip(a).all(|(s, x)| *s == k * x) {
                return false;
            }
        }
    }
    true
}

/// Whether adding `x` above every element of the non-averaging set `a`
/// keeps it non-averaging: `x` must not be a mean of a subset of `a`, and no
/// `c ∈ a` may be the mean of `S ∪ {x}` with `S ⊆ a \ {c}`.
fn extends(a: &[i64], x: i64) -> bool {
    let k = a.len();
    for mask in 0u32..1 << k {
        let size = mask.count_ones() as i64;
        let sum: i64 = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).sum();
        if size > 0 && sum == size * x {
            return false;
        }
        for (ci, &c) in a.iter().enumerate() {
            if mask >> ci & 1 == 0 && sum + x == (size + 1) * c {
                return false;
            }
        }
    }
    true
}

/// `h(n)` and the lexicographically smallest maximum witness for every
/// `n <= n_max`, from one depth-first enumeration of all non-averaging
/// subsets of `[n_max]` in lexicographic order.
pub fn exhaustive_h_table(n_max: i64) -> Vec<(usize, Vec<i64>)> {
    let mut best: Vec<(usize, Vec<i64>)> = vec![(0, Vec::new()); n_max as usize + 1];
    fn visit(cur: &mut Vec<i64>, n_max: i64, best: &mut [(usize, Vec<i64>)]) {
        if let Some(&top) = cur.last() {
            for n in top..=n_max {
                let slot = &mut best[n as usize];
                if cur.len() > slot.0 {
                    *slot = (cur.len(), cur.clone());
                }
            }
        }
        let start = cur.last().map_or(1, |&t| t + 1);
        for x in start..=n_max {
            if extends(cur, x) {
                cur.push(x);
                visit(cur, n_max, best);
                cur.pop();
            }
        }
    }
    visit(&mut Vec::new(), n_max, &mut best);
    best.remove(0);
    best
}

/// Subset sums of `values`, as a sorted list.
pub fn naive_subset_sums(values: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = (0u32..1 << values.len())
        .map(|mask| {
            (0..values.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| values[i])
                .sum()
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Whether two sum sets meet outside 0.
pub fn sums_meet_nonzero(x: &[i64], y: &[i64]) -> bool {
    let ys = naive_subset_sums(y);
    naive_subset_sums(x)
        .into_iter()
        .any(|s| s != 0 && ys.binary_search(&s).is_ok())
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cross(a: &[i128], b: &[i128]) -> Vec<i128> {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Number of points of `points` in the closed halfspace
/// `{x : u(t)·(x - a) >= 0}` for `u(t) = u0 + t u1 + t^2 u2` and tiny `t > 0`.
fn perturbed_count(a: &[i64], points: &[Vec<i64>], dirs: &[Vec<i128>]) -> usize {
    points
        .iter()
        .filter(|p| {
            let v: Vec<i128> = p.iter().zip(a).map(|(x, y)| (*x - *y) as i128).collect();
            let sign = dirs
                .iter()
                .map(|u| dot(u, &v).cmp(&0))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal);
            sign != Ordering::Less
        })
        .count()
}

/// Tukey depth of `a` by trying every halfspace whose boundary passes
/// through `a` and one or two other points, each with every symbolic tilt,
/// plus the coordinate directions.
pub fn brute_depth(a: &[i64], points: &[Vec<i64>]) -> usize {
    let d = a.len();
    let diffs: Vec<Vec<i128>> = points
        .iter()
        .filter(|p| p.as_slice() != a)
        .map(|p| p.iter().zip(a).map(|(x, y)| (*x - *y) as i128).collect())
        .collect();
    let mut candidates: Vec<Vec<Vec<i128>>> = Vec::new();
    for i in 0..d {
        let mut e = vec![0i128; d];
        e[i] = 1;
        candidates.push(vec![e.clone()]);
        e[i] = -1;
        candidates.push(vec![e]);
    }
    let flip = |v: &[i128]| v.iter().map(|x| -x).collect::<Vec<_>>();
    match d {
        2 => {
            for v in &diffs {
                let normal = vec![-v[1], v[0]];
                for n in [normal.clone(), flip(&normal)] {
                    for t in [v.clone(), flip(v)] {
                        candidates.push(vec![n.clone(), t]);
                    }
                }
            }
        }
        3 => {
            let mut normals = Vec::new();
            for i in 0..diffs.len() {
                normals.push(diffs[i].clone());
                for j in i + 1..diffs.len() {
                    let c = cross(&diffs[i], &diffs[j]);
                    if c.iter().any(|&x| x != 0) {
                        normals.push(c);
                    }
                }
            }
            for n0 in &normals {
                for u0 in [n0.clone(), flip(n0)] {
                    candidates.push(vec![u0.clone()]);
                    for v in &diffs {
                        let w = cross(&u0, v);
                        if w.iter().all(|&x| x == 0) {
                            continue;
                        }
                        for u1 in [w.clone(), flip(&w)] {
                            let w2 = cross(&u0, &u1);
                            for u2 in [w2.clone(), flip(&w2)] {
                                candidates.push(vec![u0.clone(), u1.clone(), u2]);
                            }
                        }
                    }
                }
            }
        }
        _ => panic!("oracle covers dimensions 2 and 3"),
    }
    candidates
        .iter()
        .map(|dirs| perturbed_count(a, points, dirs))
        .min()
        .expect("candidates exist")
}

/// `H(n)` over all ordered pairs of `k`-subsets of `[n]`, overlapping or not.
/// Subset sums are kept as `u128` bit masks, so `n <= 15`.
pub fn pair_h_any_overlap(n: u32) -> usize {
    assert!(n <= 15);
    let sums = |mask: u32| -> u128 {
        let mut s: u128 = 1;
        for i in 0..n {
            if mask >> i & 1 == 1 {
                s |= s << (i + 1);
            }
        }
        s
    };
    let mut best = 0;
    for k in 1..=n {
        let masks: Vec<(u32, u128)> = (0u32..1 << n)
            .filter(|m| m.count_ones() == k)
            .map(|m| (m, sums(m)))
            .collect();
        let found = masks
            .iter()
            .any(|(_, s1)| masks.iter().any(|(_, s2)| (s1 & s2) >> 1 == 0));
        if !found {
            break;
        }
        best = k as usize;
    }
    best
}
