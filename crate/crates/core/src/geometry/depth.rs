//! Exact Tukey depth with closed halfspaces.
//!
//! For `a ∈ A` the depth is the minimum of `|A ∩ H|` over closed halfspaces
//! `H` whose boundary passes through `a`. Writing `v = p - a`, this equals
//! `|A| - max_u #{v : u·v > 0}`, so every routine below computes the largest
//! number of difference vectors in an open halfspace.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::points::PointSet;
use crate::parallel::par_map;
use crate::rational::Rational;

/// Coordinates up to this magnitude are handled in `i128`; larger ones fall
/// back to big integers. The 3-D sweep multiplies four coordinates.
const SMALL_COORD: i64 = 1 << 28;

trait Exact: Clone + Ord + Signed {}
impl<T: Clone + Ord + Signed> Exact for T {}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DepthReport {
    #[serde(serialize_with = "ser_per_point")]
    pub per_point: Vec<(Vec<Rational>, usize)>,
    pub max_depth: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub min_delta: Rational,
}

fn ser_per_point<S: serde::Serializer>(
    v: &[(Vec<Rational>, usize)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use crate::rational::format_rational;
    #[derive(Serialize)]
    struct Entry {
        point: Vec<String>,
        depth: usize,
    }
    s.collect_seq(v.iter().map(|(p, d)| Entry {
        point: p.iter().map(format_rational).collect(),
        depth: *d,
    }))
}

/// Tukey depth of `a` in `set`. Dimensions 2 and 3 use exact sweeps; other
/// dimensions use [`brute_force_depth`].
pub fn tukey_depth(a: &[Rational], set: &PointSet) -> Result<usize> {
    if a.len() != set.dim() {
        return Err(Error::DimensionMismatch {
            expected: set.dim(),
            got: a.len(),
        });
    }
    if !set.contains(a) {
        return Err(Error::precondition(
            "the query point must belong to the set",
        ));
    }
    let diffs = set.scaled_differences(a);
    let open = match set.dim() {
        2 | 3 => match small(&diffs) {
            Some(v) => max_open_fast(set.dim(), &v),
            None => max_open_fast(set.dim(), &diffs),
        },
        d => {
            if d > 3 {
                log::warn!("tukey depth in dimension {d} uses the exhaustive oracle, cost grows like |A|^{d}");
            }
            max_open_brute(diffs)
        }
    };
    Ok(set.len() - open)
}

/// Exhaustive depth in any dimension, enumerating the vertices of the
/// arrangement of hyperplanes `{u : u·v = 0}` recursively.
pub fn brute_force_depth(a: &[Rational], set: &PointSet) -> Result<usize> {
    if !set.contains(a) {
        return Err(Error::precondition(
            "the query point must belong to the set",
        ));
    }
    Ok(set.len() - max_open_brute(set.scaled_differences(a)))
}

/// Depth of every point, computed on up to `workers` threads.
pub fn depth_report(set: &PointSet, workers: usize) -> Result<DepthReport> {
    if set.is_empty() {
        return Err(Error::invalid("depth of an empty set"));
    }
    let depths = par_map(set.points(), workers, |p| tukey_depth(p, set));
    let per_point = set
        .points()
        .iter()
        .cloned()
        .zip(depths)
        .map(|(p, d)| d.map(|d| (p, d)))
        .collect::<Result<Vec<_>>>()?;
    let max_depth = per_point.iter().map(|(_, d)| *d).max().unwrap_or(0);
    Ok(DepthReport {
        min_delta: BigRational::new(max_depth.into(), set.len().into()),
        per_point,
        max_depth,
    })
}

/// `A` is in δ-convex position when every point has depth at most `δ|A|`.
pub fn is_delta_convex(
    set: &PointSet,
    delta: &Rational,
    workers: usize,
) -> Result<(bool, DepthReport)> {
    let report = depth_report(set, workers)?;
    Ok((&report.min_delta <= delta, report))
}

fn small(diffs: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    diffs
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| {
                    x.to_i64()
                        .filter(|x| x.abs() <= SMALL_COORD)
                        .map(i128::from)
                })
                .collect()
        })
        .collect()
}

fn sign<T: Exact>(x: &T) -> Ordering {
    x.cmp(&T::zero())
}

fn dot<T: Exact>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn cross<T: Exact>(a: &[T], b: &[T]) -> [T; 3] {
    let m = |i: usize, j: usize| a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
    [m(1, 2), m(2, 0), m(0, 1)]
}

/// Largest number of the nonzero planar vectors `vs` lying in an open
/// half-plane through the origin. `orient(a, b)` is the sign of the
/// determinant `det(a, b)` and `codir(a, b)` the sign of `a·b`; `reference`
/// is any nonzero vector of the plane.
fn max_open_half_plane<V>(
    vs: &[V],
    reference: &V,
    orient: impl Fn(&V, &V) -> Ordering,
    codir: impl Fn(&V, &V) -> Ordering,
) -> usize {
    let k = vs.len();
    if k == 0 {
        return 0;
    }
    let upper = |v: &V| {
        let o = orient(reference, v);
        o == Ordering::Greater || (o == Ordering::Equal && codir(reference, v) == Ordering::Greater)
    };
    let mut sorted: Vec<(bool, &V)> = vs.iter().map(|v| (!upper(v), v)).collect();
    sorted.sort_by(|(ha, a), (hb, b)| ha.cmp(hb).then_with(|| orient(b, a)));
    // An open half-plane holding some vectors can be rotated until its
    // boundary sits just before its first vector, so it is one of the
    // angular windows [θ_i, θ_i + π).
    let in_window = |from: &V, v: &V| {
        let o = orient(from, v);
        o == Ordering::Greater || (o == Ordering::Equal && codir(from, v) == Ordering::Greater)
    };
    let mut best = 0;
    let mut j = 0;
    for i in 0..k {
        j = j.max(i);
        while j < i + k && in_window(sorted[i].1, sorted[j % k].1) {
            j += 1;
        }
        best = best.max(j - i);
    }
    best
}

fn max_open_fast<T: Exact>(dim: usize, vs: &[Vec<T>]) -> usize {
    match dim {
        2 => max_open_half_plane(
            vs,
            &vec![T::one(), T::zero()],
            |a, b| sign(&(a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone())),
            |a, b| sign(&dot(a, b)),
        ),
        3 => max_open_3d(vs),
        _ => unreachable!("fast path only covers dimensions 2 and 3"),
    }
}

/// Every open cell of the great-circle arrangement has a vertex `u0 = ±vi×vj`
/// in its closure unless all vectors are collinear. Near `u0` the count is
/// `#{u0·v > 0}` plus the best open half-plane among the vectors orthogonal
/// to `u0`, measured in the plane `u0^⊥`.
fn max_open_3d<T: Exact>(vs: &[Vec<T>]) -> usize {
    let n = vs.len();
    let mut best = None;
    for i in 0..n {
        for j in i + 1..n {
            let c = cross(&vs[i], &vs[j]);
            if c.iter().all(Zero::is_zero) {
                continue;
            }
            let (mut pos, mut neg) = (0, 0);
            let mut plane = Vec::new();
            for v in vs {
                match sign(&dot(&c, v)) {
                    Ordering::Greater => pos += 1,
                    Ordering::Less => neg += 1,
                    Ordering::Equal => plane.push(v),
                }
            }
            let in_plane = max_open_half_plane(
                &plane,
                &&vs[i],
                |a, b| sign(&dot(&c, &cross(a, b))),
                |a, b| sign(&dot(a, b)),
            );
            let total = pos.max(neg) + in_plane;
            best = best.max(Some(total));
        }
    }
    best.unwrap_or_else(|| {
        // all vectors on one line through the origin
        match vs.first() {
            None => 0,
            Some(first) => {
                let same = vs
                    .iter()
                    .filter(|v| sign(&dot(first, v)) == Ordering::Greater)
                    .count();
                same.max(n - same)
            }
        }
    })
}

fn max_open_brute(vs: Vec<Vec<BigInt>>) -> usize {
    let vs: Vec<Vec<BigInt>> = vs
        .into_iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    if vs.is_empty() {
        return 0;
    }
    let basis = independent_subset(&vs);
    let r = basis.len();
    let vs: Vec<Vec<BigInt>> = if r < vs[0].len() {
        // coordinates in span(vs) via the injective map w -> (b·w)_b
        vs.iter()
            .map(|v| basis.iter().map(|&b| dot(&vs[b], v)).collect())
            .collect()
    } else {
        vs
    };
    if r == 1 {
        let pos = vs.iter().filter(|v| v[0].is_positive()).count();
        return pos.max(vs.len() - pos);
    }
    let mut best = 0;
    for subset in combinations(vs.len(), r - 1) {
        let rows: Vec<&Vec<BigInt>> = subset.iter().map(|&i| &vs[i]).collect();
        let normal = cofactor_normal(&rows);
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let (mut pos, mut neg) = (0, 0);
        let mut plane = Vec::new();
        for v in &vs {
            match sign(&dot(&normal, v)) {
                Ordering::Greater => pos += 1,
                Ordering::Less => neg += 1,
                Ordering::Equal => plane.push(rows.iter().map(|b| dot(b, v)).collect()),
            }
        }
        best = best.max(pos.max(neg) + max_open_brute(plane));
    }
    best
}

fn independent_subset(vs: &[Vec<BigInt>]) -> Vec<usize> {
    let mut echelon: Vec<Vec<BigRational>> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, v) in vs.iter().enumerate() {
        let mut w: Vec<BigRational> = v
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        for row in &echelon {
            let p = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("echelon rows are nonzero");
            if !w[p].is_zero() {
                let f = &w[p] / &row[p];
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi -= &f * ri;
                }
            }
        }
        if w.iter().any(|x| !x.is_zero()) {
            echelon.push(w);
            chosen.push(idx);
        }
    }
    chosen
}

/// Generalized cross product of `k - 1` vectors in `Z^k`.
fn cofactor_normal(rows: &[&Vec<BigInt>]) -> Vec<BigInt> {
    let k = rows.len() + 1;
    (0..k)
        .map(|col| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| (0..k).filter(|&c| c != col).map(|c| r[c].clone()).collect())
                .collect();
            let d = determinant(minor);
            if col % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Fraction-free Bareiss elimination.
fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
