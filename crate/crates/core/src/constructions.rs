//! Explicit non-averaging sets and disjoint-subset-sum pairs.

use std::collections::BTreeMap;

use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::averaging::is_non_averaging;
use crate::config::Budgets;
use crate::error::{budget, Error, Result};
use crate::lattice::{BoundingBox, IntSet};
use crate::rational::{format_rational, Rational};

/// Provenance of a constructed set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionMeta {
    pub name: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub claimed_box: BoundingBox,
    pub claimed_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub set: IntSet,
    pub meta: ConstructionMeta,
}

impl Construction {
    /// The produced set has the claimed size and lies in the claimed box.
    pub fn is_consistent(&self) -> bool {
        self.set.len() == self.meta.claimed_size
            && self
                .set
                .points()
                .iter()
                .all(|p| self.meta.claimed_box.contains(p))
    }
}

/// `{ i q^3 + i(i+1)/2 : 1 <= i <= q-1 }`, a non-averaging subset of `[q^4]`.
pub fn bosznay(q: i64) -> Result<Construction> {
    if q < 2 {
        return Err(Error::precondition("bosznay needs q >= 2"));
    }
    let overflow = || Error::Overflow("bosznay");
    let q3 = q.checked_pow(3).ok_or_else(overflow)?;
    let n = q.checked_pow(4).ok_or_else(overflow)?;
    let values = (1..q)
        .map(|i| {
            let tri = i.checked_mul(i + 1).ok_or_else(overflow)? / 2;
            i.checked_mul(q3)
                .and_then(|v| v.checked_add(tri))
                .ok_or_else(overflow)
        })
        .collect::<Result<Vec<_>>>()?;
    let set = IntSet::from_ints(values)?;
    Ok(Construction {
        meta: ConstructionMeta {
            name: "bosznay".into(),
            params: BTreeMap::from([("q".into(), q.into())]),
            claimed_box: BoundingBox::new(vec![1], vec![n])?,
            claimed_size: set.len(),
        },
        set,
    })
}

/// Integer points `(x, |x|^2)` for `x ∈ [m]^{d-1}`.
pub fn paraboloid(d: usize, m: i64, budgets: &Budgets) -> Result<Construction> {
    if d < 2 || m < 1 {
        return Err(Error::precondition("paraboloid needs d >= 2 and m >= 1"));
    }
    let count = (m as u128)
        .checked_pow(d as u32 - 1)
        .ok_or(Error::Overflow("paraboloid size"))?;
    budget("paraboloid points", count, budgets.max_points as u128)?;
    let k = d as i64 - 1;
    let top = m
        .checked_mul(m)
        .and_then(|mm| mm.checked_mul(k))
        .ok_or(Error::Overflow("paraboloid height"))?;

    let mut points = Vec::with_capacity(count as usize);
    let mut x = vec![1i64; d - 1];
    loop {
        let norm: i64 = x.iter().map(|v| v * v).sum();
        let mut p = x.clone();
        p.push(norm);
        points.push(p);
        // odometer over [1, m]^{d-1}
        let Some(pos) = x.iter().rposition(|&v| v < m) else {
            break;
        };
        x[pos] += 1;
        x[pos + 1..].iter_mut().for_each(|v| *v = 1);
    }
    let set = IntSet::new(d, points)?;
    let mut min = vec![1; d - 1];
    min.push(k);
    let mut max = vec![m; d - 1];
    max.push(top);
    Ok(Construction {
        meta: ConstructionMeta {
            name: "paraboloid".into(),
            params: BTreeMap::from([("d".into(), (d as i64).into()), ("m".into(), m.into())]),
            claimed_box: BoundingBox::new(min, max)?,
            claimed_size: set.len(),
        },
        set,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrausPair {
    pub b1: IntSet,
    pub b2: IntSet,
    /// `k(k+1)/2 < n - k` with `k = floor(c sqrt n)`: the largest sum of `B1`
    /// stays below the smallest element of `B2`.
    pub condition_holds: bool,
}

/// `B1 = [floor(c sqrt n)]` and `B2 = [n - floor(c sqrt n), n]`.
pub fn straus_pair(n: i64, c: &Rational) -> Result<StrausPair> {
    if n < 10 {
        return Err(Error::precondition("straus pair needs n >= 10"));
    }
    if !c.is_positive() || *c > Rational::one() {
        return Err(Error::precondition("c must lie in (0, 1]"));
    }
    // floor(c sqrt n) = isqrt(floor(p^2 n / q^2)) for c = p/q
    let radicand = (c * c * Rational::from_integer(n.into())).floor();
    let k = radicand
        .to_integer()
        .to_i64()
        .ok_or(Error::Overflow("straus pair"))?
        .sqrt();
    if k < 1 {
        return Err(Error::precondition("floor(c sqrt n) must be at least 1"));
    }
    let b1 = IntSet::from_ints(1..=k)?;
    let b2 = IntSet::from_ints(n - k..=n)?;
    let condition_holds = (k as i128) * (k as i128 + 1) / 2 < (n - k) as i128;
    if !condition_holds {
        log::warn!(
            "straus pair n={n} c={}: k(k+1)/2 >= n-k, sums may collide",
            format_rational(c)
        );
    }
    Ok(StrausPair {
        b1,
        b2,
        condition_holds,
    })
}

/// Splits a sorted non-averaging set `a_1 < ... < a_m` at the pivot
/// `p = ceil(m/2)` into `B1 = {a_p - a_i : i < p}` and
/// `B2 = {a_j - a_p : j > p}`, whose subset sums meet only at 0.
///
/// With `verify` set the non-averaging hypothesis is checked first.
pub fn split_to_disjoint_pair(
    a: &IntSet,
    verify: bool,
    budgets: &Budgets,
) -> Result<(IntSet, IntSet)> {
    let values = a.values()?;
    let m = values.len();
    if m < 3 {
        return Err(Error::precondition("split needs at least 3 elements"));
    }
    if verify {
        if let Some(w) = is_non_averaging(a, budgets)? {
            return Err(Error::precondition(format!(
                "set is not non-averaging: {:?} is the average of {:?}",
                w.center, w.subset
            )));
        }
    }
    let p = m.div_ceil(2) - 1;
    let pivot = values[p];
    let b1 = IntSet::from_ints(values[..p].iter().map(|v| pivot - v))?;
    let b2 = IntSet::from_ints(values[p + 1..].iter().map(|v| v - pivot))?;
    Ok((b1, b2))
}
