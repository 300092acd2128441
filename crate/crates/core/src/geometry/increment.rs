//! Probing the density-increment conclusion: find a convex `Ω' ⊆ Ω` with
//! `Vol(Ω') = η Vol(Ω)` holding at least `η^{(d-1)/(d+1)+ε} |A|` points.
//!
//! The search ranges over a finite family (dyadic sub-boxes and halfspace
//! caps), so a reported gain below 1 does not rule out a better convex set.
//! Volumes are exact rationals; only the final gain is a float.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{BoundingBox, IntSet};
use crate::rational::{format_rational, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IncrementOptions {
    /// Dyadic sub-boxes are tried at levels `1..=max_level`.
    pub max_level: u32,
    /// Whether to try halfspace caps (dimensions up to 3).
    pub caps: bool,
    /// Cap normals are the primitive integer vectors with entries in
    /// `[-direction_radius, direction_radius]`.
    pub direction_radius: i64,
}

impl Default for IncrementOptions {
    fn default() -> Self {
        IncrementOptions {
            max_level: 3,
            caps: true,
            direction_radius: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Region {
    Whole,
    /// Closed sub-box with index `index` in the `2^level`-per-axis grid.
    Dyadic {
        level: u32,
        index: Vec<u64>,
        #[serde(serialize_with = "ser_rationals")]
        min: Vec<Rational>,
        #[serde(serialize_with = "ser_rationals")]
        max: Vec<Rational>,
    },
    /// `{x ∈ Ω : normal·x >= offset}`.
    Cap {
        normal: Vec<i64>,
        #[serde(with = "crate::rational::serde_str")]
        offset: Rational,
    },
}

fn ser_rationals<S: serde::Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IncrementReport {
    pub region: Region,
    #[serde(with = "crate::rational::serde_str")]
    pub eta: Rational,
    pub count: usize,
    pub total: usize,
    /// `(d-1)/(d+1) + ε`.
    pub exponent: f64,
    pub gain: f64,
    /// True when some region with `η < 1` reached gain at least 1.
    pub increment_found: bool,
    pub candidates: usize,
}

pub fn density_increment_search(
    a: &IntSet,
    omega: &BoundingBox,
    eps: &Rational,
    options: &IncrementOptions,
) -> Result<IncrementReport> {
    let d = omega.dim();
    if a.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: a.dim(),
        });
    }
    if a.is_empty() {
        return Err(Error::invalid("the point set is empty"));
    }
    if omega.min.iter().zip(&omega.max).any(|(lo, hi)| lo >= hi) {
        return Err(Error::invalid("Ω must have positive volume"));
    }
    if let Some(p) = a.points().iter().find(|p| !omega.contains(p)) {
        return Err(Error::precondition(format!("point {p:?} lies outside Ω")));
    }
    let exponent = (d as f64 - 1.0) / (d as f64 + 1.0) + to_f64(eps);
    let total = a.len();
    let gain =
        |count: usize, eta: &Rational| (count as f64 / total as f64) / to_f64(eta).powf(exponent);

    let mut best = IncrementReport {
        region: Region::Whole,
        eta: Rational::one(),
        count: total,
        total,
        exponent,
        gain: 1.0,
        increment_found: false,
        candidates: 1,
    };
    let consider = |region: Region, eta: Rational, count: usize, best: &mut IncrementReport| {
        best.candidates += 1;
        let g = gain(count, &eta);
        if g > best.gain {
            best.region = region;
            best.eta = eta;
            best.count = count;
            best.gain = g;
        }
    };

    let lo: Vec<Rational> = omega
        .min
        .iter()
        .map(|&x| Rational::from_integer(x.into()))
        .collect();
    let hi: Vec<Rational> = omega
        .max
        .iter()
        .map(|&x| Rational::from_integer(x.into()))
        .collect();
    let volume: Rational = lo.iter().zip(&hi).map(|(l, h)| h - l).product();

    for level in 1..=options.max_level {
        let parts = 1u64
            .checked_shl(level)
            .filter(|_| level < 32)
            .ok_or_else(|| Error::invalid("dyadic level too large"))?;
        let eta = Rational::new(One::one(), num_bigint::BigInt::from(parts).pow(d as u32));
        for (index, count) in dyadic_counts(a, &lo, &hi, parts) {
            let (min, max): (Vec<Rational>, Vec<Rational>) = index
                .iter()
                .enumerate()
                .map(|(i, &j)| {
                    let w = (&hi[i] - &lo[i]) / Rational::from_integer(parts.into());
                    (
                        &lo[i] + &w * Rational::from_integer(j.into()),
                        &lo[i] + &w * Rational::from_integer((j + 1).into()),
                    )
                })
                .unzip();
            consider(
                Region::Dyadic {
                    level,
                    index,
                    min,
                    max,
                },
                eta.clone(),
                count,
                &mut best,
            );
        }
    }

    if options.caps && d <= 3 {
        for normal in primitive_directions(d, options.direction_radius) {
            let mut projections: Vec<i128> = a
                .points()
                .iter()
                .map(|p| {
                    p.iter()
                        .zip(&normal)
                        .map(|(&x, &u)| x as i128 * u as i128)
                        .sum()
                })
                .collect();
            projections.sort_unstable_by(|x, y| y.cmp(x));
            let mut i = 0;
            while i < projections.len() {
                let t = projections[i];
                while i < projections.len() && projections[i] == t {
                    i += 1;
                }
                let offset = Rational::from_integer(t.into());
                let cap = cap_volume(&lo, &hi, &normal, &offset);
                if cap.is_positive() {
                    let eta = cap / &volume;
                    consider(
                        Region::Cap {
                            normal: normal.clone(),
                            offset,
                        },
                        eta,
                        i,
                        &mut best,
                    );
                }
            }
        }
    }
    best.increment_found = best.eta < Rational::one() && best.gain >= 1.0;
    Ok(best)
}

/// Point counts of the closed dyadic cells that contain at least one point.
fn dyadic_counts(
    a: &IntSet,
    lo: &[Rational],
    hi: &[Rational],
    parts: u64,
) -> BTreeMap<Vec<u64>, usize> {
    let mut counts = BTreeMap::new();
    for p in a.points() {
        let per_axis: Vec<Vec<u64>> = p
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let s = (Rational::from_integer(x.into()) - &lo[i])
                    * Rational::from_integer(parts.into())
                    / (&hi[i] - &lo[i]);
                let j = s.floor().to_integer().to_u64().unwrap_or(0).min(parts - 1);
                let mut cells = vec![j];
                if s.is_integer() && j > 0 && Rational::from_integer(j.into()) == s {
                    cells.push(j - 1);
                }
                cells
            })
            .collect();
        let mut stack = vec![Vec::new()];
        for options in &per_axis {
            stack = stack
                .into_iter()
                .flat_map(|prefix: Vec<u64>| {
                    options.iter().map(move |&j| {
                        let mut next = prefix.clone();
                        next.push(j);
                        next
                    })
                })
                .collect();
        }
        for cell in stack {
            *counts.entry(cell).or_insert(0) += 1;
        }
    }
    counts
}

/// Primitive integer vectors with entries in `[-r, r]`, in lexicographic order.
pub fn primitive_directions(d: usize, r: i64) -> Vec<Vec<i64>> {
    let side = (2 * r + 1) as usize;
    let mut out = Vec::new();
    for idx in 0..side.pow(d as u32) {
        let mut rest = idx;
        let mut v = vec![0i64; d];
        for slot in v.iter_mut().rev() {
            *slot = (rest % side) as i64 - r;
            rest /= side;
        }
        let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g == 1 {
            out.push(v);
        }
    }
    out
}

/// Exact volume of `{x ∈ [lo, hi] : u·x >= t}`.
pub fn cap_volume(lo: &[Rational], hi: &[Rational], u: &[i64], t: &Rational) -> Rational {
    // shift to [0, w], reflect axes with negative u_i, factor out u_i = 0
    let mut shift = t.clone();
    let mut weights = Vec::new();
    let mut widths = Vec::new();
    let mut factor = Rational::one();
    for i in 0..u.len() {
        let w = &hi[i] - &lo[i];
        let ui = Rational::from_integer(u[i].into());
        shift -= &ui * &lo[i];
        match u[i].signum() {
            0 => factor *= w,
            1 => {
                weights.push(ui);
                widths.push(w);
            }
            _ => {
                shift -= &ui * &w;
                weights.push(-ui);
                widths.push(w);
            }
        }
    }
    let full: Rational = widths.iter().product();
    if weights.is_empty() {
        return if shift.is_positive() {
            Rational::zero()
        } else {
            factor * full
        };
    }
    factor * (full - simplex_box_volume(&weights, &widths, &shift))
}

/// `Vol{z ∈ Π[0, w_i] : Σ u_i z_i <= s}` for positive `u_i`, by
/// inclusion-exclusion over the box vertices.
fn simplex_box_volume(u: &[Rational], w: &[Rational], s: &Rational) -> Rational {
    let k = u.len();
    let mut total = Rational::zero();
    for mask in 0u32..1 << k {
        let corner: Rational = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &u[i] * &w[i])
            .sum();
        let excess = s - corner;
        if excess.is_positive() {
            let term = num_traits::pow(excess, k);
            if mask.count_ones() % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    let denom: Rational = u.iter().product::<Rational>()
        * Rational::from_integer((1..=k as u64).product::<u64>().into());
    total / denom
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn cap_volumes() {
        let (lo, hi) = (q(&[0, 0]), q(&[2, 2]));
        assert_eq!(cap_volume(&lo, &hi, &[1, 1], &int(3)), ratio(1, 2));
        assert_eq!(cap_volume(&lo, &hi, &[1, 1], &int(2)), int(2));
        assert_eq!(cap_volume(&lo, &hi, &[-1, -1], &int(-1)), ratio(1, 2));
        assert_eq!(cap_volume(&lo, &hi, &[1, 0], &int(1)), int(2));
        assert_eq!(cap_volume(&lo, &hi, &[1, 2], &int(7)), int(0));
        assert_eq!(cap_volume(&lo, &hi, &[1, 2], &int(-1)), int(4));
        // corner of the unit cube cut by x+y+z >= 2 has volume 1/6
        assert_eq!(
            cap_volume(&q(&[0, 0, 0]), &q(&[1, 1, 1]), &[1, 1, 1], &int(2)),
            ratio(1, 6)
        );
    }

    #[test]
    fn cap_volume_matches_grid_count() {
        // midpoint rule on a fine grid for a tilted cap
        let (lo, hi) = (q(&[-1, 0]), q(&[3, 2]));
        let u = [2, -3];
        let t = ratio(-1, 2);
        let exact = crate::rational::to_f64(&cap_volume(&lo, &hi, &u, &t));
        let n = 800;
        let mut inside = 0;
        for i in 0..n {
            for j in 0..n {
                let x = -1.0 + 4.0 * (i as f64 + 0.5) / n as f64;
                let y = 2.0 * (j as f64 + 0.5) / n as f64;
                if 2.0 * x - 3.0 * y >= -0.5 {
                    inside += 1;
                }
            }
        }
        let approx = 8.0 * inside as f64 / (n * n) as f64;
        assert!((exact - approx).abs() < 0.02, "{exact} vs {approx}");
    }

    #[test]
    fn whole_box_and_concentrated_quarter() {
        let omega = BoundingBox::new(vec![0, 0], vec![8, 8]).unwrap();
        let a = IntSet::new(2, vec![vec![1, 1], vec![2, 3], vec![3, 1], vec![3, 3]]).unwrap();
        let opts = IncrementOptions {
            max_level: 1,
            caps: false,
            direction_radius: 1,
        };
        let r = density_increment_search(&a, &omega, &ratio(1, 20), &opts).unwrap();
        assert_eq!(r.eta, ratio(1, 4));
        assert_eq!(r.count, 4);
        let expected = 1.0 / 0.25f64.powf(1.0 / 3.0 + 0.05);
        assert!((r.gain - expected).abs() < 1e-12);
        assert!(r.increment_found);

        let spread = IntSet::new(2, vec![vec![0, 0], vec![8, 8], vec![0, 8], vec![8, 0]]).unwrap();
        let r = density_increment_search(&spread, &omega, &ratio(1, 20), &opts).unwrap();
        assert_eq!(r.region, Region::Whole);
        assert_eq!(r.gain, 1.0);
        assert!(!r.increment_found);
    }

    #[test]
    fn rejects_points_outside() {
        let omega = BoundingBox::new(vec![0], vec![4]).unwrap();
        let a = IntSet::from_ints([1, 5]).unwrap();
        assert!(
            density_increment_search(&a, &omega, &int(0), &IncrementOptions::default()).is_err()
        );
    }

    #[test]
    fn directions() {
        let dirs = primitive_directions(2, 1);
        assert_eq!(dirs.len(), 8);
        assert!(dirs.contains(&vec![-1, -1]));
        assert!(!dirs.contains(&vec![0, 0]));
        assert_eq!(primitive_directions(2, 2).len(), 16);
    }
}
