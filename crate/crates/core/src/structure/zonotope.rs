//! Rounding a point of the zonotope `Z_A = Σ_{a∈A} [0,1]·a` to a subset sum.
//!
//! For `z = Σ c_a a` we look for `S ⊆ A` with
//! `|z_i - Σ_{a∈S} a_i| <= sqrt(d |A|) w_i` on every coordinate. Independent
//! rounding of each `c_a` meets this with probability bounded away from 0,
//! so samples are drawn and checked exactly until one is accepted.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::rational::{format_rational, to_f64, Rational};

pub const DEFAULT_SEED: u64 = 0x5eed;
/// Instances up to this many vectors fall back to exhaustive search.
pub const EXHAUSTIVE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZonotopeInstance {
    pub vectors: Vec<Point>,
    pub widths: Vec<i64>,
    #[serde(with = "rational_vec")]
    pub coefficients: Vec<Rational>,
}

mod rational_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "crate::rational::serde_str")] Rational);
        let v: Vec<W> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|w| w.0).collect())
    }
}

impl ZonotopeInstance {
    pub fn dim(&self) -> usize {
        self.widths.len()
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        if d == 0 || self.widths.iter().any(|&w| w < 1) {
            return Err(Error::invalid("widths must be positive and nonempty"));
        }
        if self.vectors.len() != self.coefficients.len() {
            return Err(Error::invalid("one coefficient per vector"));
        }
        if let Some(v) = self.vectors.iter().find(|v| v.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: v.len(),
            });
        }
        if self
            .coefficients
            .iter()
            .any(|c| c.is_negative() || c > &Rational::one())
        {
            return Err(Error::invalid("coefficients must lie in [0, 1]"));
        }
        for i in 0..d {
            let lo = self.vectors.iter().map(|v| v[i] as i128).min();
            let hi = self.vectors.iter().map(|v| v[i] as i128).max();
            if let (Some(lo), Some(hi)) = (lo, hi) {
                if hi - lo + 1 > self.widths[i] as i128 {
                    return Err(Error::invalid(format!(
                        "vectors span more than width {} on axis {i}",
                        self.widths[i]
                    )));
                }
            }
        }
        Ok(())
    }

    /// `z = Σ c_a a`.
    pub fn target(&self) -> Vec<Rational> {
        (0..self.dim())
            .map(|i| {
                self.vectors
                    .iter()
                    .zip(&self.coefficients)
                    .map(|(v, c)| c * Rational::from_integer(v[i].into()))
                    .sum()
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RoundingMethod {
    Random,
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZonotopeRounding {
    /// Indices into the instance's vectors.
    pub subset: Vec<usize>,
    #[serde(serialize_with = "ser_rationals")]
    pub target: Vec<Rational>,
    pub subset_sum: Vec<i64>,
    /// `|z_i - s_i|` per coordinate.
    #[serde(serialize_with = "ser_rationals")]
    pub deviations: Vec<Rational>,
    /// `sqrt(d |A|) w_i`, for display only; acceptance is decided exactly.
    pub bounds: Vec<f64>,
    pub attempts: u32,
    pub seed: u64,
    pub method: RoundingMethod,
}

fn ser_rationals<S: serde::Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

struct Checker {
    target: Vec<Rational>,
    /// `d |A| w_i^2`, the squared bound.
    bound_sq: Vec<Rational>,
    widths: Vec<i64>,
}

impl Checker {
    fn deviations(&self, sum: &[i64]) -> Vec<Rational> {
        self.target
            .iter()
            .zip(sum)
            .map(|(z, &s)| (z - Rational::from_integer(s.into())).abs())
            .collect()
    }

    fn accepts(&self, dev: &[Rational]) -> bool {
        dev.iter().zip(&self.bound_sq).all(|(e, b)| &(e * e) <= b)
    }

    /// `max_i dev_i / w_i`, used to rank failed attempts.
    fn score(&self, dev: &[Rational]) -> Rational {
        dev.iter()
            .zip(&self.widths)
            .map(|(e, &w)| e / Rational::from_integer(w.into()))
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

fn subset_sum(inst: &ZonotopeInstance, subset: &[usize]) -> Result<Vec<i64>> {
    (0..inst.dim())
        .map(|i| {
            subset
                .iter()
                .try_fold(0i64, |acc, &j| acc.checked_add(inst.vectors[j][i]))
                .ok_or(Error::Overflow("subset sum"))
        })
        .collect()
}

/// Randomized rounding with exact post-check, `retries` attempts, then an
/// exhaustive fallback for at most [`EXHAUSTIVE_LIMIT`] vectors.
pub fn zonotope_round(
    inst: &ZonotopeInstance,
    seed: u64,
    retries: u32,
) -> Result<ZonotopeRounding> {
    inst.validate()?;
    let d = inst.dim();
    let n = inst.vectors.len();
    let scale = Rational::from_integer(((d * n) as i64).into());
    let checker = Checker {
        target: inst.target(),
        bound_sq: inst
            .widths
            .iter()
            .map(|&w| &scale * Rational::from_integer((w * w).into()))
            .collect(),
        widths: inst.widths.clone(),
    };
    let bounds = inst
        .widths
        .iter()
        .map(|&w| ((d * n) as f64).sqrt() * w as f64)
        .collect::<Vec<_>>();
    let probabilities: Vec<f64> = inst.coefficients.iter().map(to_f64).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for attempt in 1..=retries {
        let subset: Vec<usize> = (0..n)
            .filter(|&j| rng.gen::<f64>() < probabilities[j])
            .collect();
        let sum = subset_sum(inst, &subset)?;
        let dev = checker.deviations(&sum);
        if checker.accepts(&dev) {
            return Ok(ZonotopeRounding {
                subset,
                target: checker.target,
                subset_sum: sum,
                deviations: dev,
                bounds,
                attempts: attempt,
                seed,
                method: RoundingMethod::Random,
            });
        }
        let score = checker.score(&dev);
        if best.as_ref().is_none_or(|(s, _)| &score < s) {
            best = Some((score, dev));
        }
    }

    if n <= EXHAUSTIVE_LIMIT {
        let mut winner: Option<(Rational, Vec<usize>)> = None;
        for mask in 0u32..1 << n {
            let subset: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
            let dev = checker.deviations(&subset_sum(inst, &subset)?);
            if checker.accepts(&dev) {
                let score = checker.score(&dev);
                if winner.as_ref().is_none_or(|(s, _)| &score < s) {
                    winner = Some((score, subset));
                }
            }
        }
        if let Some((_, subset)) = winner {
            let sum = subset_sum(inst, &subset)?;
            return Ok(ZonotopeRounding {
                deviations: checker.deviations(&sum),
                subset,
                target: checker.target,
                subset_sum: sum,
                bounds,
                attempts: retries,
                seed,
                method: RoundingMethod::Exhaustive,
            });
        }
    }
    let detail = best
        .map(|(_, dev)| {
            dev.iter()
                .map(format_rational)
                .collect::<Vec<_>>()
                .join(", ")
        })
        .unwrap_or_default();
    Err(Error::Exhausted(format!(
        "no subset sum within sqrt(d|A|) w_i after {retries} attempts; best deviations [{detail}]"
    )))
}
