//! Extremal exponents and the exact check of the exponent-gap inequality,
//! plus empirical exponent tables for constructions.
//!
//! Everything here except the logarithms in [`ExponentRow`] is exact.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::averaging::is_non_averaging;
use crate::config::Budgets;
use crate::constructions::Construction;
use crate::error::{Error, Result};
use crate::rational::{format_rational, to_f64, Rational};
use crate::search::SearchResult;

/// `α_1 = 1/4` and `α_d = (d-1)/(d+1)` for `d >= 2`.
pub fn alpha(d: usize) -> Result<Rational> {
    match d {
        0 => Err(Error::invalid("dimension must be at least 1")),
        1 => Ok(Rational::new(1.into(), 4.into())),
        d => Ok(Rational::new((d - 1).into(), (d + 1).into())),
    }
}

/// `(α_{d̂} + ζ) (1/(α_d + ζ) - (1-ε)(d̂ - d))`.
pub fn obs41_value(zeta: &Rational, eps: &Rational, d: usize, d_hat: usize) -> Result<Rational> {
    if d_hat <= d {
        return Err(Error::invalid("need d < d_hat"));
    }
    let lhs = alpha(d_hat)? + zeta;
    let inv = (alpha(d)? + zeta).recip();
    let gap = Rational::from_integer(BigInt::from(d_hat - d));
    Ok(lhs * (inv - (Rational::one() - eps) * gap))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Obs41Max {
    #[serde(with = "crate::rational::serde_str")]
    pub zeta: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub eps: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub max: Rational,
    pub d: usize,
    pub d_hat: usize,
}

impl Obs41Max {
    pub fn below_one(&self) -> bool {
        self.max < Rational::one()
    }
}

/// Maximum of [`obs41_value`] over `1 <= d <= d_max`, `d < d̂ <= d + gap_max`.
/// Ties keep the smallest `(d, d̂)`.
pub fn obs41_max(
    zeta: &Rational,
    eps: &Rational,
    d_max: usize,
    gap_max: usize,
) -> Result<Obs41Max> {
    if !(zeta > &Rational::zero() && zeta < &Rational::one()) {
        return Err(Error::precondition("ζ must lie in (0, 1)"));
    }
    if eps < &Rational::zero() || eps >= &Rational::one() {
        return Err(Error::precondition("ε must lie in [0, 1)"));
    }
    if d_max < 1 || gap_max < 1 {
        return Err(Error::precondition("d_max and gap_max must be positive"));
    }
    if eps * Rational::from_integer(100.into()) > *zeta {
        log::warn!("ε exceeds ζ/100, outside the range where the inequality is claimed");
    }
    let mut best: Option<Obs41Max> = None;
    for d in 1..=d_max {
        for d_hat in d + 1..=d + gap_max {
            let v = obs41_value(zeta, eps, d, d_hat)?;
            if best.as_ref().is_none_or(|b| v > b.max) {
                best = Some(Obs41Max {
                    zeta: zeta.clone(),
                    eps: eps.clone(),
                    max: v,
                    d,
                    d_hat,
                });
            }
        }
    }
    Ok(best.expect("scan range is nonempty"))
}

/// Scan over `ζ = k/steps` for `k = 1..steps`, with `ε = eps_ratio · ζ`.
pub fn obs41_scan(
    steps: u32,
    eps_ratio: &Rational,
    d_max: usize,
    gap_max: usize,
) -> Result<Vec<Obs41Max>> {
    if steps < 2 {
        return Err(Error::invalid("need at least two steps"));
    }
    (1..steps)
        .map(|k| {
            let zeta = Rational::new(k.into(), steps.into());
            let eps = &zeta * eps_ratio;
            obs41_max(&zeta, &eps, d_max, gap_max)
        })
        .collect()
}

pub fn obs41_csv(rows: &[Obs41Max]) -> String {
    let mut s = String::from("zeta,eps,max,d,dhat,below_one\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            format_rational(&r.zeta),
            format_rational(&r.eps),
            format_rational(&r.max),
            r.d,
            r.d_hat,
            r.below_one()
        ));
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentRow {
    pub d: usize,
    pub params: String,
    pub size_a: usize,
    /// Lattice cells of the ambient box, the product of its widths.
    pub size_b: u128,
    /// `ln|A| / ln|B|`.
    pub exponent: f64,
    #[serde(with = "crate::rational::serde_str")]
    pub alpha: Rational,
    /// `α_d - exponent`.
    pub residual: f64,
    /// The exponent as a fraction when `|A|` and `|B|` are powers of a common
    /// integer.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt")]
    pub exact_exponent: Option<Rational>,
}

fn ser_opt<S: serde::Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format_rational(r)),
        None => s.serialize_none(),
    }
}

impl ExponentRow {
    pub fn new(d: usize, params: String, size_a: usize, size_b: u128) -> Result<Self> {
        if size_b < 2 {
            return Err(Error::invalid("the ambient box needs at least two cells"));
        }
        if size_a as u128 > size_b {
            return Err(Error::invalid("set larger than its box"));
        }
        let alpha = alpha(d)?;
        let exact_exponent = exact_log_ratio(size_a as u128, size_b);
        let (exponent, residual) = match &exact_exponent {
            Some(e) => (to_f64(e), to_f64(&(&alpha - e))),
            None => {
                let e = (size_a as f64).ln() / (size_b as f64).ln();
                (e, to_f64(&alpha) - e)
            }
        };
        Ok(ExponentRow {
            d,
            params,
            size_a,
            size_b,
            exponent,
            residual,
            alpha,
            exact_exponent,
        })
    }

    /// Row for a construction, checked non-averaging first when `verify`
    /// carries budgets.
    pub fn from_construction(c: &Construction, verify: Option<&Budgets>) -> Result<Self> {
        if let Some(budgets) = verify {
            if let Some(w) = is_non_averaging(&c.set, budgets)? {
                return Err(Error::precondition(format!(
                    "{} is not non-averaging: {:?} is the average of {:?}",
                    c.meta.name, w.center, w.subset
                )));
            }
        }
        let params = c
            .meta
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        ExponentRow::new(
            c.set.dim(),
            format!("{}:{params}", c.meta.name),
            c.set.len(),
            c.meta.claimed_box.cells()?,
        )
    }

    /// Row for an exact `h(n)` result, with `B = [n]`.
    pub fn from_h(n: u64, result: &SearchResult) -> Result<Self> {
        ExponentRow::new(1, format!("h:n={n}"), result.optimum, n as u128)
    }
}

/// `log a / log b` as a fraction when both are powers of one integer.
fn exact_log_ratio(a: u128, b: u128) -> Option<Rational> {
    if a == 0 || b < 2 {
        return None;
    }
    if a == 1 {
        return Some(Rational::zero());
    }
    let (root, p) = minimal_root(a);
    let mut q = 0u32;
    let mut rest = b;
    while rest.is_multiple_of(root) {
        rest /= root;
        q += 1;
    }
    (rest == 1).then(|| Rational::new(p.into(), q.into()))
}

/// `(r, k)` with `a = r^k` and `k` maximal.
fn minimal_root(a: u128) -> (u128, u32) {
    for k in (2..=127u32).rev() {
        let r = a.nth_root(k);
        if r >= 2 && r.checked_pow(k) == Some(a) {
            return (r, k);
        }
    }
    (a, 1)
}

pub fn exponent_table_csv(rows: &[ExponentRow]) -> String {
    let mut s = String::from("d,params,sizeA,sizeB,exponent,alpha,residual\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.d,
            r.params,
            r.size_a,
            r.size_b,
            r.exponent,
            format_rational(&r.alpha),
            r.residual
        ));
    }
    s
}
