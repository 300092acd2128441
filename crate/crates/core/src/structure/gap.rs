//! Generalized arithmetic progressions
//! `Q = { x + Σ n_i q_i : a_i <= n_i <= b_i }`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::lattice_solve::solve_integer_combination;
use crate::config::Budgets;
use crate::error::{budget, Error, Result};
use crate::lattice::{add, scale, IntSet, Point};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGap", into = "RawGap")]
pub struct Gap {
    ambient_dim: usize,
    base: Point,
    generators: Vec<Point>,
    bounds: Vec<(i64, i64)>,
}

#[derive(Serialize, Deserialize)]
struct RawGap {
    ambient_dim: usize,
    base: Point,
    generators: Vec<Point>,
    bounds: Vec<[i64; 2]>,
}

impl TryFrom<RawGap> for Gap {
    type Error = Error;

    fn try_from(raw: RawGap) -> Result<Self> {
        Gap::new(
            raw.ambient_dim,
            raw.base,
            raw.generators,
            raw.bounds.into_iter().map(|[a, b]| (a, b)).collect(),
        )
    }
}

impl From<Gap> for RawGap {
    fn from(g: Gap) -> Self {
        RawGap {
            ambient_dim: g.ambient_dim,
            base: g.base,
            generators: g.generators,
            bounds: g.bounds.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl Gap {
    pub fn new(
        ambient_dim: usize,
        base: Point,
        generators: Vec<Point>,
        bounds: Vec<(i64, i64)>,
    ) -> Result<Self> {
        if ambient_dim == 0 || generators.is_empty() {
            return Err(Error::invalid(
                "progression needs ambient_dim >= 1 and a generator",
            ));
        }
        if generators.len() != bounds.len() {
            return Err(Error::invalid("one coefficient interval per generator"));
        }
        for p in std::iter::once(&base).chain(&generators) {
            if p.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: p.len(),
                });
            }
        }
        if bounds.iter().any(|(a, b)| a > b) {
            return Err(Error::invalid("empty coefficient interval"));
        }
        let gap = Gap {
            ambient_dim,
            base,
            generators,
            bounds,
        };
        gap.volume()?;
        Ok(gap)
    }

    /// The width form `0 <= n_i <= w_i - 1`.
    pub fn with_widths(base: Point, generators: Vec<Point>, widths: &[i64]) -> Result<Self> {
        if widths.iter().any(|&w| w < 1) {
            return Err(Error::invalid("widths must be positive"));
        }
        let bounds = widths.iter().map(|&w| (0, w - 1)).collect();
        Gap::new(base.len(), base, generators, bounds)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn bounds(&self) -> &[(i64, i64)] {
        &self.bounds
    }

    pub fn widths(&self) -> Vec<u128> {
        self.bounds
            .iter()
            .map(|&(a, b)| (b as i128 - a as i128 + 1) as u128)
            .collect()
    }

    /// `Π w_i`.
    pub fn volume(&self) -> Result<u128> {
        self.widths()
            .into_iter()
            .try_fold(1u128, |acc, w| acc.checked_mul(w))
            .ok_or(Error::Overflow("progression volume"))
    }

    /// `x + Σ n_i q_i`.
    pub fn evaluate(&self, coeffs: &[i64]) -> Result<Point> {
        if coeffs.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: coeffs.len(),
            });
        }
        self.generators
            .iter()
            .zip(coeffs)
            .try_fold(self.base.clone(), |acc, (q, &n)| add(&acc, &scale(q, n)?))
    }

    /// All coefficient tuples of the box, in lexicographic order.
    fn coefficient_tuples(&self, budgets: &Budgets) -> Result<Vec<Vec<i64>>> {
        budget(
            "progression volume",
            self.volume()?,
            budgets.max_points as u128,
        )?;
        let mut out = Vec::new();
        let mut n: Vec<i64> = self.bounds.iter().map(|b| b.0).collect();
        loop {
            out.push(n.clone());
            let Some(pos) = n.iter().zip(&self.bounds).rposition(|(v, b)| *v < b.1) else {
                return Ok(out);
            };
            n[pos] += 1;
            for (v, b) in n[pos + 1..].iter_mut().zip(&self.bounds[pos + 1..]) {
                *v = b.0;
            }
        }
    }

    /// The point set, duplicates collapsed.
    pub fn enumerate(&self, budgets: &Budgets) -> Result<IntSet> {
        let points = self
            .coefficient_tuples(budgets)?
            .iter()
            .map(|n| self.evaluate(n))
            .collect::<Result<BTreeSet<_>>>()?;
        IntSet::new(self.ambient_dim, points.into_iter().collect())
    }

    /// `|Q| = Vol(Q)`.
    pub fn is_proper(&self, budgets: &Budgets) -> Result<bool> {
        Ok(self.enumerate(budgets)?.len() as u128 == self.volume()?)
    }

    /// Coefficients `m` with `x = Σ m_i q_i`, if the base lies in the lattice
    /// spanned by the generators.
    pub fn base_coefficients(&self) -> Option<Vec<BigInt>> {
        solve_integer_combination(self.ambient_dim, &self.generators, &self.base)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.base_coefficients().is_some()
    }

    /// Rewrites a homogeneous progression with base 0 by shifting each
    /// coefficient interval by the base's coefficients.
    pub fn fold_base(&self) -> Result<Gap> {
        let m = self
            .base_coefficients()
            .ok_or_else(|| Error::precondition("progression is not homogeneous"))?;
        let bounds = self
            .bounds
            .iter()
            .zip(&m)
            .map(|(&(a, b), mi)| {
                let shift = mi.to_i64().ok_or(Error::Overflow("base coefficients"))?;
                Ok((
                    a.checked_add(shift).ok_or(Error::Overflow("fold base"))?,
                    b.checked_add(shift).ok_or(Error::Overflow("fold base"))?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Gap::new(
            self.ambient_dim,
            vec![0; self.ambient_dim],
            self.generators.clone(),
            bounds,
        )
    }

    /// `cQ`: coefficient intervals become `[ceil(c a_i), floor(c b_i)]` after
    /// folding the base into interval form.
    pub fn dilate(&self, c: &Rational) -> Result<Gap> {
        if c < &Rational::zero() {
            return Err(Error::precondition("dilation factor must be nonnegative"));
        }
        let folded = self.fold_base()?;
        let bounds = folded
            .bounds
            .iter()
            .map(|&(a, b)| {
                let lo = (c * Rational::from_integer(a.into())).ceil().to_integer();
                let hi = (c * Rational::from_integer(b.into())).floor().to_integer();
                if lo > hi {
                    return Err(Error::precondition("empty interval after dilation"));
                }
                Ok((
                    lo.to_i64().ok_or(Error::Overflow("dilation"))?,
                    hi.to_i64().ok_or(Error::Overflow("dilation"))?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Gap::new(self.ambient_dim, folded.base, folded.generators, bounds)
    }

    /// The coefficient tuple of `p` in a proper progression.
    pub fn identification(&self, p: &[i64], budgets: &Budgets) -> Result<Vec<i64>> {
        let table = self.identification_table(budgets)?;
        table
            .get(p)
            .cloned()
            .ok_or_else(|| Error::invalid(format!("point {p:?} is not in the progression")))
    }

    /// Point-to-coefficients map of a proper progression.
    pub fn identification_table(&self, budgets: &Budgets) -> Result<HashMap<Point, Vec<i64>>> {
        let mut table = HashMap::new();
        for n in self.coefficient_tuples(budgets)? {
            let p = self.evaluate(&n)?;
            if table.insert(p, n).is_some() {
                return Err(Error::precondition("progression is not proper"));
            }
        }
        Ok(table)
    }
}

/// `k`-fold sumset `A + ... + A` (`{0}` for `k = 0`).
pub fn iterated_sumset(a: &IntSet, k: u32, budgets: &Budgets) -> Result<IntSet> {
    let mut acc: BTreeSet<Point> = BTreeSet::from([vec![0; a.dim()]]);
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for s in &acc {
            for p in a.points() {
                next.insert(add(s, p)?);
            }
        }
        budget(
            "sumset size",
            next.len() as u128,
            budgets.max_points as u128,
        )?;
        acc = next;
    }
    IntSet::new(a.dim(), acc.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn gap1(base: i64, gens: &[i64], bounds: &[(i64, i64)]) -> Gap {
        Gap::new(
            1,
            vec![base],
            gens.iter().map(|&g| vec![g]).collect(),
            bounds.to_vec(),
        )
        .unwrap()
    }

    fn vals(g: &Gap) -> Vec<i64> {
        g.enumerate(&Budgets::default()).unwrap().values().unwrap()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(vals(&gap1(0, &[2], &[(0, 2)])), vec![0, 2, 4]);
        assert_eq!(vals(&gap1(0, &[1, 2], &[(0, 1), (0, 1)])), vec![0, 1, 2, 3]);
        let g = Gap::new(2, vec![1, 0], vec![vec![0, 1]], vec![(0, 1)]).unwrap();
        assert_eq!(
            g.enumerate(&Budgets::default()).unwrap().points(),
            &[vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn properness() {
        let b = Budgets::default();
        assert!(gap1(0, &[1, 2], &[(0, 1), (0, 1)]).is_proper(&b).unwrap());
        assert!(!gap1(0, &[1, 1], &[(0, 1), (0, 1)]).is_proper(&b).unwrap());
        assert!(gap1(3, &[5], &[(-4, 9)]).is_proper(&b).unwrap());
    }

    #[test]
    fn homogeneity() {
        assert!(gap1(0, &[7], &[(0, 1)]).is_homogeneous());
        assert!(!gap1(3, &[2], &[(0, 1)]).is_homogeneous());
        let g = Gap::new(
            2,
            vec![2, 2],
            vec![vec![1, 0], vec![0, 2]],
            vec![(0, 1), (0, 1)],
        )
        .unwrap();
        let m = g.base_coefficients().unwrap();
        assert_eq!(m, vec![BigInt::from(2), BigInt::from(1)]);
    }

    #[test]
    fn dilation_examples() {
        let q = gap1(0, &[1], &[(0, 2)]);
        assert_eq!(q.dilate(&int(1)).unwrap(), q);
        let d = q.dilate(&int(2)).unwrap();
        assert_eq!(d.bounds(), &[(0, 4)]);
        let q_set = q.enumerate(&Budgets::default()).unwrap();
        assert_eq!(
            d.enumerate(&Budgets::default()).unwrap(),
            iterated_sumset(&q_set, 2, &Budgets::default()).unwrap()
        );
        let h = gap1(0, &[3], &[(-1, 1)]).dilate(&ratio(1, 2)).unwrap();
        assert_eq!(h.bounds(), &[(0, 0)]);
        assert_eq!(vals(&h), vec![0]);
        assert!(gap1(1, &[2], &[(0, 1)]).dilate(&int(2)).is_err());
        assert!(gap1(0, &[2], &[(1, 1)]).dilate(&ratio(1, 2)).is_err());
    }

    #[test]
    fn base_folding() {
        // 4 + {0, 2} with generator 2: base coefficient 2
        let g = gap1(4, &[2], &[(0, 1)]);
        let f = g.fold_base().unwrap();
        assert_eq!(f.bounds(), &[(2, 3)]);
        assert_eq!(vals(&f), vals(&g));
    }

    #[test]
    fn identification_examples() {
        let b = Budgets::default();
        let g = gap1(5, &[1, 2], &[(0, 1), (0, 1)]);
        assert_eq!(g.identification(&[5], &b).unwrap(), vec![0, 0]);
        assert_eq!(g.identification(&[8], &b).unwrap(), vec![1, 1]);
        assert!(g.identification(&[9], &b).is_err());
        let improper = gap1(0, &[1, 1], &[(0, 1), (0, 1)]);
        assert!(improper.identification(&[1], &b).is_err());
    }

    #[test]
    fn json_schema() {
        let g: Gap = serde_json::from_str(
            r#"{"ambient_dim":2,"base":[0,0],"generators":[[1,0],[0,1]],"bounds":[[0,2],[-1,1]]}"#,
        )
        .unwrap();
        assert_eq!(g.volume().unwrap(), 9);
        assert!(serde_json::from_str::<Gap>(
            r#"{"ambient_dim":1,"base":[0],"generators":[[1]],"bounds":[[2,1]]}"#
        )
        .is_err());
    }
}
