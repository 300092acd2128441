//! Dense two-phase tableau simplex with Bland's rule, generic over exact and
//! floating scalars.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Magnitude below which a value is treated as zero.
    fn tolerance() -> Self;

    /// Allowed relative disagreement between a solver's objective and an
    /// independently recomputed value.
    fn residual_tolerance() -> Self {
        Self::tolerance()
    }

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn is_pos(&self) -> bool {
        *self > Self::tolerance()
    }

    fn is_neg(&self) -> bool {
        *self < -Self::tolerance()
    }

    fn near_zero(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-9
    }

    fn residual_tolerance() -> Self {
        1e-7
    }
}

impl Scalar for Rational {
    fn tolerance() -> Self {
        Rational::zero()
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<S> {
    Optimal {
        x: Vec<S>,
        value: S,
        /// Dual values, one per constraint row; zero for rows dropped as
        /// redundant.
        duals: Vec<S>,
    },
    Infeasible,
    Unbounded,
}

struct Tableau<S> {
    a: Vec<Vec<S>>,
    rhs: Vec<S>,
    basis: Vec<usize>,
    /// Row indices in the original problem, for rows still present.
    origin: Vec<usize>,
}

impl<S: Scalar> Tableau<S> {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.a[r][c].clone();
        for x in self.a[r].iter_mut() {
            *x = x.clone() / p.clone();
        }
        self.rhs[r] = self.rhs[r].clone() / p;
        for i in 0..self.a.len() {
            if i == r || self.a[i][c].near_zero() {
                continue;
            }
            let f = self.a[i][c].clone();
            for j in 0..self.a[i].len() {
                let delta = f.clone() * self.a[r][j].clone();
                self.a[i][j] = self.a[i][j].clone() - delta;
            }
            self.rhs[i] = self.rhs[i].clone() - f * self.rhs[r].clone();
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[S], allowed: usize) -> Vec<S> {
        (0..allowed)
            .map(|j| {
                self.basis
                    .iter()
                    .zip(&self.a)
                    .fold(cost[j].clone(), |acc, (&b, row)| {
                        acc - cost[b].clone() * row[j].clone()
                    })
            })
            .collect()
    }

    /// Maximizes `cost·x` over columns `< allowed`. Returns false when
    /// unbounded.
    fn optimize(&mut self, cost: &[S], allowed: usize) -> bool {
        loop {
            let reduced = self.reduced_costs(cost, allowed);
            let Some(enter) =
                (0..allowed).find(|&j| reduced[j].is_pos() && !self.basis.contains(&j))
            else {
                return true;
            };
            let mut leave: Option<(usize, S)> = None;
            for i in 0..self.a.len() {
                if !self.a[i][enter].is_pos() {
                    continue;
                }
                let ratio = self.rhs[i].clone() / self.a[i][enter].clone();
                let better = match &leave {
                    None => true,
                    Some((l, best)) => {
                        let diff = ratio.clone() - best.clone();
                        diff.is_neg() || (diff.near_zero() && self.basis[i] < self.basis[*l])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

/// Maximizes `c·x` subject to `A x = b`, `x >= 0`.
pub fn solve_standard_form<S: Scalar>(a: &[Vec<S>], b: &[S], c: &[S]) -> LpOutcome<S> {
    let m = a.len();
    let n = c.len();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = *bi < S::zero();
        let mut r: Vec<S> = row
            .iter()
            .map(|x| if flip { -x.clone() } else { x.clone() })
            .collect();
        r.extend((0..m).map(|k| if k == i { S::one() } else { S::zero() }));
        rows.push(r);
        rhs.push(if flip { -bi.clone() } else { bi.clone() });
    }
    let flips: Vec<bool> = b.iter().map(|bi| *bi < S::zero()).collect();
    let mut t = Tableau {
        a: rows,
        rhs,
        basis: (n..n + m).collect(),
        origin: (0..m).collect(),
    };

    let phase1: Vec<S> = (0..n + m)
        .map(|j| if j < n { S::zero() } else { -S::one() })
        .collect();
    t.optimize(&phase1, n + m);
    let infeasibility = t
        .rhs
        .iter()
        .zip(&t.basis)
        .filter(|(_, &bv)| bv >= n)
        .fold(S::zero(), |acc, (r, _)| acc + r.clone());
    if infeasibility.is_pos() {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.a.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.a[i][j].near_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.a.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                    t.origin.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut cost = c.to_vec();
    cost.extend((0..m).map(|_| S::zero()));
    if !t.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![S::zero(); n];
    for (r, &bv) in t.basis.iter().enumerate() {
        x[bv] = t.rhs[r].clone();
    }
    let value = x
        .iter()
        .zip(c)
        .fold(S::zero(), |acc, (xi, ci)| acc + xi.clone() * ci.clone());
    // y = c_B B^{-1}; the artificial columns of the final tableau hold B^{-1}
    let mut duals = vec![S::zero(); m];
    for &orig in &t.origin {
        let col = n + orig;
        let y = t.basis.iter().zip(&t.a).fold(S::zero(), |acc, (&bv, row)| {
            acc + cost[bv].clone() * row[col].clone()
        });
        duals[orig] = if flips[orig] { -y } else { y };
    }
    LpOutcome::Optimal { x, value, duals }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn small_exact_lp() {
        // max x + y, x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![
            vec![int(1), int(2), int(1), int(0)],
            vec![int(3), int(1), int(0), int(1)],
        ];
        let out = solve_standard_form(&a, &[int(4), int(6)], &[int(1), int(1), int(0), int(0)]);
        match out {
            LpOutcome::Optimal { x, value, duals } => {
                assert_eq!(value, ratio(14, 5));
                assert_eq!(&x[..2], &[ratio(8, 5), ratio(6, 5)]);
                // dual optimum equals primal optimum
                assert_eq!(duals[0].clone() * int(4) + duals[1].clone() * int(6), value);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![vec![1.0, 1.0]];
        assert_eq!(
            solve_standard_form(&a, &[-1.0], &[1.0, 0.0]),
            LpOutcome::Infeasible
        );
        let a = vec![vec![1.0, -1.0]];
        assert_eq!(
            solve_standard_form(&a, &[0.0], &[1.0, 0.0]),
            LpOutcome::Unbounded
        );
    }

    #[test]
    fn redundant_rows() {
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        match solve_standard_form(&a, &[int(1), int(2)], &[int(1), int(2)]) {
            LpOutcome::Optimal { value, duals, .. } => {
                assert_eq!(value, int(2));
                assert_eq!(duals[0].clone() + duals[1].clone() * int(2), int(2));
            }
            other => panic!("{other:?}"),
        }
    }
}
