//! Minimax (Chebyshev) affine fitting by linear programming.
//!
//! The primal problem `min e` subject to `|H_j - s·x_j - b| <= e` is solved
//! through its dual
//! `max Σ H_j (p_j - q_j)` with `Σ (p_j - q_j) x_j = 0`, `Σ (p_j - q_j) = 0`,
//! `Σ (p_j + q_j) = 1`, `p, q >= 0`, whose optimal dual values are `(s, b, e)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::simplex::{solve_standard_form, LpOutcome, Scalar};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearFit<S> {
    pub slopes: Vec<S>,
    pub intercept: S,
    /// Maximum absolute residual over the samples.
    pub error: S,
    /// Samples whose residual attains `error`.
    pub extremal: Vec<usize>,
}

impl<S: Scalar> LinearFit<S> {
    pub fn eval(&self, x: &[S]) -> S {
        self.slopes
            .iter()
            .zip(x)
            .fold(self.intercept.clone(), |acc, (s, xi)| {
                acc + s.clone() * xi.clone()
            })
    }
}

/// Exact-rational minimax fit.
pub fn chebyshev_linear_fit_exact(
    samples: &[(Vec<Rational>, Rational)],
) -> Result<LinearFit<Rational>> {
    chebyshev_fit(samples)
}

/// Floating-point minimax fit with tolerance `1e-9`, for samples of real
/// valued functions.
pub fn chebyshev_linear_fit(samples: &[(Vec<f64>, f64)]) -> Result<LinearFit<f64>> {
    chebyshev_fit(samples)
}

pub fn chebyshev_fit<S: Scalar>(samples: &[(Vec<S>, S)]) -> Result<LinearFit<S>> {
    let Some((first, _)) = samples.first() else {
        return Err(Error::invalid("cannot fit an empty sample"));
    };
    let dim = first.len();
    if let Some((x, _)) = samples.iter().find(|(x, _)| x.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: x.len(),
        });
    }
    let k = samples.len();
    // columns: p_0..p_{k-1}, q_0..q_{k-1}
    let mut a: Vec<Vec<S>> = Vec::with_capacity(dim + 2);
    for i in 0..dim {
        a.push(
            samples
                .iter()
                .map(|(x, _)| x[i].clone())
                .chain(samples.iter().map(|(x, _)| -x[i].clone()))
                .collect(),
        );
    }
    a.push(
        (0..2 * k)
            .map(|j| if j < k { S::one() } else { -S::one() })
            .collect(),
    );
    a.push(vec![S::one(); 2 * k]);
    let mut b = vec![S::zero(); dim + 1];
    b.push(S::one());
    let c: Vec<S> = samples
        .iter()
        .map(|(_, h)| h.clone())
        .chain(samples.iter().map(|(_, h)| -h.clone()))
        .collect();

    let duals = match solve_standard_form(&a, &b, &c) {
        LpOutcome::Optimal { duals, .. } => duals,
        other => {
            return Err(Error::Unsupported(format!(
                "minimax dual program did not reach an optimum: {other:?}"
            )))
        }
    };
    let mut fit = LinearFit {
        slopes: duals[..dim].to_vec(),
        intercept: duals[dim].clone(),
        error: S::zero(),
        extremal: Vec::new(),
    };
    let residuals: Vec<S> = samples
        .iter()
        .map(|(x, h)| (h.clone() - fit.eval(x)).abs_val())
        .collect();
    let max = residuals
        .iter()
        .cloned()
        .fold(S::zero(), |m, r| if r > m { r } else { m });
    let claimed = duals[dim + 1].clone();
    let gap = (max.clone() - claimed).abs_val();
    if gap > S::residual_tolerance() * (S::one() + max.clone()) {
        return Err(Error::Unsupported(format!(
            "minimax fit failed its residual check: dual error {:?}, residual {max:?}",
            duals[dim + 1]
        )));
    }
    fit.extremal = residuals
        .iter()
        .enumerate()
        .filter(|(_, r)| (max.clone() - (*r).clone()).near_zero())
        .map(|(i, _)| i)
        .collect();
    fit.error = max;
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn parabola_three_points() {
        let samples = vec![
            (vec![int(0)], int(0)),
            (vec![ratio(1, 2)], ratio(1, 4)),
            (vec![int(1)], int(1)),
        ];
        let fit = chebyshev_linear_fit_exact(&samples).unwrap();
        assert_eq!(fit.slopes, vec![int(1)]);
        assert_eq!(fit.intercept, ratio(-1, 8));
        assert_eq!(fit.error, ratio(1, 8));
        assert_eq!(fit.extremal, vec![0, 1, 2]);
    }

    #[test]
    fn constants_and_lines() {
        let constant: Vec<_> = (0..4).map(|i| (vec![int(i), int(i * i)], int(7))).collect();
        let fit = chebyshev_linear_fit_exact(&constant).unwrap();
        assert_eq!(fit.error, int(0));
        assert_eq!(fit.eval(&[int(10), int(-3)]), int(7));

        let line: Vec<_> = (0..5)
            .map(|i| (vec![i as f64], 3.0 * i as f64 - 2.0))
            .collect();
        let fit = chebyshev_linear_fit(&line).unwrap();
        assert!(fit.error.abs() < 1e-9);
        assert!((fit.slopes[0] - 3.0).abs() < 1e-9);
        assert!((fit.intercept + 2.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_inputs() {
        // repeated abscissa: best constant on that point is the midpoint
        let samples = vec![(vec![int(1)], int(0)), (vec![int(1)], int(2))];
        let fit = chebyshev_linear_fit_exact(&samples).unwrap();
        assert_eq!(fit.error, int(1));
        let single = vec![(vec![int(3), int(4)], int(5))];
        assert_eq!(chebyshev_linear_fit_exact(&single).unwrap().error, int(0));
        assert!(chebyshev_linear_fit(&[]).is_err());
    }

    #[test]
    fn float_matches_exact() {
        let pts = [0i64, 1, 3, 4, 7];
        let exact: Vec<_> = pts
            .iter()
            .map(|&x| (vec![int(x)], int(x * x % 5)))
            .collect();
        let float: Vec<_> = pts
            .iter()
            .map(|&x| (vec![x as f64], (x * x % 5) as f64))
            .collect();
        let e = chebyshev_linear_fit_exact(&exact).unwrap();
        let f = chebyshev_linear_fit(&float).unwrap();
        assert!((crate::rational::to_f64(&e.error) - f.error).abs() < 1e-9);
    }
}
