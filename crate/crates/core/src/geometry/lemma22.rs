//! Checking the linear-approximation inequality for convex functions on a
//! grid of cubes `Q_v = v/m + [0, 1/m]^{d-1}`, `v ∈ [m]^{d-1}`.
//!
//! Sampling regime: the oracle is real valued, so fits run in `f64` with the
//! simplex tolerance. The sampled maximum residual is a lower bound on the
//! supremum over the cube.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::fit::{chebyshev_linear_fit, LinearFit};
use crate::parallel::par_map;

pub const DEFAULT_REFINE: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma22Report {
    pub v: Vec<u32>,
    pub fit: LinearFit<f64>,
    pub bound: f64,
    pub pass: bool,
    pub cells: usize,
}

/// `4 d^4 m^{d-3} / (c |I|)`.
pub fn lemma22_bound(d: usize, m: u32, c: f64, cells: usize) -> f64 {
    4.0 * (d as f64).powi(4) * (m as f64).powi(d as i32 - 3) / (c * cells as f64)
}

/// Grid points of `Q_v` with `refine` points per axis, endpoints included.
pub fn cube_samples(v: &[u32], m: u32, refine: usize) -> Vec<Vec<f64>> {
    let k = v.len();
    let total = refine.pow(k as u32);
    (0..total)
        .map(|mut idx| {
            (0..k)
                .map(|i| {
                    let t = idx % refine;
                    idx /= refine;
                    (v[i] as f64 + t as f64 / (refine - 1) as f64) / m as f64
                })
                .collect()
        })
        .collect()
}

/// Fits every cube in `cells` and reports the one with the smallest minimax
/// error, ties going to the lexicographically smallest `v`.
pub fn lemma22_check<F>(
    oracle: &F,
    d: usize,
    m: u32,
    c: f64,
    cells: &[Vec<u32>],
    refine: usize,
    workers: usize,
) -> Result<Lemma22Report>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if d < 2 {
        return Err(Error::invalid("dimension must be at least 2"));
    }
    if m == 0 || c * m as f64 <= 2.0 * d as f64 {
        return Err(Error::precondition(format!(
            "need c > 2d/m, got c = {c}, d = {d}, m = {m}"
        )));
    }
    if refine < 2 {
        return Err(Error::invalid("refine must be at least 2"));
    }
    let mut cells = cells.to_vec();
    cells.sort();
    cells.dedup();
    if cells.is_empty() {
        return Err(Error::precondition("the cell set I must be nonempty"));
    }
    if let Some(v) = cells
        .iter()
        .find(|v| v.len() != d - 1 || v.iter().any(|&x| x < 1 || x > m))
    {
        return Err(Error::invalid(format!(
            "cell {v:?} is not in [{m}]^{}",
            d - 1
        )));
    }
    let fits = par_map(&cells, workers, |v| {
        let samples: Vec<(Vec<f64>, f64)> = cube_samples(v, m, refine)
            .into_iter()
            .map(|x| {
                let h = oracle(&x);
                (x, h)
            })
            .collect();
        chebyshev_linear_fit(&samples)
    });
    let mut best: Option<(usize, LinearFit<f64>)> = None;
    for (i, fit) in fits.into_iter().enumerate() {
        let fit = fit?;
        if best.as_ref().is_none_or(|(_, b)| fit.error < b.error) {
            best = Some((i, fit));
        }
    }
    let (i, fit) = best.expect("at least one cell");
    let bound = lemma22_bound(d, m, c, cells.len());
    Ok(Lemma22Report {
        v: cells[i].clone(),
        pass: fit.error <= bound,
        fit,
        bound,
        cells: cells.len(),
    })
}

/// `H(x) = Σ_k λ_k (a_k·x + b_k)^2 + g·x + h`, a convex function scaled to
/// map `[-c, 1+c]^n` into `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticOracle {
    pub forms: Vec<(f64, Vec<f64>, f64)>,
    pub linear: Vec<f64>,
    pub constant: f64,
}

impl QuadraticOracle {
    pub fn eval(&self, x: &[f64]) -> f64 {
        let quad: f64 = self
            .forms
            .iter()
            .map(|(lambda, a, b)| {
                let t = a.iter().zip(x).map(|(ai, xi)| ai * xi).sum::<f64>() + b;
                lambda * t * t
            })
            .sum();
        quad + self.linear.iter().zip(x).map(|(g, xi)| g * xi).sum::<f64>() + self.constant
    }

    /// A random positive combination of one to three squared affine forms.
    pub fn random<R: Rng>(n: usize, c: f64, rng: &mut R) -> Self {
        let count = rng.gen_range(1..=3);
        let forms = (0..count)
            .map(|_| {
                let a = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                (rng.gen_range(0.1..1.0), a, rng.gen_range(-1.0..1.0))
            })
            .collect();
        let mut oracle = QuadraticOracle {
            forms,
            linear: vec![0.0; n],
            constant: 0.0,
        };
        oracle.normalize(n, c);
        oracle
    }

    /// `Σ x_i^2`, scaled.
    pub fn square(n: usize, c: f64) -> Self {
        let forms = (0..n)
            .map(|i| {
                (
                    1.0,
                    (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect(),
                    0.0,
                )
            })
            .collect();
        let mut oracle = QuadraticOracle {
            forms,
            linear: vec![0.0; n],
            constant: 0.0,
        };
        oracle.normalize(n, c);
        oracle
    }

    /// `(Σ x_i + n c) / (n (1 + 2c))`, affine with range `[0, 1]`.
    pub fn linear(n: usize, c: f64) -> Self {
        let scale = n as f64 * (1.0 + 2.0 * c);
        QuadraticOracle {
            forms: Vec::new(),
            linear: vec![1.0 / scale; n],
            constant: n as f64 * c / scale,
        }
    }

    /// Scales the quadratic part so its largest value on the box, attained at
    /// a vertex by convexity, is 1.
    fn normalize(&mut self, n: usize, c: f64) {
        let max = (0u64..1 << n)
            .map(|mask| {
                let x: Vec<f64> = (0..n)
                    .map(|i| if mask >> i & 1 == 1 { 1.0 + c } else { -c })
                    .collect();
                self.eval(&x)
            })
            .fold(0.0, f64::max);
        if max > 0.0 {
            for form in &mut self.forms {
                form.0 /= max;
            }
        }
    }
}
