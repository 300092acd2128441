//! Integer solvability of `G m = x` by unimodular column reduction of `G`
//! to lower echelon (column Hermite) form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Columns of `g` are the generators, each of length `rows`.
/// Returns an integer `m` with `Σ m_j g_j = x`, or `None` if none exists.
pub fn solve_integer_combination(rows: usize, g: &[Vec<i64>], x: &[i64]) -> Option<Vec<BigInt>> {
    let d = g.len();
    let mut e: Vec<Vec<BigInt>> = g
        .iter()
        .map(|col| col.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    // u tracks the column operations: e = g * u
    let mut u: Vec<Vec<BigInt>> = (0..d)
        .map(|j| {
            (0..d)
                .map(|i| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut pc = 0;
    for r in 0..rows {
        if pc == d {
            break;
        }
        for c in pc + 1..d {
            if e[c][r].is_zero() {
                continue;
            }
            let a = e[pc][r].clone();
            let b = e[c][r].clone();
            let ext = a.extended_gcd(&b);
            let (gcd, s, t) = (ext.gcd, ext.x, ext.y);
            let (ag, bg) = (&a / &gcd, &b / &gcd);
            // [col_pc, col_c] <- [s col_pc + t col_c, bg col_pc - ag col_c], determinant -1
            combine(&mut e, pc, c, &s, &t, &bg, &ag);
            combine(&mut u, pc, c, &s, &t, &bg, &ag);
        }
        if !e[pc][r].is_zero() {
            pivots.push((r, pc));
            pc += 1;
        }
    }

    let mut y = vec![BigInt::zero(); d];
    let mut next_pivot = pivots.iter().peekable();
    for r in 0..rows {
        let mut residual = BigInt::from(x[r]);
        for (c, yc) in y.iter().enumerate() {
            if !yc.is_zero() {
                residual -= &e[c][r] * yc;
            }
        }
        match next_pivot.peek() {
            Some(&&(pr, col)) if pr == r => {
                let (q, rem) = residual.div_rem(&e[col][r]);
                if !rem.is_zero() {
                    return None;
                }
                y[col] = q;
                next_pivot.next();
            }
            _ => {
                if !residual.is_zero() {
                    return None;
                }
            }
        }
    }
    let m = (0..d)
        .map(|i| (0..d).map(|j| &u[j][i] * &y[j]).sum())
        .collect();
    Some(m)
}

fn combine(
    cols: &mut [Vec<BigInt>],
    p: usize,
    c: usize,
    s: &BigInt,
    t: &BigInt,
    bg: &BigInt,
    ag: &BigInt,
) {
    for i in 0..cols[p].len() {
        let x = cols[p][i].clone();
        let y = cols[c][i].clone();
        cols[p][i] = s * &x + t * &y;
        cols[c][i] = bg * &x - ag * &y;
    }
}
