//! Flattening `Z^l` into `Z` by `φ(a) = Σ_j H^{j-1} a_j`.

use crate::error::{Error, Result};
use crate::lattice::IntSet;

fn in_digit_range(v: i64, h: i64) -> bool {
    // v ∈ (-H/2, H/2]
    let v2 = 2 * v as i128;
    v2 > -(h as i128) && v2 <= h as i128
}

/// Embeds a set whose coordinates all lie in `(-H/2, H/2]`.
pub fn embed_base_h(a: &IntSet, h: i64) -> Result<IntSet> {
    if h < 2 {
        return Err(Error::precondition("base must be at least 2"));
    }
    let values = a
        .points()
        .iter()
        .map(|p| {
            if let Some(&bad) = p.iter().find(|&&x| !in_digit_range(x, h)) {
                return Err(Error::invalid(format!(
                    "coordinate {bad} outside (-H/2, H/2] for H = {h}"
                )));
            }
            let mut v: i128 = 0;
            for &x in p.iter().rev() {
                v = v
                    .checked_mul(h as i128)
                    .and_then(|v| v.checked_add(x as i128))
                    .ok_or(Error::Overflow("base-H embedding"))?;
            }
            i64::try_from(v).map_err(|_| Error::Overflow("base-H embedding"))
        })
        .collect::<Result<Vec<_>>>()?;
    IntSet::from_ints(values)
}

/// Inverse of [`embed_base_h`] by balanced digit extraction.
pub fn decode_base_h(values: &IntSet, dim: usize, h: i64) -> Result<IntSet> {
    if h < 2 || dim == 0 {
        return Err(Error::precondition(
            "base must be at least 2 and dim positive",
        ));
    }
    let points = values
        .values()?
        .into_iter()
        .map(|v| {
            let mut rest = v as i128;
            let h = h as i128;
            let mut p = Vec::with_capacity(dim);
            for _ in 0..dim {
                let mut digit = rest.rem_euclid(h);
                if 2 * digit > h {
                    digit -= h;
                }
                p.push(digit as i64);
                rest = (rest - digit) / h;
            }
            if rest != 0 {
                return Err(Error::invalid(format!("{v} needs more than {dim} digits")));
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;
    IntSet::new(dim, points)
}

/// `2 |A| max ‖a‖_∞ + 1`. For every `H` at least this large, signed sums of
/// at most `|A|` differences of points never carry between digits, so `A`
/// and its embedding are non-averaging together.
pub fn faithful_h_threshold(a: &IntSet) -> Result<i64> {
    let max_norm = a
        .points()
        .iter()
        .flat_map(|p| p.iter().map(|x| x.unsigned_abs() as u128))
        .max()
        .unwrap_or(0);
    let t = 2 * a.len() as u128 * max_norm + 1;
    i64::try_from(t).map_err(|_| Error::Overflow("threshold"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let a = IntSet::new(2, vec![vec![3, 2], vec![-3, 1]]).unwrap();
        assert_eq!(embed_base_h(&a, 10).unwrap().values().unwrap(), vec![7, 23]);
        let one = IntSet::from_ints([-4, 5]).unwrap();
        assert_eq!(embed_base_h(&one, 10).unwrap(), one);
        let a = IntSet::new(2, vec![vec![6, 0]]).unwrap();
        assert!(embed_base_h(&a, 10).is_err());
        let a = IntSet::new(2, vec![vec![5, -4]]).unwrap();
        assert!(embed_base_h(&a, 10).is_ok());
    }

    #[test]
    fn thresholds() {
        let p = IntSet::new(2, vec![vec![1, 1], vec![2, 4], vec![3, 9]]).unwrap();
        assert_eq!(faithful_h_threshold(&p).unwrap(), 55);
        assert_eq!(
            faithful_h_threshold(&IntSet::from_ints([5]).unwrap()).unwrap(),
            11
        );
    }

    #[test]
    fn decode_inverts() {
        let a = IntSet::new(3, vec![vec![5, -4, 0], vec![-4, 5, 5], vec![0, 0, -1]]).unwrap();
        let e = embed_base_h(&a, 10).unwrap();
        assert_eq!(decode_base_h(&e, 3, 10).unwrap(), a);
        assert!(decode_base_h(&IntSet::from_ints([1000]).unwrap(), 2, 10).is_err());
    }
}
