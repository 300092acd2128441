//! Finite point sets in `Z^d`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A lattice point. All coordinate arithmetic goes through the checked
/// helpers below.
pub type Point = Vec<i64>;

/// Axis-aligned integer box `[min_1, max_1] x ... x [min_d, max_d]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub min: Point,
    pub max: Point,
}

impl BoundingBox {
    pub fn new(min: Point, max: Point) -> Result<Self> {
        if min.len() != max.len() {
            return Err(Error::DimensionMismatch {
                expected: min.len(),
                got: max.len(),
            });
        }
        if min.iter().zip(&max).any(|(lo, hi)| lo > hi) {
            return Err(Error::invalid("box with min > max"));
        }
        Ok(BoundingBox { min, max })
    }

    pub fn dim(&self) -> usize {
        self.min.len()
    }

    pub fn widths(&self) -> Vec<u128> {
        self.min
            .iter()
            .zip(&self.max)
            .map(|(lo, hi)| (*hi as i128 - *lo as i128 + 1) as u128)
            .collect()
    }

    /// Number of lattice cells, i.e. the product of the per-axis widths.
    pub fn cells(&self) -> Result<u128> {
        self.widths()
            .into_iter()
            .try_fold(1u128, |acc, w| acc.checked_mul(w))
            .ok_or(Error::Overflow("box cell count"))
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        p.len() == self.dim()
            && p.iter()
                .zip(self.min.iter().zip(&self.max))
                .all(|(x, (lo, hi))| lo <= x && x <= hi)
    }
}

/// A finite set of distinct points of `Z^d`, kept sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawIntSet", into = "RawIntSet")]
pub struct IntSet {
    dim: usize,
    points: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct RawIntSet {
    dim: usize,
    points: Vec<Point>,
}

impl TryFrom<RawIntSet> for IntSet {
    type Error = Error;

    fn try_from(raw: RawIntSet) -> Result<Self> {
        IntSet::new(raw.dim, raw.points)
    }
}

impl From<IntSet> for RawIntSet {
    fn from(set: IntSet) -> Self {
        RawIntSet {
            dim: set.dim,
            points: set.points,
        }
    }
}

impl IntSet {
    /// Builds a set, rejecting duplicates and points of the wrong length.
    pub fn new(dim: usize, mut points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
        points.sort();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate point in set"));
        }
        Ok(IntSet { dim, points })
    }

    /// Convenience constructor for subsets of `Z`.
    pub fn from_ints<I: IntoIterator<Item = i64>>(values: I) -> Result<Self> {
        IntSet::new(1, values.into_iter().map(|v| vec![v]).collect())
    }

    pub fn empty(dim: usize) -> Result<Self> {
        IntSet::new(dim, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points
            .binary_search_by(|q| q.as_slice().cmp(p))
            .is_ok()
    }

    /// The tight bounding box, or `None` for the empty set.
    pub fn bounding_box(&self) -> Option<BoundingBox> {
        let first = self.points.first()?;
        let mut min = first.clone();
        let mut max = first.clone();
        for p in &self.points[1..] {
            for (j, &x) in p.iter().enumerate() {
                min[j] = min[j].min(x);
                max[j] = max[j].max(x);
            }
        }
        Some(BoundingBox { min, max })
    }

    /// Values of a 1-D set in increasing order.
    pub fn values(&self) -> Result<Vec<i64>> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: self.dim,
            });
        }
        Ok(self.points.iter().map(|p| p[0]).collect())
    }

    /// The subset selected by `mask` (bit `i` selects the `i`-th point).
    pub fn subset_by_mask(&self, mask: u64) -> IntSet {
        let points = self
            .points
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p.clone())
            .collect();
        IntSet {
            dim: self.dim,
            points,
        }
    }

    /// `k * A + t`, checked.
    pub fn affine_image(&self, k: i64, t: &[i64]) -> Result<IntSet> {
        if t.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: t.len(),
            });
        }
        if k == 0 {
            return Err(Error::invalid("affine scale must be nonzero"));
        }
        let points = self
            .points
            .iter()
            .map(|p| add(&scale(p, k)?, t))
            .collect::<Result<Vec<_>>>()?;
        IntSet::new(self.dim, points)
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if self.dim == 1 {
                write!(f, "{}", p[0])?;
            } else {
                write!(f, "{p:?}")?;
            }
        }
        write!(f, "}}")
    }
}

pub fn add(a: &[i64], b: &[i64]) -> Result<Point> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow("point addition")))
        .collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Result<Point> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            x.checked_sub(*y)
                .ok_or(Error::Overflow("point subtraction"))
        })
        .collect()
}

pub fn scale(a: &[i64], k: i64) -> Result<Point> {
    a.iter()
        .map(|x| x.checked_mul(k).ok_or(Error::Overflow("point scaling")))
        .collect()
}

pub fn neg(a: &[i64]) -> Result<Point> {
    scale(a, -1)
}

pub fn is_zero(a: &[i64]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Sum of a list of points, checked. `dim` is needed for the empty sum.
pub fn sum<'a, I: IntoIterator<Item = &'a Point>>(dim: usize, points: I) -> Result<Point> {
    points
        .into_iter()
        .try_fold(vec![0; dim], |acc, p| add(&acc, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_dims() {
        assert!(IntSet::from_ints([1, 2, 1]).is_err());
        assert!(IntSet::new(2, vec![vec![1, 2], vec![3]]).is_err());
        assert!(IntSet::new(0, vec![]).is_err());
    }

    #[test]
    fn sorted_and_boxed() {
        let a = IntSet::new(2, vec![vec![3, 9], vec![1, 1], vec![2, 4]]).unwrap();
        assert_eq!(a.points()[0], vec![1, 1]);
        let b = a.bounding_box().unwrap();
        assert_eq!(b.min, vec![1, 1]);
        assert_eq!(b.max, vec![3, 9]);
        assert_eq!(b.cells().unwrap(), 27);
        assert!(a.contains(&[2, 4]));
        assert!(!a.contains(&[2, 5]));
    }

    #[test]
    fn json_schema() {
        let a: IntSet = serde_json::from_str(r#"{"dim":1,"points":[[3],[1]]}"#).unwrap();
        assert_eq!(a.values().unwrap(), vec![1, 3]);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"dim":1,"points":[[1],[3]]}"#
        );
        assert!(serde_json::from_str::<IntSet>(r#"{"dim":1,"points":[[1],[1]]}"#).is_err());
    }

    #[test]
    fn overflow_is_an_error() {
        assert_eq!(
            add(&[i64::MAX], &[1]),
            Err(Error::Overflow("point addition"))
        );
        let a = IntSet::from_ints([i64::MAX / 2 + 1]).unwrap();
        assert!(a.affine_image(2, &[0]).is_err());
    }
}
