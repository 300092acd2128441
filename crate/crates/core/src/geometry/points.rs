//! Finite point sets with exact rational coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::IntSet;
use crate::rational::Rational;

/// Distinct points in `Q^d`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<Rational>>,
}

impl PointSet {
    pub fn new(dim: usize, mut points: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
        points.sort();
        points.dedup();
        Ok(PointSet { dim, points })
    }

    pub fn from_ints(dim: usize, points: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            dim,
            points
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
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

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.points
            .binary_search_by(|q| q.as_slice().cmp(p))
            .is_ok()
    }

    pub fn is_integral(&self) -> bool {
        self.points.iter().flatten().all(|x| x.is_integer())
    }

    /// Integer coordinates of `p - origin` after scaling each axis by the
    /// lcm of that axis's denominators. Positive per-axis scaling maps
    /// halfspaces to halfspaces, so depth is unchanged.
    pub(crate) fn scaled_differences(&self, origin: &[Rational]) -> Vec<Vec<BigInt>> {
        let scale: Vec<BigInt> = (0..self.dim)
            .map(|i| {
                self.points
                    .iter()
                    .map(|p| &p[i])
                    .chain(std::iter::once(&origin[i]))
                    .fold(BigInt::one(), |l, x| l.lcm(x.denom()))
            })
            .collect();
        self.points
            .iter()
            .filter(|p| p.as_slice() != origin)
            .map(|p| {
                (0..self.dim)
                    .map(|i| {
                        let d = (&p[i] - &origin[i]) * Rational::from_integer(scale[i].clone());
                        d.to_integer()
                    })
                    .collect()
            })
            .collect()
    }
}

impl From<&IntSet> for PointSet {
    fn from(set: &IntSet) -> Self {
        PointSet::from_ints(set.dim(), set.points()).expect("IntSet points share its dimension")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coord {
    Int(i64),
    Big(String),
    Pair([i64; 2]),
}

#[derive(Serialize, Deserialize)]
struct RawPointSet {
    dim: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    rational: bool,
    points: Vec<Vec<Coord>>,
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use num_traits::ToPrimitive;
        let integral = self.is_integral();
        let coord = |x: &Rational| -> Coord {
            match (x.numer().to_i64(), x.denom().to_i64()) {
                (Some(p), Some(1)) if integral => Coord::Int(p),
                (Some(p), Some(q)) if !integral => Coord::Pair([p, q]),
                _ => Coord::Big(crate::rational::format_rational(x)),
            }
        };
        RawPointSet {
            dim: self.dim,
            rational: !integral,
            points: self
                .points
                .iter()
                .map(|p| p.iter().map(coord).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawPointSet::deserialize(d)?;
        let coord = |c: Coord| -> Result<Rational> {
            match c {
                Coord::Int(p) if !raw.rational => Ok(Rational::from_integer(p.into())),
                Coord::Pair([p, q]) if raw.rational => {
                    if q.is_zero() {
                        Err(Error::invalid("zero denominator"))
                    } else {
                        Ok(crate::rational::ratio(p, q))
                    }
                }
                Coord::Big(s) => crate::rational::parse_rational(&s),
                _ => Err(Error::invalid(
                    "coordinates must be integers, or [p, q] pairs when \"rational\" is true",
                )),
            }
        };
        let points = raw
            .points
            .into_iter()
            .map(|p| p.into_iter().map(coord).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        PointSet::new(raw.dim, points).map_err(D::Error::custom)
    }
}
