//! Subset-sum sets `Σ(A) = { Σ_{b∈B} b : B ⊆ A }`, with `0` from the empty subset.

use std::collections::BTreeSet;

use crate::bitset::Bitset;
use crate::config::Budgets;
use crate::error::{budget, Error, Result};
use crate::lattice::{add, is_zero, IntSet, Point};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    /// Bit `i` stands for the value `offset + i`.
    Dense {
        offset: i64,
        bits: Bitset,
    },
    Tuples(BTreeSet<Point>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumSet {
    dim: usize,
    repr: Repr,
}

impl SumSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Dense { bits, .. } => bits.count_ones(),
            Repr::Tuples(set) => set.len(),
        }
    }

    /// Never true: the empty sum is always present.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        if p.len() != self.dim {
            return false;
        }
        match &self.repr {
            Repr::Dense { offset, bits } => {
                let idx = p[0] as i128 - *offset as i128;
                idx >= 0 && (idx as u128) < bits.len() as u128 && bits.get(idx as usize)
            }
            Repr::Tuples(set) => set.contains(p),
        }
    }

    /// Elements in lexicographic order.
    pub fn elements(&self) -> Vec<Point> {
        match &self.repr {
            Repr::Dense { offset, bits } => bits.ones().map(|i| vec![offset + i as i64]).collect(),
            Repr::Tuples(set) => set.iter().cloned().collect(),
        }
    }

    /// Smallest and largest element of a 1-D sum set.
    pub fn range_1d(&self) -> Option<(i64, i64)> {
        match &self.repr {
            Repr::Dense { offset, bits } => {
                let lo = bits.next_one(0)?;
                let hi = bits.ones().last()?;
                Some((offset + lo as i64, offset + hi as i64))
            }
            Repr::Tuples(_) => None,
        }
    }
}

/// Computes `Σ(A)` by iterative Minkowski accumulation: each element `a`
/// maps the running set `S` to `S ∪ (S + a)`.
pub fn subset_sums(a: &IntSet, budgets: &Budgets) -> Result<SumSet> {
    sums_of_vectors(a.dim(), a.points(), budgets)
}

/// `Σ` of an arbitrary list of vectors (repeats allowed).
pub fn sums_of_vectors(dim: usize, vectors: &[Point], budgets: &Budgets) -> Result<SumSet> {
    if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: v.len(),
        });
    }
    if dim == 1 {
        return dense_sums(vectors.iter().map(|v| v[0]), budgets);
    }
    let mut set = BTreeSet::new();
    set.insert(vec![0; dim]);
    for v in vectors {
        let shifted = set.iter().map(|s| add(s, v)).collect::<Result<Vec<_>>>()?;
        set.extend(shifted);
        budget(
            "subset-sum tuples",
            set.len() as u128,
            budgets.max_tuples as u128,
        )?;
    }
    Ok(SumSet {
        dim,
        repr: Repr::Tuples(set),
    })
}

fn dense_sums<I: Iterator<Item = i64> + Clone>(values: I, budgets: &Budgets) -> Result<SumSet> {
    let (mut lo, mut hi) = (0i128, 0i128);
    for v in values.clone() {
        if v < 0 {
            lo += v as i128;
        } else {
            hi += v as i128;
        }
    }
    if lo < i64::MIN as i128 || hi > i64::MAX as i128 {
        return Err(Error::Overflow("subset-sum range"));
    }
    let cells = (hi - lo + 1) as u128;
    budget("subset-sum cells", cells, budgets.max_sum_cells as u128)?;
    let mut bits = Bitset::new(cells as usize);
    bits.set((-lo) as usize);
    for v in values {
        if v >= 0 {
            bits.or_shift_up(v as usize);
        } else {
            bits.or_shift_down(v.unsigned_abs() as usize);
        }
    }
    Ok(SumSet {
        dim: 1,
        repr: Repr::Dense {
            offset: lo as i64,
            bits,
        },
    })
}

/// The lexicographically smallest nonzero element common to both sets.
pub fn sumsets_share_nonzero(s1: &SumSet, s2: &SumSet) -> Result<Option<Point>> {
    if s1.dim != s2.dim {
        return Err(Error::DimensionMismatch {
            expected: s1.dim,
            got: s2.dim,
        });
    }
    Ok(common_elements(s1, s2).find(|p| !is_zero(p)))
}

/// Common elements in increasing lexicographic order.
pub(crate) fn common_elements<'a>(
    s1: &'a SumSet,
    s2: &'a SumSet,
) -> Box<dyn Iterator<Item = Point> + 'a> {
    match (&s1.repr, &s2.repr) {
        (Repr::Dense { offset, bits }, _) => Box::new(
            bits.ones()
                .map(move |i| vec![offset + i as i64])
                .filter(move |p| s2.contains(p)),
        ),
        (Repr::Tuples(set), _) => Box::new(set.iter().filter(move |p| s2.contains(p)).cloned()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sums(values: &[i64]) -> Vec<i64> {
        let a = IntSet::from_ints(values.iter().copied()).unwrap();
        subset_sums(&a, &Budgets::default())
            .unwrap()
            .elements()
            .into_iter()
            .map(|p| p[0])
            .collect()
    }

    fn brute(values: &[i64]) -> BTreeSet<i64> {
        (0u64..1 << values.len())
            .map(|m| {
                values
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, v)| v)
                    .sum()
            })
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(sums(&[]), vec![0]);
        assert_eq!(sums(&[1, 2]), vec![0, 1, 2, 3]);
        // all 2^3 subsets of {1,2,3} enumerated by hand
        assert_eq!(sums(&[1, 2, 3]), vec![0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(sums(&[-2, 3]), vec![-2, 0, 1, 3]);
    }

    #[test]
    fn share_nonzero_examples() {
        let b = Budgets::default();
        let s =
            |v: &[i64]| subset_sums(&IntSet::from_ints(v.iter().copied()).unwrap(), &b).unwrap();
        assert_eq!(sumsets_share_nonzero(&s(&[1]), &s(&[2])).unwrap(), None);
        assert_eq!(
            sumsets_share_nonzero(&s(&[1, 2]), &s(&[3])).unwrap(),
            Some(vec![3])
        );
        assert_eq!(
            sumsets_share_nonzero(&s(&[2]), &s(&[2])).unwrap(),
            Some(vec![2])
        );
        let t = subset_sums(&IntSet::new(2, vec![vec![1, 0]]).unwrap(), &b).unwrap();
        assert!(matches!(
            sumsets_share_nonzero(&s(&[1]), &t),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tuples_in_two_dimensions() {
        let a = IntSet::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let s = subset_sums(&a, &Budgets::default()).unwrap();
        assert!(s.contains(&[0, 0]));
        assert!(s.contains(&[2, 2]));
        assert!(s.contains(&[1, 1]));
        assert_eq!(s.len(), 7); // (1,1) arises twice
    }

    #[test]
    fn budget_is_enforced() {
        let tight = Budgets {
            max_sum_cells: 10,
            ..Budgets::default()
        };
        let a = IntSet::from_ints([5, 6]).unwrap();
        assert!(subset_sums(&a, &tight).unwrap_err().is_budget());
        let tight = Budgets {
            max_tuples: 3,
            ..Budgets::default()
        };
        let a = IntSet::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(subset_sums(&a, &tight).unwrap_err().is_budget());
    }

    proptest! {
        #[test]
        fn matches_enumeration(values in prop::collection::btree_set(-30i64..30, 0..10)) {
            let values: Vec<i64> = values.into_iter().collect();
            let got: BTreeSet<i64> = sums(&values).into_iter().collect();
            prop_assert_eq!(got, brute(&values));
        }

        #[test]
        fn adding_an_element(values in prop::collection::btree_set(-20i64..20, 0..8), x in -20i64..20) {
            prop_assume!(!values.contains(&x));
            let base: Vec<i64> = values.iter().copied().collect();
            let mut ext = base.clone();
            ext.push(x);
            let before: BTreeSet<i64> = sums(&base).into_iter().collect();
            let after: BTreeSet<i64> = sums(&ext).into_iter().collect();
            let expect: BTreeSet<i64> = before.iter().copied().chain(before.iter().map(|s| s + x)).collect();
            prop_assert!(after.len() >= before.len());
            prop_assert_eq!(after, expect);
        }
    }
}
