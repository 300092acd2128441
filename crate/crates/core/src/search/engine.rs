//! Branch and bound for the largest non-averaging subset of a finite
//! universe `U ⊂ Z`, scanned in increasing order.
//!
//! Elements are only ever appended above the current maximum, so a new
//! element `x` can never be an average of smaller ones. What remains is that
//! no member `a` may become the average of a subset containing `x`, i.e.
//! `x ∉ a + Σ{a - s : s ∈ A, s ≠ a}`. Each member keeps the positive part of
//! that sum set; later generators `a - y` are negative, so nonpositive sums
//! never matter again.

use std::collections::{BTreeSet, HashMap};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::bitset::Bitset;

/// Candidate values, strictly increasing.
pub(crate) struct Universe {
    values: Vec<i64>,
    /// Set when `values` is the contiguous run `base, base+1, ...`.
    base: Option<i64>,
    index: HashMap<i64, usize>,
}

impl Universe {
    pub(crate) fn new(values: Vec<i64>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        let contiguous = values.windows(2).all(|w| w[1] == w[0] + 1);
        let base = if contiguous {
            values.first().copied()
        } else {
            None
        };
        let index = if contiguous {
            HashMap::new()
        } else {
            values.iter().enumerate().map(|(i, &v)| (v, i)).collect()
        };
        Universe {
            values,
            base,
            index,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.values.len()
    }

    fn index_of(&self, v: i64) -> Option<usize> {
        match self.base {
            Some(b) => {
                let i = v - b;
                (i >= 0 && (i as usize) < self.values.len()).then_some(i as usize)
            }
            None => self.index.get(&v).copied(),
        }
    }
}

/// Positive subset sums of one member's difference multiset.
pub(crate) trait SumStore: Clone + Send + Sync {
    fn empty(universe: &Universe) -> Self;
    /// `S <- S ∪ ((S ∪ {0}) + g)`, keeping positive values only.
    fn add_generator(&mut self, g: i64);
    /// Marks every universe index of `a + t` for `t` in the store.
    fn mark(&self, a: i64, universe: &Universe, out: &mut Bitset);
}

/// Dense bit vector over `[0, cap]`; needs a contiguous universe.
#[derive(Clone)]
pub(crate) struct DenseSums(Bitset);

impl SumStore for DenseSums {
    fn empty(universe: &Universe) -> Self {
        // a positive sum never exceeds (|U| - 1) per generator, at most |U| generators
        let n = universe.len();
        DenseSums(Bitset::new(n * n + 1))
    }

    fn add_generator(&mut self, g: i64) {
        if g > 0 {
            let g = g as usize;
            self.0.or_shift_up(g);
            if g < self.0.len() {
                self.0.set(g);
            }
        } else {
            self.0.or_shift_down(g.unsigned_abs() as usize);
            // a zero sum is never a valid target
            self.0.clear(0);
        }
    }

    fn mark(&self, a: i64, universe: &Universe, out: &mut Bitset) {
        let base = universe
            .base
            .expect("dense sums need a contiguous universe");
        out.or_from_shifted(&self.0, (a - base) as usize);
    }
}

#[derive(Clone)]
pub(crate) struct SparseSums(BTreeSet<i64>);

impl SumStore for SparseSums {
    fn empty(_: &Universe) -> Self {
        SparseSums(BTreeSet::new())
    }

    fn add_generator(&mut self, g: i64) {
        let shifted: Vec<i64> = self
            .0
            .iter()
            .map(|s| s + g)
            .chain(std::iter::once(g))
            .filter(|&v| v > 0)
            .collect();
        self.0.extend(shifted);
    }

    fn mark(&self, a: i64, universe: &Universe, out: &mut Bitset) {
        for t in &self.0 {
            if let Some(i) = universe.index_of(a + t) {
                out.set(i);
            }
        }
    }
}

#[derive(Clone)]
struct Node<S> {
    chosen: Vec<usize>,
    stores: Vec<S>,
    forbidden: Bitset,
}

impl<S: SumStore> Node<S> {
    fn root(universe: &Universe) -> Self {
        Node {
            chosen: Vec::new(),
            stores: Vec::new(),
            forbidden: Bitset::new(universe.len()),
        }
    }

    fn push(&self, x: usize, universe: &Universe) -> Self {
        let xv = universe.values[x];
        let mut stores = self.stores.clone();
        for (store, &a) in stores.iter_mut().zip(&self.chosen) {
            store.add_generator(universe.values[a] - xv);
        }
        let mut own = S::empty(universe);
        for &s in &self.chosen {
            own.add_generator(xv - universe.values[s]);
        }
        stores.push(own);
        let mut chosen = self.chosen.clone();
        chosen.push(x);
        let mut forbidden = self.forbidden.clone();
        for (store, &a) in stores.iter().zip(&chosen) {
            store.mark(universe.values[a], universe, &mut forbidden);
        }
        Node {
            chosen,
            stores,
            forbidden,
        }
    }

    fn open_after(&self, x: usize, universe: &Universe) -> usize {
        (x + 1..universe.len())
            .filter(|&i| !self.forbidden.get(i))
            .count()
    }
}

/// Upper bound on how many more elements fit above index `x`, besides the
/// count of open candidates.
pub(crate) type TailBound<'a> = &'a (dyn Fn(usize) -> usize + Sync);

pub(crate) struct Outcome {
    pub best: Vec<usize>,
    pub nodes: u64,
}

struct Search<'a, S> {
    universe: &'a Universe,
    tail: Option<TailBound<'a>>,
    nodes: u64,
    best: Vec<usize>,
    /// Incumbent size shared with other workers; pruning against it is
    /// strict so that ties are still explored locally.
    shared: Option<&'a AtomicUsize>,
    _store: std::marker::PhantomData<S>,
}

impl<'a, S: SumStore> Search<'a, S> {
    fn bound(&self, node: &Node<S>, last: usize) -> usize {
        let open = node.open_after(last, self.universe);
        let extra = match self.tail {
            Some(t) => open.min(t(last)),
            None => open,
        };
        node.chosen.len() + extra
    }

    fn pruned(&self, bound: usize) -> bool {
        if bound <= self.best.len() {
            return true;
        }
        self.shared
            .is_some_and(|g| bound < g.load(Ordering::Relaxed))
    }

    fn dfs(&mut self, node: &Node<S>) {
        self.nodes += 1;
        #[cfg(debug_assertions)]
        if self.nodes.is_multiple_of(61) {
            check_forbidden(node, self.universe);
        }
        if node.chosen.len() > self.best.len() {
            self.best = node.chosen.clone();
            if let Some(g) = self.shared {
                g.fetch_max(self.best.len(), Ordering::Relaxed);
            }
        }
        let last = node.chosen.last().copied();
        let start = last.map_or(0, |l| l + 1);
        if let Some(l) = last {
            if self.pruned(self.bound(node, l)) {
                return;
            }
        }
        for x in start..self.universe.len() {
            if node.forbidden.get(x) {
                continue;
            }
            // even taking x and every later open candidate cannot win
            let rest = node.open_after(x, self.universe);
            let rest = self.tail.map_or(rest, |t| rest.min(t(x)));
            if self.pruned(node.chosen.len() + 1 + rest) {
                continue;
            }
            let child = node.push(x, self.universe);
            self.dfs(&child);
        }
    }
}

/// Sampled soundness check of the feasibility pruning: a candidate is marked
/// forbidden exactly when appending it creates an average.
#[cfg(debug_assertions)]
fn check_forbidden<S>(node: &Node<S>, universe: &Universe) {
    if node.chosen.len() > 9 {
        return;
    }
    let start = node.chosen.last().map_or(0, |l| l + 1);
    for x in start..universe.len() {
        let mut set: Vec<i64> = node.chosen.iter().map(|&i| universe.values[i]).collect();
        set.push(universe.values[x]);
        let averaging = set.iter().enumerate().any(|(ci, &c)| {
            let others: Vec<i64> = set
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != ci)
                .map(|(_, &v)| v)
                .collect();
            (1u32..1 << others.len()).any(|m| {
                let (k, total) = others
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| m >> j & 1 == 1)
                    .fold((0i128, 0i128), |(k, t), (_, &v)| (k + 1, t + v as i128));
                total == k * c as i128
            })
        });
        assert_eq!(
            averaging,
            node.forbidden.get(x),
            "forbidden mark wrong for {set:?}"
        );
    }
}

/// Single-threaded search from the empty set.
pub(crate) fn search_serial<S: SumStore>(universe: &Universe, tail: Option<TailBound>) -> Outcome {
    let mut s = Search::<S> {
        universe,
        tail,
        nodes: 0,
        best: Vec::new(),
        shared: None,
        _store: std::marker::PhantomData,
    };
    s.dfs(&Node::root(universe));
    Outcome {
        best: s.best,
        nodes: s.nodes,
    }
}

/// Distributes the root branches (choice of the smallest element) over
/// `workers` threads. The answer is identical to [`search_serial`]: each
/// branch finds its own lexicographically first maximum and the merge keeps
/// the largest, breaking ties by the smaller first element.
pub(crate) fn search_parallel<S: SumStore>(
    universe: &Universe,
    tail: Option<TailBound>,
    workers: usize,
) -> Outcome {
    let n = universe.len();
    let next = AtomicUsize::new(0);
    let global = AtomicUsize::new(0);
    let nodes = AtomicU64::new(1);
    let results: Mutex<Vec<Option<Vec<usize>>>> = Mutex::new(vec![None; n]);
    let root = Node::<S>::root(universe);

    std::thread::scope(|scope| {
        for _ in 0..workers.max(1) {
            scope.spawn(|| loop {
                let x = next.fetch_add(1, Ordering::Relaxed);
                if x >= n {
                    break;
                }
                let rest = n - x - 1;
                let rest = tail.map_or(rest, |t| rest.min(t(x)));
                if 1 + rest < global.load(Ordering::Relaxed) {
                    continue;
                }
                let mut s = Search::<S> {
                    universe,
                    tail,
                    nodes: 0,
                    best: Vec::new(),
                    shared: Some(&global),
                    _store: std::marker::PhantomData,
                };
                s.dfs(&root.push(x, universe));
                nodes.fetch_add(s.nodes, Ordering::Relaxed);
                results.lock().unwrap()[x] = Some(s.best);
            });
        }
    });

    let mut best: Vec<usize> = Vec::new();
    for found in results.into_inner().unwrap().into_iter().flatten() {
        if found.len() > best.len() {
            best = found;
        }
    }
    Outcome {
        best,
        nodes: nodes.into_inner(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_and_sparse_agree() {
        for n in 1..=14 {
            let u = Universe::new((1..=n).collect());
            let dense = search_serial::<DenseSums>(&u, None).best;
            let sparse = search_serial::<SparseSums>(&u, None).best;
            assert_eq!(dense, sparse, "n={n}");
            let par = search_parallel::<SparseSums>(&u, None, 3).best;
            assert_eq!(dense, par, "n={n}");
        }
    }

    #[test]
    fn sparse_universe() {
        // {1,2,3,5}: {1,2,5} is non-averaging, {1,2,3} is not
        let u = Universe::new(vec![1, 2, 3, 5]);
        let best = search_serial::<SparseSums>(&u, None).best;
        assert_eq!(best, vec![0, 1, 3]);
    }
}
