//! Fixed-length dense bit vector with word-level shifted unions.

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Bitset {
    len: usize,
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn any(&self) -> bool {
        self.words.iter().any(|&w| w != 0)
    }

    /// `self |= self << shift` (towards higher indices), truncated at `len`.
    pub fn or_shift_up(&mut self, shift: usize) {
        if shift == 0 || shift >= self.len {
            return;
        }
        let (ws, bs) = (shift / WORD, shift % WORD);
        for i in (ws..self.words.len()).rev() {
            let src = i - ws;
            let mut v = self.words[src] << bs;
            if bs > 0 && src > 0 {
                v |= self.words[src - 1] >> (WORD - bs);
            }
            self.words[i] |= v;
        }
        self.trim();
    }

    /// `self |= self >> shift` (towards lower indices).
    pub fn or_shift_down(&mut self, shift: usize) {
        if shift == 0 || shift >= self.len {
            return;
        }
        let (ws, bs) = (shift / WORD, shift % WORD);
        let n = self.words.len();
        for i in 0..n - ws {
            let src = i + ws;
            let mut v = self.words[src] >> bs;
            if bs > 0 && src + 1 < n {
                v |= self.words[src + 1] << (WORD - bs);
            }
            self.words[i] |= v;
        }
    }

    /// Bitwise OR of `other << shift` into `self`; bits past `len` are dropped.
    pub fn or_from_shifted(&mut self, other: &Bitset, shift: usize) {
        let (ws, bs) = (shift / WORD, shift % WORD);
        for (src, &w) in other.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let dst = src + ws;
            if dst < self.words.len() {
                self.words[dst] |= w << bs;
            }
            if bs > 0 && dst + 1 < self.words.len() {
                self.words[dst + 1] |= w >> (WORD - bs);
            }
        }
        self.trim();
    }

    pub fn or_assign(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        self.trim();
    }

    /// Indices of set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + b)
            })
        })
    }

    /// First set bit at index `>= from`.
    pub fn next_one(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut i = from / WORD;
        let mut w = self.words[i] & (!0u64 << (from % WORD));
        loop {
            if w != 0 {
                let idx = i * WORD + w.trailing_zeros() as usize;
                return (idx < self.len).then_some(idx);
            }
            i += 1;
            if i == self.words.len() {
                return None;
            }
            w = self.words[i];
        }
    }

    fn trim(&mut self) {
        let extra = self.words.len() * WORD - self.len;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= !0u64 >> extra;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_shift(bits: &[bool], shift: isize) -> Vec<bool> {
        let mut out = bits.to_vec();
        for (i, &b) in bits.iter().enumerate() {
            let j = i as isize + shift;
            if b && j >= 0 && (j as usize) < bits.len() {
                out[j as usize] = true;
            }
        }
        out
    }

    proptest! {
        #[test]
        fn shifts_match_naive(bits in prop::collection::vec(any::<bool>(), 1..300), shift in 0usize..320) {
            let mut bs = Bitset::new(bits.len());
            for (i, &b) in bits.iter().enumerate() {
                if b { bs.set(i); }
            }
            let mut up = bs.clone();
            up.or_shift_up(shift);
            let mut down = bs.clone();
            down.or_shift_down(shift);
            let mut from = Bitset::new(bits.len());
            from.or_from_shifted(&bs, shift);
            let want_up = naive_shift(&bits, shift as isize);
            let want_down = naive_shift(&bits, -(shift as isize));
            for i in 0..bits.len() {
                prop_assert_eq!(up.get(i), want_up[i]);
                prop_assert_eq!(down.get(i), want_down[i]);
                let j = i as isize - shift as isize;
                prop_assert_eq!(from.get(i), j >= 0 && bits[j as usize]);
            }
            prop_assert_eq!(bs.ones().count(), bs.count_ones());
        }
    }

    #[test]
    fn next_one_scans_words() {
        let mut b = Bitset::new(200);
        b.set(3);
        b.set(130);
        assert_eq!(b.next_one(0), Some(3));
        assert_eq!(b.next_one(4), Some(130));
        assert_eq!(b.next_one(131), None);
    }
}
