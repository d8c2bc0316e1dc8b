//! Dense bit-matrix for binary relations on small index sets.

/// Relation on `0..n` stored row-major as a bit matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairSet {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl PairSet {
    pub fn empty(n: usize) -> Self {
        let words_per_row = n.div_ceil(64).max(1);
        PairSet { n, words_per_row, bits: vec![0; words_per_row * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = PairSet::empty(n);
        for a in 0..n {
            for b in 0..n {
                if f(a, b) {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.words_per_row + b / 64] >> (b % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits[a * self.words_per_row + b / 64] |= 1 << (b % 64);
    }

    #[inline]
    pub fn remove(&mut self, a: usize, b: usize) {
        self.bits[a * self.words_per_row + b / 64] &= !(1 << (b % 64));
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| (0..self.n).filter(move |&b| self.contains(a, b)).map(move |b| (a, b)))
    }

    pub fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&b| self.contains(a, b))
    }

    /// `self ; other`: `a` related to `c` iff some `b` has `a self b other c`.
    pub fn compose(&self, other: &PairSet) -> PairSet {
        assert_eq!(self.n, other.n);
        let mut out = PairSet::empty(self.n);
        for a in 0..self.n {
            for b in self.successors(a) {
                let src = &other.bits[b * self.words_per_row..(b + 1) * self.words_per_row];
                let dst = &mut out.bits[a * self.words_per_row..(a + 1) * self.words_per_row];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d |= s;
                }
            }
        }
        out
    }

    pub fn converse(&self) -> PairSet {
        PairSet::from_fn(self.n, |a, b| self.contains(b, a))
    }

    pub fn identity(n: usize) -> PairSet {
        PairSet::from_fn(n, |a, b| a == b)
    }
}

impl std::fmt::Debug for PairSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_matches_definition() {
        let r = PairSet::from_fn(70, |a, b| b == (a * 7 + 3) % 70 || b == a / 2);
        let s = PairSet::from_fn(70, |a, b| (a + b) % 11 == 0);
        let rs = r.compose(&s);
        for a in 0..70 {
            for c in 0..70 {
                let direct = (0..70).any(|b| r.contains(a, b) && s.contains(b, c));
                assert_eq!(rs.contains(a, c), direct);
            }
        }
        assert_eq!(r.converse().converse(), r);
        assert_eq!(PairSet::identity(70).compose(&r), r);
    }
}
