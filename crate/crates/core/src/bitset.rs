/// Fixed-capacity set of small indices, copied per search node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexSet {
    words: Vec<u64>,
}

impl IndexSet {
    pub fn with_capacity(bits: usize) -> Self {
        IndexSet {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    /// True if any index in `lo..=hi` is present.
    pub fn any_in(&self, lo: usize, hi: usize) -> bool {
        if lo > hi {
            return false;
        }
        let (first, last) = (lo / 64, hi / 64);
        for w in first..=last {
            let mut word = self.words[w];
            if w == first {
                word &= u64::MAX << (lo % 64);
            }
            if w == last && hi % 64 != 63 {
                word &= (1u64 << (hi % 64 + 1)) - 1;
            }
            if word != 0 {
                return true;
            }
        }
        false
    }
}
