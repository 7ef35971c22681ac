/// Set of colour ids used along a partial cycle.
pub trait ColourSet: Clone {
    fn with_palette(n_colours: usize) -> Self;
    fn contains(&self, colour: usize) -> bool;
    fn insert(&mut self, colour: usize);
    fn remove(&mut self, colour: usize);
}

impl ColourSet for u128 {
    fn with_palette(n_colours: usize) -> Self {
        debug_assert!(n_colours <= 128);
        0
    }

    #[inline]
    fn contains(&self, colour: usize) -> bool {
        self >> colour & 1 == 1
    }

    #[inline]
    fn insert(&mut self, colour: usize) {
        *self |= 1 << colour;
    }

    #[inline]
    fn remove(&mut self, colour: usize) {
        *self &= !(1 << colour);
    }
}

/// Bitset for palettes wider than 128 colours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WideColourSet {
    words: Vec<u64>,
}

impl ColourSet for WideColourSet {
    fn with_palette(n_colours: usize) -> Self {
        WideColourSet { words: vec![0; n_colours.div_ceil(64)] }
    }

    fn contains(&self, colour: usize) -> bool {
        self.words[colour / 64] >> (colour % 64) & 1 == 1
    }

    fn insert(&mut self, colour: usize) {
        self.words[colour / 64] |= 1 << (colour % 64);
    }

    fn remove(&mut self, colour: usize) {
        self.words[colour / 64] &= !(1 << (colour % 64));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exercise<S: ColourSet>(n: usize) {
        let mut s = S::with_palette(n);
        for c in (0..n).step_by(7) {
            assert!(!s.contains(c));
            s.insert(c);
            assert!(s.contains(c));
        }
        s.remove(7);
        assert!(!s.contains(7));
        assert!(s.contains(14));
    }

    #[test]
    fn both_sets_behave_alike() {
        exercise::<u128>(128);
        exercise::<WideColourSet>(300);
    }
}
