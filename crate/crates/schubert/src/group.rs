//! The minimal interface the Hecke algebra and Kazhdan-Lusztig code needs
//! from a Coxeter group, with implementations for `S_n` and `W(B_n)`.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use crate::perm::Permutation;
use crate::signed::SignedPermutation;

/// A finite-rank Coxeter system with generators `0..rank()`.
pub trait CoxeterGroup {
    type Element: Clone + Eq + Hash + Ord + Debug + Display + Send + Sync;

    fn rank(&self) -> usize;

    fn identity(&self) -> Self::Element;

    /// Right multiplication `w s`.
    fn mul_gen(&self, w: &Self::Element, s: usize) -> Self::Element;

    /// `w s < w`.
    fn is_right_descent(&self, w: &Self::Element, s: usize) -> bool;

    /// Whether `w` belongs to this group (right size, valid entries).
    fn contains(&self, _w: &Self::Element) -> bool {
        true
    }

    fn right_descents(&self, w: &Self::Element) -> Vec<usize> {
        (0..self.rank())
            .filter(|&s| self.is_right_descent(w, s))
            .collect()
    }

    /// A reduced word, found by stripping right descents.
    fn reduced_word(&self, w: &Self::Element) -> Vec<usize> {
        let mut cur = w.clone();
        let mut word = Vec::new();
        while let Some(s) = (0..self.rank()).find(|&s| self.is_right_descent(&cur, s)) {
            word.push(s);
            cur = self.mul_gen(&cur, s);
        }
        word.reverse();
        word
    }

    fn length(&self, w: &Self::Element) -> usize {
        self.reduced_word(w).len()
    }

    fn product_of_word(&self, word: &[usize]) -> Self::Element {
        word.iter()
            .fold(self.identity(), |w, &s| self.mul_gen(&w, s))
    }
}

/// `S_n`; generator `k` is the simple transposition `s_{k+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetricGroup {
    pub n: usize,
}

impl SymmetricGroup {
    pub fn new(n: usize) -> Self {
        Self { n }
    }
}

impl CoxeterGroup for SymmetricGroup {
    type Element = Permutation;

    fn rank(&self) -> usize {
        self.n.saturating_sub(1)
    }

    fn identity(&self) -> Permutation {
        Permutation::identity(self.n)
    }

    fn mul_gen(&self, w: &Permutation, s: usize) -> Permutation {
        w.mul_simple(s + 1)
    }

    fn is_right_descent(&self, w: &Permutation, s: usize) -> bool {
        w.is_descent(s + 1)
    }

    fn contains(&self, w: &Permutation) -> bool {
        w.size() == self.n
    }

    fn length(&self, w: &Permutation) -> usize {
        w.length()
    }
}

/// The hyperoctahedral group `W(B_n)` on signed permutations; generator 0
/// changes the sign of the first entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HyperoctahedralGroup {
    pub n: usize,
}

impl HyperoctahedralGroup {
    pub fn new(n: usize) -> Self {
        Self { n }
    }
}

impl CoxeterGroup for HyperoctahedralGroup {
    type Element = SignedPermutation;

    fn rank(&self) -> usize {
        self.n
    }

    fn identity(&self) -> SignedPermutation {
        SignedPermutation::identity(self.n)
    }

    fn mul_gen(&self, w: &SignedPermutation, s: usize) -> SignedPermutation {
        w.mul_gen(s)
    }

    fn is_right_descent(&self, w: &SignedPermutation, s: usize) -> bool {
        w.is_descent(s)
    }

    fn contains(&self, w: &SignedPermutation) -> bool {
        w.size() == self.n
    }

    fn length(&self, w: &SignedPermutation) -> usize {
        w.length()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_round_trip() {
        let g = SymmetricGroup::new(4);
        let w: Permutation = "3412".parse().unwrap();
        let word = g.reduced_word(&w);
        assert_eq!(word.len(), 4);
        assert_eq!(g.product_of_word(&word), w);
        let b = HyperoctahedralGroup::new(2);
        let longest = b.product_of_word(&[0, 1, 0, 1]);
        assert_eq!(longest.to_string(), "(-1,-2)");
        assert_eq!(b.length(&longest), 4);
    }
}
