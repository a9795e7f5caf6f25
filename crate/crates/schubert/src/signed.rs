//! Signed permutations, the elements of the hyperoctahedral group `W(B_n)`.
//!
//! Generators: `s_0` negates the first entry, `s_i` for `1 <= i < n` swaps
//! positions `i` and `i + 1`. `s_0` and `s_1` carry the label-4 edge.

use std::fmt;
use std::str::FromStr;

use crate::perm::{PermError, Permutation};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    entries: Vec<i16>,
}

impl SignedPermutation {
    /// ```
    /// use schubert::SignedPermutation;
    /// let w = SignedPermutation::new(vec![-2, -1]).unwrap();
    /// assert_eq!(w.to_string(), "(-2,-1)");
    /// assert!(SignedPermutation::new(vec![1, -1]).is_err());
    /// ```
    pub fn new(values: Vec<i64>) -> Result<Self, PermError> {
        Permutation::new(values.iter().map(|v| v.abs()))?;
        Ok(Self {
            entries: values.into_iter().map(|v| v as i16).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            entries: (1..=n as i16).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn value(&self, i: usize) -> i64 {
        self.entries[i - 1] as i64
    }

    pub fn entries(&self) -> &[i16] {
        &self.entries
    }

    /// The underlying unsigned permutation of absolute values.
    pub fn absolute(&self) -> Permutation {
        Permutation::from_raw(
            self.entries
                .iter()
                .map(|v| v.unsigned_abs() as u8)
                .collect(),
        )
    }

    /// Right multiplication by a generator.
    pub fn mul_gen(&self, s: usize) -> Self {
        let mut e = self.entries.clone();
        if s == 0 {
            e[0] = -e[0];
        } else {
            e.swap(s - 1, s);
        }
        Self { entries: e }
    }

    /// `w s < w`, using the convention `w(0) = 0`.
    pub fn is_descent(&self, s: usize) -> bool {
        if s == 0 {
            self.entries[0] < 0
        } else {
            self.entries[s - 1] > self.entries[s]
        }
    }

    pub fn descents(&self) -> Vec<usize> {
        (0..self.size()).filter(|&s| self.is_descent(s)).collect()
    }

    /// Coxeter length: inversions plus negative sum pairs plus negative
    /// entries.
    pub fn length(&self) -> usize {
        let e = &self.entries;
        let mut len = e.iter().filter(|&&v| v < 0).count();
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if e[i] > e[j] {
                    len += 1;
                }
                if e[i] + e[j] < 0 {
                    len += 1;
                }
            }
        }
        len
    }

    /// A reduced word, by stripping descents.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(s) = w.descents().first().copied() {
            word.push(s);
            w = w.mul_gen(s);
        }
        word.reverse();
        word
    }

    pub fn from_word(n: usize, word: &[usize]) -> Self {
        word.iter().fold(Self::identity(n), |w, &s| w.mul_gen(s))
    }

    /// All `2^n n!` signed permutations of size `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for p in crate::perm::all_permutations(n) {
            for mask in 0..(1u32 << n) {
                out.push(Self {
                    entries: p
                        .entries()
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| {
                            if mask >> i & 1 == 1 {
                                -(v as i16)
                            } else {
                                v as i16
                            }
                        })
                        .collect(),
                });
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPermutation{self}")
    }
}

impl FromStr for SignedPermutation {
    type Err = PermError;

    /// Comma- or space-separated signed integers, optionally in parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let values = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| PermError::NotAnInteger(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_order_and_lengths() {
        let all = SignedPermutation::all(3);
        assert_eq!(all.len(), 48);
        let longest = "(-1,-2,-3)".parse::<SignedPermutation>().unwrap();
        assert_eq!(longest.length(), 9);
        for w in &all {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            assert_eq!(&SignedPermutation::from_word(3, &word), w);
        }
    }

    #[test]
    fn descents() {
        let w: SignedPermutation = "(-2,-1)".parse().unwrap();
        assert_eq!(w.descents(), vec![0]);
        assert_eq!(w.length(), 3);
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn words_round_trip(word in prop::collection::vec(0usize..4, 0..20)) {
            let w = SignedPermutation::from_word(4, &word);
            let r = w.reduced_word();
            prop_assert_eq!(r.len(), w.length());
            prop_assert!(r.len() <= word.len());
            prop_assert_eq!(SignedPermutation::from_word(4, &r), w.clone());
            prop_assert_eq!(w.to_string().parse::<SignedPermutation>().unwrap(), w);
        }
    }
}
