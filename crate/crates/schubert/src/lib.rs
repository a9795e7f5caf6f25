//! Combinatorics of Schubert varieties in the flag variety.
//!
//! The crate works with permutations in one-line notation and answers
//! geometric questions about the Schubert variety `X_w` through pattern
//! avoidance, Bruhat order and Kazhdan-Lusztig polynomials.
//!
//! ```
//! use schubert::{properties, Permutation};
//! let w: Permutation = "625431".parse().unwrap();
//! assert!(!properties::is_smooth(&w));
//! ```

#![allow(clippy::needless_range_loop)]

pub mod acceptance;
pub mod arrangements;
pub mod bruhat;
pub mod coxeter;
pub mod enumerate;
pub mod group;
pub mod hecke;
pub mod kl;
pub mod patterns;
pub mod perm;
pub mod poly;
pub mod properties;
pub mod series;
pub mod signed;

pub use perm::Permutation;
pub use poly::{IntPolynomial, LaurentPolynomial};
pub use signed::SignedPermutation;

#[cfg(test)]
pub(crate) mod strategy {
    use proptest::prelude::*;

    use crate::Permutation;

    pub fn permutation(
        sizes: std::ops::RangeInclusive<usize>,
    ) -> impl Strategy<Value = Permutation> {
        sizes.prop_flat_map(|n| {
            Just((1..=n as i64).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::new(v).unwrap())
        })
    }
}
