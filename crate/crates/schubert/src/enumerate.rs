//! Counting and listing the permutations with a property, in parallel and
//! in a fixed order.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::coxeter::bn_is_smooth;
use crate::perm::Permutation;
use crate::properties as props;
use crate::series::{gf_series, Which};
use crate::signed::SignedPermutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("unknown property `{0}`")]
    Unknown(String),
    #[error("n = {0} is above the limit of {1} for this property")]
    TooLarge(usize, usize),
}

/// A property that can be enumerated over `S_n`, or over `W(B_n)` for
/// [`Property::BnSmooth`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    All,
    Smooth,
    Factorial,
    Gorenstein,
    Inclusions,
    Lci,
    Hexagon,
    Boolean,
    Vexillary,
    TwoVexillary,
    KlLevelLe2,
    BnSmooth,
}

const NAMES: [(Property, &str); 12] = [
    (Property::All, "all"),
    (Property::Smooth, "smooth"),
    (Property::Factorial, "factorial"),
    (Property::Gorenstein, "gorenstein"),
    (Property::Inclusions, "inclusions"),
    (Property::Lci, "lci"),
    (Property::Hexagon, "hexagon"),
    (Property::Boolean, "boolean"),
    (Property::Vexillary, "vexillary"),
    (Property::TwoVexillary, "two-vexillary"),
    (Property::KlLevelLe2, "kl2"),
    (Property::BnSmooth, "bn-smooth"),
];

impl Property {
    pub fn all() -> impl Iterator<Item = Property> {
        NAMES.iter().map(|&(p, _)| p)
    }

    pub fn name(self) -> &'static str {
        NAMES
            .iter()
            .find(|(p, _)| *p == self)
            .map(|(_, s)| *s)
            .expect("named")
    }

    /// The type-A predicate; `None` for the signed property.
    pub fn predicate(self) -> Option<fn(&Permutation) -> bool> {
        Some(match self {
            Self::All => |_: &Permutation| true,
            Self::Smooth => props::is_smooth,
            Self::Factorial => props::is_factorial,
            Self::Gorenstein => props::is_gorenstein,
            Self::Inclusions => props::is_defined_by_inclusions,
            Self::Lci => props::is_lci,
            Self::Hexagon => props::is_321_hexagon_avoiding,
            Self::Boolean => props::is_boolean,
            Self::Vexillary => props::is_vexillary,
            Self::TwoVexillary => props::is_2_vexillary,
            Self::KlLevelLe2 => props::kl_filtration_level_le2,
            Self::BnSmooth => return None,
        })
    }

    /// Largest `n` accepted for counting.
    pub fn limit(self) -> usize {
        match self {
            Self::BnSmooth => 6,
            _ => 10,
        }
    }

    /// A closed-form count for size `n`, when one is known.
    pub fn expected_count(self, n: usize) -> Option<BigInt> {
        let from = |w: Which| gf_series(w, n).ok().map(|s| s[n].clone());
        match self {
            Self::All => Some((1..=n).map(BigInt::from).product()),
            Self::Smooth => from(Which::Smooth),
            Self::Factorial if n >= 1 => from(Which::Factorial),
            Self::Inclusions => from(Which::Inclusions),
            Self::Boolean if n >= 1 => Some(fibonacci(2 * n - 1)),
            _ => None,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = EnumerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NAMES
            .iter()
            .find(|(_, name)| *name == s)
            .map(|(p, _)| *p)
            .ok_or_else(|| EnumerateError::Unknown(s.to_string()))
    }
}

/// `F_1 = F_2 = 1`.
pub fn fibonacci(k: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::from(0), BigInt::from(1));
    for _ in 0..k {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// The permutations of size `n` starting with `first`, in lexicographic order.
fn block(n: usize, first: usize) -> impl Iterator<Item = Permutation> {
    let start: Vec<i64> = std::iter::once(first)
        .chain((1..=n).filter(move |&v| v != first))
        .map(|v| v as i64)
        .collect();
    let start = Permutation::new(start).expect("block start");
    std::iter::successors(Some(start), |w| w.next_lex()).take_while(move |w| w.value(1) == first)
}

/// Runs `f` on each block of `S_n` (split by first entry) in parallel and
/// returns the results in block order.
pub fn map_blocks<T: Send>(
    n: usize,
    f: impl Fn(&mut dyn Iterator<Item = Permutation>) -> T + Sync,
) -> Vec<T> {
    if n == 0 {
        let mut once = std::iter::once(Permutation::identity(0));
        return vec![f(&mut once)];
    }
    (1..=n)
        .into_par_iter()
        .map(|first| f(&mut block(n, first)))
        .collect()
}

fn check_limit(property: Property, n: usize) -> Result<(), EnumerateError> {
    if n > property.limit() {
        return Err(EnumerateError::TooLarge(n, property.limit()));
    }
    Ok(())
}

/// Number of elements of size `n` with the property.
///
/// ```
/// use schubert::enumerate::{count, Property};
/// assert_eq!(count(Property::Smooth, 6).unwrap(), 366);
/// assert_eq!(count(Property::Boolean, 3).unwrap(), 5);
/// ```
pub fn count(property: Property, n: usize) -> Result<u64, EnumerateError> {
    check_limit(property, n)?;
    match property.predicate() {
        Some(pred) => Ok(map_blocks(n, |it| it.filter(&pred).count() as u64)
            .into_iter()
            .sum()),
        None => Ok(SignedPermutation::all(n)
            .par_iter()
            .filter(|w| bn_is_smooth(w))
            .count() as u64),
    }
}

/// The elements with the property, as strings in lexicographic order.
pub fn list(property: Property, n: usize) -> Result<Vec<String>, EnumerateError> {
    check_limit(property, n)?;
    match property.predicate() {
        Some(pred) => Ok(map_blocks(n, |it| {
            it.filter(&pred).map(|w| w.to_string()).collect::<Vec<_>>()
        })
        .concat()),
        None => Ok(SignedPermutation::all(n)
            .into_iter()
            .filter(bn_is_smooth)
            .map(|w| w.to_string())
            .collect()),
    }
}

/// One line of a [`VerificationReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub n: usize,
    pub expected: Option<String>,
    pub actual: u64,
    pub passed: bool,
}

/// Expected against actual counts for a range of sizes.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub rows: Vec<CountRow>,
    pub passed: bool,
    pub elapsed_ms: u128,
}

/// Counts sizes `1..=nmax` and compares each with the closed form.
pub fn verify_counts(
    property: Property,
    nmax: usize,
) -> Result<VerificationReport, EnumerateError> {
    let start = Instant::now();
    let mut rows = Vec::new();
    for n in 1..=nmax {
        let actual = count(property, n)?;
        let expected = property.expected_count(n);
        let passed = expected.as_ref().is_none_or(|e| *e == BigInt::from(actual));
        rows.push(CountRow {
            n,
            expected: expected.map(|e| e.to_string()),
            actual,
            passed,
        });
    }
    Ok(VerificationReport {
        suite: format!("{property} counts"),
        passed: rows.iter().all(|r| r.passed),
        rows,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_cover_everything_in_order() {
        let all = list(Property::All, 4).unwrap();
        assert_eq!(all.len(), 24);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn names_round_trip() {
        for p in Property::all() {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert!("nonsense".parse::<Property>().is_err());
    }

    #[test]
    fn counts_match_lists_and_closed_forms() {
        for p in Property::all() {
            for n in 1..=5 {
                assert_eq!(
                    count(p, n).unwrap() as usize,
                    list(p, n).unwrap().len(),
                    "{p} {n}"
                );
            }
        }
        for p in [
            Property::Smooth,
            Property::Factorial,
            Property::Inclusions,
            Property::Boolean,
        ] {
            assert!(verify_counts(p, 7).unwrap().passed, "{p}");
        }
        assert_eq!(count(Property::Smooth, 1).unwrap(), 1);
        assert_eq!(fibonacci(5), BigInt::from(5));
    }
}
