//! Inversion arrangements and matrix counts over finite fields.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::bruhat::poincare;
use crate::perm::Permutation;
use crate::poly::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("more than {0} regions")]
    Budget(usize),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{q}^{free} matrices is beyond the brute-force limit")]
    Scale { q: u64, free: usize },
    #[error("cell ({0}, {1}) lies outside the {2}x{2} grid")]
    BadCell(usize, usize, usize),
}

/// The hyperplanes `x_i = x_j` for the inversions `i < j` of `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionArrangement {
    pub n: usize,
    pub hyperplanes: Vec<(usize, usize)>,
}

/// A region, as one sign per hyperplane: `true` means `x_i > x_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Region {
    pub signs: Vec<bool>,
}

impl Region {
    /// Hyperplanes separating this region from the one containing
    /// `x_1 > x_2 > ... > x_n`.
    pub fn distance(&self) -> usize {
        self.signs.iter().filter(|&&s| !s).count()
    }

    /// Sign vector as `+`/`-` characters.
    pub fn sign_string(&self) -> String {
        self.signs
            .iter()
            .map(|&s| if s { '+' } else { '-' })
            .collect()
    }
}

impl InversionArrangement {
    pub fn of(w: &Permutation) -> Self {
        Self {
            n: w.size(),
            hyperplanes: w.inversions(),
        }
    }

    /// All regions, in lexicographic order of sign vectors with `+` first.
    ///
    /// A choice of signs is a region exactly when the digraph of the chosen
    /// strict inequalities is acyclic; the search keeps the transitive
    /// closure and prunes at the first cycle.
    ///
    /// ```
    /// use schubert::{arrangements::InversionArrangement, Permutation};
    /// let w: Permutation = "3412".parse().unwrap();
    /// assert_eq!(InversionArrangement::of(&w).regions(1000).unwrap().len(), 14);
    /// ```
    pub fn regions(&self, budget: usize) -> Result<Vec<Region>, ArrangementError> {
        let mut out = Vec::new();
        let mut signs = Vec::with_capacity(self.hyperplanes.len());
        let reach = vec![0u64; self.n];
        self.search(&reach, &mut signs, &mut out, budget)?;
        Ok(out)
    }

    fn search(
        &self,
        reach: &[u64],
        signs: &mut Vec<bool>,
        out: &mut Vec<Region>,
        budget: usize,
    ) -> Result<(), ArrangementError> {
        let k = signs.len();
        if k == self.hyperplanes.len() {
            if out.len() == budget {
                return Err(ArrangementError::Budget(budget));
            }
            out.push(Region {
                signs: signs.clone(),
            });
            return Ok(());
        }
        let (i, j) = self.hyperplanes[k];
        for (sign, (a, b)) in [(true, (i - 1, j - 1)), (false, (j - 1, i - 1))] {
            // edge a -> b means x_a > x_b
            if reach[b] & (1 << a) != 0 {
                continue;
            }
            let mut next = reach.to_vec();
            let gained = next[b] | (1 << b);
            for x in 0..self.n {
                if x == a || next[x] & (1 << a) != 0 {
                    next[x] |= gained;
                }
            }
            signs.push(sign);
            self.search(&next, signs, out, budget)?;
            signs.pop();
        }
        Ok(())
    }
}

pub fn regions(w: &Permutation, budget: usize) -> Result<Vec<Region>, ArrangementError> {
    InversionArrangement::of(w).regions(budget)
}

/// `Σ_r t^{d(r)}` with `d` measured from the region `x_1 > ... > x_n`.
///
/// ```
/// use schubert::{arrangements::region_distance_gf, bruhat::poincare, Permutation};
/// let w = Permutation::longest(3);
/// assert_eq!(region_distance_gf(&w, 100).unwrap(), poincare(&w));
/// ```
pub fn region_distance_gf(
    w: &Permutation,
    budget: usize,
) -> Result<IntPolynomial, ArrangementError> {
    let mut counts = vec![0u64; w.length() + 1];
    for r in regions(w, budget)? {
        counts[r.distance()] += 1;
    }
    Ok(IntPolynomial::new(counts))
}

/// Largest matrix space [`matcount_fq`] will enumerate.
pub const MATCOUNT_LIMIT: u64 = 1 << 22;

fn is_prime(q: u64) -> bool {
    q >= 2
        && (2..)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

fn rank_mod(rows: &mut [Vec<u64>], q: u64) -> usize {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    let inverse = |a: u64| (1..q).find(|&b| a * b % q == 1).expect("field element");
    let mut rank = 0;
    for col in 0..m {
        let Some(piv) = (rank..n).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inverse(rows[rank][col]);
        for c in col..m {
            rows[rank][c] = rows[rank][c] * inv % q;
        }
        for r in 0..n {
            let f = rows[r][col];
            if r != rank && f != 0 {
                for c in col..m {
                    rows[r][c] = (rows[r][c] + (q - f) * rows[rank][c]) % q;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Number of `n x n` matrices over `F_q` of rank `r` that vanish on every
/// cell of `forbidden` (1-based `(row, column)`), by exhaustive search.
///
/// ```
/// use schubert::arrangements::matcount_fq;
/// assert_eq!(matcount_fq(2, &[], 2, 2).unwrap(), 6u32.into());
/// assert_eq!(matcount_fq(3, &[], 2, 3).unwrap(), 168u32.into());
/// ```
pub fn matcount_fq(
    n: usize,
    forbidden: &[(usize, usize)],
    q: u64,
    r: usize,
) -> Result<BigUint, ArrangementError> {
    if !is_prime(q) {
        return Err(ArrangementError::NotPrime(q));
    }
    for &(i, j) in forbidden {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(ArrangementError::BadCell(i, j, n));
        }
    }
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !forbidden.contains(&(i + 1, j + 1)))
        .collect();
    let total = q
        .checked_pow(free.len() as u32)
        .filter(|&t| t <= MATCOUNT_LIMIT)
        .ok_or(ArrangementError::Scale {
            q,
            free: free.len(),
        })?;
    let mut count = 0u64;
    let mut digits = vec![0u64; free.len()];
    for _ in 0..total {
        let mut rows = vec![vec![0u64; n]; n];
        for (&(i, j), &d) in free.iter().zip(&digits) {
            rows[i][j] = d;
        }
        if rank_mod(&mut rows, q) == r {
            count += 1;
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
    }
    Ok(BigUint::from(count))
}

/// Both sides of the Lewis-Morales identity at one value of `q`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LewisMoralesSample {
    pub q: u64,
    /// `mat_q(n, D(w), n) / (q-1)^n`, or `None` when the division is not
    /// exact.
    #[serde(serialize_with = "as_decimal_opt")]
    pub matrices: Option<BigInt>,
    /// `q^{n(n-1) - ℓ(w)} P_{w w0}(1/q)`.
    #[serde(serialize_with = "as_decimal")]
    pub poincare_side: BigInt,
}

fn as_decimal<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn as_decimal_opt<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

impl LewisMoralesSample {
    pub fn holds(&self) -> bool {
        self.matrices.as_ref() == Some(&self.poincare_side)
    }
}

/// Evaluates both sides of the identity for each `q`. The forbidden cells
/// are the diagram of `w`; its transpose would give the same counts.
pub fn lewis_morales_samples(
    w: &Permutation,
    qs: &[u64],
) -> Result<Vec<LewisMoralesSample>, ArrangementError> {
    let n = w.size();
    let forbidden = w.diagram().cells;
    let p = poincare(&w.compose(&Permutation::longest(n)));
    let shift = n * n.saturating_sub(1) - w.length();
    qs.iter()
        .map(|&q| {
            let count = BigInt::from(matcount_fq(n, &forbidden, q, n)?);
            let unit = BigInt::from(q - 1).pow(n as u32);
            let matrices = (&count % &unit).is_zero().then(|| &count / &unit);
            let qb = BigInt::from(q);
            let mut rhs = BigInt::zero();
            for (k, c) in p.coeffs().iter().enumerate() {
                rhs += c * qb.pow((shift - k) as u32);
            }
            Ok(LewisMoralesSample {
                q,
                matrices,
                poincare_side: rhs,
            })
        })
        .collect()
}

/// True when the identity holds at every sampled `q`.
///
/// ```
/// use schubert::{arrangements::lewis_morales_check, Permutation};
/// assert!(lewis_morales_check(&"231".parse::<Permutation>().unwrap(), &[2, 3]).unwrap());
/// ```
pub fn lewis_morales_check(w: &Permutation, qs: &[u64]) -> Result<bool, ArrangementError> {
    Ok(lewis_morales_samples(w, qs)?
        .iter()
        .all(LewisMoralesSample::holds))
}

/// `|GL_n(F_q)|`, handy for sanity checks.
pub fn general_linear_order(n: usize, q: u64) -> BigUint {
    let qn = BigUint::from(q).pow(n as u32);
    (0..n).fold(BigUint::one(), |acc, i| {
        acc * (&qn - BigUint::from(q).pow(i as u32))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat::BruhatInterval;
    use crate::patterns::{avoids_all, pattern_list};
    use crate::perm::all_permutations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn region_counts() {
        assert_eq!(regions(&Permutation::longest(3), 100).unwrap().len(), 6);
        assert_eq!(regions(&Permutation::identity(4), 100).unwrap().len(), 1);
        assert_eq!(regions(&Permutation::longest(4), 100).unwrap().len(), 24);
        assert_eq!(
            regions(&Permutation::longest(4), 10),
            Err(ArrangementError::Budget(10))
        );
        assert_ne!(
            region_distance_gf(&p("3412"), 100).unwrap(),
            poincare(&p("3412"))
        );
    }

    #[test]
    fn counting_regions_matches_interval_size_exactly_off_the_patterns() {
        let bad = pattern_list("4231 35142 42513 351624");
        for n in 1..=5 {
            for w in all_permutations(n) {
                let r = regions(&w, usize::MAX).unwrap().len();
                let size = BruhatInterval::below(&w, usize::MAX).unwrap().len();
                assert!(r <= size);
                assert_eq!(r == size, avoids_all(&w, &bad), "{w}");
            }
        }
    }

    #[test]
    fn matcount_basics() {
        for (n, q) in [(2, 2), (2, 3), (3, 2), (2, 5)] {
            assert_eq!(
                matcount_fq(n, &[], q, n).unwrap(),
                general_linear_order(n, q)
            );
        }
        assert_eq!(
            matcount_fq(3, &[(2, 1), (2, 2), (2, 3)], 2, 3).unwrap(),
            BigUint::zero()
        );
        let total: BigUint = (0..=2)
            .map(|r| matcount_fq(2, &[(1, 2)], 3, r).unwrap())
            .sum();
        assert_eq!(total, BigUint::from(27u32));
        assert_eq!(
            matcount_fq(2, &[], 4, 2),
            Err(ArrangementError::NotPrime(4))
        );
        assert!(matches!(
            matcount_fq(4, &[], 5, 4),
            Err(ArrangementError::Scale { .. })
        ));
    }

    #[test]
    fn matcount_is_transpose_invariant() {
        let cells = [(1, 2), (1, 3), (2, 3)];
        let t: Vec<_> = cells.iter().map(|&(i, j)| (j, i)).collect();
        for r in 0..=3 {
            assert_eq!(
                matcount_fq(3, &cells, 3, r).unwrap(),
                matcount_fq(3, &t, 3, r).unwrap()
            );
        }
    }

    #[test]
    fn lewis_morales_small() {
        assert!(lewis_morales_check(&Permutation::identity(2), &[2]).unwrap());
        for w in all_permutations(3) {
            assert!(lewis_morales_check(&w, &[2, 3, 5]).unwrap(), "{w}");
        }
    }

    #[test]
    fn lewis_morales_four() {
        let excluded = pattern_list("1324 24153 31524 426153");
        let mut failures = Vec::new();
        for w in all_permutations(4) {
            let ok = lewis_morales_check(&w, &[2]).unwrap();
            if avoids_all(&w, &excluded) {
                assert!(ok, "{w}");
            } else if !ok {
                failures.push(w.to_string());
            }
        }
        assert!(failures.contains(&"1324".to_string()), "{failures:?}");
    }
}
