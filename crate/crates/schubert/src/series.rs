//! Truncated power series with exact rational coefficients, and the
//! closed-form generating functions for the enumerative counts.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("denominator vanishes identically to the requested order")]
    ZeroDenominator,
    #[error("a coefficient is not an integer")]
    NotIntegral,
    #[error("order {0} is above the limit of {1}")]
    TooLong(usize, usize),
    #[error("unknown series `{0}` (expected smooth, factorial, inclusions or catalan)")]
    Unknown(String),
}

pub const MAX_ORDER: usize = 64;

/// Coefficients of `t^0, ..., t^{len-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series(Vec<BigRational>);

impl Series {
    pub fn zero(len: usize) -> Self {
        Self(vec![BigRational::zero(); len])
    }

    /// A polynomial, from integer coefficients, truncated to `len` terms.
    pub fn poly(coeffs: &[i64], len: usize) -> Self {
        let mut s = Self::zero(len);
        for (k, &c) in coeffs.iter().enumerate().take(len) {
            s.0[k] = BigRational::from_integer(c.into());
        }
        s
    }

    /// `sqrt(1 - 4t) = 1 + Σ_{n ≥ 1} (-2/n) C(2n-2, n-1) t^n`.
    pub fn sqrt_one_minus_4t(len: usize) -> Self {
        let mut s = Self::zero(len);
        let mut binom = BigInt::one(); // C(2n-2, n-1)
        for n in 0..len {
            if n == 0 {
                s.0[0] = BigRational::one();
                continue;
            }
            if n > 1 {
                let m = BigInt::from(n - 1);
                binom = binom * BigInt::from(2 * n - 2) * BigInt::from(2 * n - 3) / (&m * &m);
            }
            s.0[n] = BigRational::new(BigInt::from(-2) * &binom, BigInt::from(n));
        }
        s
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        let mut out = Self::zero(len);
        for (i, a) in self.0.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate().take(len - i) {
                out.0[i + j] += a * b;
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self(self.0.iter().map(|a| a * c).collect())
    }

    /// `self / other`, cancelling any common power of `t` first. The result
    /// is shorter by the number of cancelled powers.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        let v = other
            .0
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(SeriesError::ZeroDenominator)?;
        if self.0.iter().take(v).any(|c| !c.is_zero()) {
            return Err(SeriesError::ZeroDenominator);
        }
        let num = &self.0[v..];
        let den = &other.0[v..];
        let len = num.len().min(den.len());
        let mut out = vec![BigRational::zero(); len];
        for k in 0..len {
            let mut acc = num[k].clone();
            for j in 1..=k {
                acc -= &den[j] * &out[k - j];
            }
            out[k] = acc / &den[0];
        }
        Ok(Self(out))
    }

    pub fn to_integers(&self) -> Result<Vec<BigInt>, SeriesError> {
        self.0
            .iter()
            .map(|c| {
                c.is_integer()
                    .then(|| c.to_integer())
                    .ok_or(SeriesError::NotIntegral)
            })
            .collect()
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "t^{k}")?,
                _ => write!(f, "{a}t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.0.len())
    }
}

/// The closed forms available to [`gf_series`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Which {
    /// Permutations avoiding 3412 and 4231.
    Smooth,
    /// Permutations avoiding 4231 and 3_41_2.
    Factorial,
    /// Permutations avoiding 4231, 35142, 42513 and 351624.
    Inclusions,
    Catalan,
}

impl FromStr for Which {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "smooth" => Ok(Self::Smooth),
            "factorial" => Ok(Self::Factorial),
            "inclusions" => Ok(Self::Inclusions),
            "catalan" => Ok(Self::Catalan),
            _ => Err(SeriesError::Unknown(s.to_string())),
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Smooth => "smooth",
            Self::Factorial => "factorial",
            Self::Inclusions => "inclusions",
            Self::Catalan => "catalan",
        })
    }
}

/// Coefficients of `t^0, ..., t^nmax` of the chosen generating function.
/// The coefficient of `t^n` counts permutations of size `n`.
///
/// ```
/// use schubert::series::{gf_series, Which};
/// let c: Vec<u64> = gf_series(Which::Catalan, 5).unwrap()
///     .iter().map(|b| u64::try_from(b).unwrap()).collect();
/// assert_eq!(c, [1, 1, 2, 5, 14, 42]);
/// ```
pub fn gf_series(which: Which, nmax: usize) -> Result<Vec<BigInt>, SeriesError> {
    if nmax > MAX_ORDER {
        return Err(SeriesError::TooLong(nmax, MAX_ORDER));
    }
    // two extra terms cover the powers of t cancelled in division
    let len = nmax + 3;
    let root = Series::sqrt_one_minus_4t(len);
    let p = |c: &[i64]| Series::poly(c, len);
    let series = match which {
        Which::Smooth => {
            let num = p(&[1, -5, 3]).add(&p(&[0, 0, 1]).mul(&root));
            num.div(&p(&[1, -6, 8, -4]))?
        }
        Which::Factorial => {
            let num = p(&[1, -1])
                .mul(&p(&[1, -4, -2]))
                .sub(&p(&[1, -5]).mul(&root));
            num.div(&p(&[2, -10, 4, -2]))?
        }
        Which::Inclusions => {
            let num = p(&[1, -3, -2]).sub(&p(&[1, -1, -2]).mul(&root));
            let den = p(&[1, -3]).sub(&p(&[1, -1, 2]).mul(&root));
            num.div(&den)?
        }
        Which::Catalan => p(&[1]).sub(&root).div(&p(&[0, 2]))?,
    };
    let mut out = series.to_integers()?;
    out.truncate(nmax + 1);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(which: Which, n: usize) -> Vec<i64> {
        gf_series(which, n)
            .unwrap()
            .iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect()
    }

    #[test]
    fn printed_expansions() {
        assert_eq!(
            ints(Which::Smooth, 8),
            [1, 1, 2, 6, 22, 88, 366, 1552, 6652]
        );
        assert_eq!(
            ints(Which::Factorial, 8)[1..],
            [1, 2, 6, 22, 89, 379, 1661, 7405]
        );
        assert_eq!(ints(Which::Catalan, 5), [1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn inclusions_match_direct_counts() {
        use crate::perm::all_permutations;
        use crate::properties::is_defined_by_inclusions;
        let series = ints(Which::Inclusions, 7);
        for n in 1..=7 {
            let direct = all_permutations(n).filter(is_defined_by_inclusions).count() as i64;
            assert_eq!(series[n], direct, "n = {n}");
        }
    }

    #[test]
    fn square_root_squares_back() {
        let r = Series::sqrt_one_minus_4t(12);
        assert_eq!(r.mul(&r), Series::poly(&[1, -4], 12));
    }

    #[test]
    fn long_expansions_stay_integral() {
        for which in [
            Which::Smooth,
            Which::Factorial,
            Which::Inclusions,
            Which::Catalan,
        ] {
            assert_eq!(gf_series(which, MAX_ORDER).unwrap().len(), MAX_ORDER + 1);
        }
        assert!(gf_series(Which::Smooth, MAX_ORDER + 1).is_err());
    }
}
