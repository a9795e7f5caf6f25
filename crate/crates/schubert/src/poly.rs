//! Exact integer polynomials and Laurent polynomials in one variable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

/// A polynomial with arbitrary-precision integer coefficients. Index `k` of
/// the coefficient vector is the coefficient of `t^k`; trailing zeros are
/// always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut p = Self {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new([1])
    }

    /// `c t^k`.
    pub fn monomial(k: usize, c: impl Into<BigInt>) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c.into());
        Self::new(coeffs)
    }

    /// The q-integer `1 + t + ... + t^e`.
    pub fn q_integer(e: usize) -> Self {
        Self::new(vec![1; e + 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients as machine integers, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| i64::try_from(c).ok()).collect()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Value at 1, the sum of coefficients.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// True when the coefficient list reads the same in both directions.
    /// The zero polynomial counts as palindromic.
    ///
    /// ```
    /// use schubert::IntPolynomial;
    /// assert!(IntPolynomial::new([1, 3, 5, 6, 5, 3, 1]).is_palindromic());
    /// assert!(!IntPolynomial::new([1, 3, 5, 4, 1]).is_palindromic());
    /// ```
    pub fn is_palindromic(&self) -> bool {
        let c = &self.coeffs;
        (0..c.len() / 2).all(|i| c[i] == c[c.len() - 1 - i])
    }

    /// Exact division; `None` if `divisor` does not divide `self` over the
    /// integers.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let dd = divisor.degree()?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return if self.is_zero() {
                Some(Self::zero())
            } else {
                None
            };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            if !(top % lead).is_zero() {
                return None;
            }
            let q = top / lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    /// Writes `self` as a product of q-integers `1 + t + ... + t^e`, returning
    /// the exponents in decreasing order, or `None` when no such product
    /// exists. The constant polynomial 1 factors as the empty product.
    ///
    /// ```
    /// use schubert::IntPolynomial;
    /// let p = IntPolynomial::new([1, 3, 5, 6, 5, 3, 1]);
    /// assert_eq!(p.factor_q_integers(), Some(vec![3, 2, 1]));
    /// assert_eq!(IntPolynomial::new([1, 3, 5, 4, 1]).factor_q_integers(), None);
    /// ```
    pub fn factor_q_integers(&self) -> Option<Vec<usize>> {
        if self.coeff(0) != BigInt::one() {
            return None;
        }
        let mut out = Vec::new();
        if factor_rec(self, self.degree().unwrap_or(0), &mut out) {
            Some(out)
        } else {
            None
        }
    }

    /// Substitutes `t -> t^{-1}` and multiplies by `t^shift`, failing if a
    /// negative power would remain.
    pub fn reverse_shifted(&self, shift: usize) -> Option<IntPolynomial> {
        let d = self.degree()?;
        if d > shift {
            return None;
        }
        let mut c = vec![BigInt::zero(); shift + 1];
        for (k, v) in self.coeffs.iter().enumerate() {
            c[shift - k] = v.clone();
        }
        Some(Self::new(c))
    }

    /// Renders with the given variable name, lowest degree first, for
    /// example `1 + 3t + t^2`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let unit = a.is_one();
            match k {
                0 => out.push_str(&a.to_string()),
                1 if unit => out.push_str(var),
                1 => out.push_str(&format!("{a}{var}")),
                _ if unit => out.push_str(&format!("{var}^{k}")),
                _ => out.push_str(&format!("{a}{var}^{k}")),
            }
        }
        out
    }
}

fn factor_rec(p: &IntPolynomial, max_e: usize, out: &mut Vec<usize>) -> bool {
    let Some(d) = p.degree() else { return false };
    if d == 0 {
        return p.coeff(0).is_one();
    }
    // Each factor contributes exactly one to the linear coefficient, which
    // bounds the number of factors.
    let linear = p.coeff(1);
    if linear.is_negative() || linear.is_zero() {
        return false;
    }
    for e in (1..=max_e.min(d)).rev() {
        if let Some(q) = p.div_exact(&IntPolynomial::q_integer(e)) {
            out.push(e);
            if factor_rec(&q, e, out) {
                return true;
            }
            out.pop();
        }
    }
    false
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Serialize for IntPolynomial {
    /// A plain array of coefficients, lowest degree first.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        match self.to_i64s() {
            Some(small) => small.serialize(s),
            None => v.serialize(s),
        }
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)))
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)))
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::new(c)
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        &self + &rhs
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: IntPolynomial) -> IntPolynomial {
        &self - &rhs
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

impl AddAssign<&IntPolynomial> for IntPolynomial {
    fn add_assign(&mut self, rhs: &IntPolynomial) {
        *self = &*self + rhs;
    }
}

/// A Laurent polynomial in `q`; only nonzero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c q^k`.
    pub fn monomial(k: i64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c.into());
        p
    }

    pub fn from_poly(p: &IntPolynomial) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term(k as i64, c.clone());
        }
        out
    }

    pub fn add_term(&mut self, k: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Converts to an ordinary polynomial if no negative powers occur.
    pub fn to_poly(&self) -> Option<IntPolynomial> {
        if self.terms.keys().next().is_some_and(|&k| k < 0) {
            return None;
        }
        let top = self.terms.keys().next_back().copied().unwrap_or(-1);
        Some(IntPolynomial::new((0..=top).map(|k| self.coeff(k))))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (&k, v) in &self.terms {
            out.add_term(k, v * c);
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}q"),
                _ => format!("{c}q^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

impl Serialize for LaurentPolynomial {
    /// An exponent to coefficient map.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            m.serialize_entry(&k.to_string(), &c.to_string())?;
        }
        m.end()
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        for (&k, c) in &rhs.terms {
            self.add_term(k, c.clone());
        }
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_degrees() {
        assert!(IntPolynomial::new([0, 0]).is_zero());
        assert_eq!(IntPolynomial::new([1, 2, 0]).degree(), Some(1));
        assert_eq!(IntPolynomial::zero().degree(), None);
    }

    #[test]
    fn arithmetic() {
        let a = IntPolynomial::new([1, 1]);
        let b = IntPolynomial::new([1, 1, 1]);
        let ab = &a * &b;
        assert_eq!(ab, IntPolynomial::new([1, 2, 2, 1]));
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert_eq!(IntPolynomial::new([1, 0, 1]).div_exact(&a), None);
        assert_eq!(&ab - &ab, IntPolynomial::zero());
        assert_eq!(ab.eval(&BigInt::from(2)), BigInt::from(21));
    }

    #[test]
    fn factoring() {
        assert_eq!(IntPolynomial::one().factor_q_integers(), Some(vec![]));
        assert_eq!(
            IntPolynomial::new([1, 2, 1]).factor_q_integers(),
            Some(vec![1, 1])
        );
        assert_eq!(
            IntPolynomial::new([1, 2, 2, 1]).factor_q_integers(),
            Some(vec![2, 1])
        );
        assert_eq!(IntPolynomial::new([1, 0, 1]).factor_q_integers(), None);
        assert_eq!(IntPolynomial::new([2, 1]).factor_q_integers(), None);
    }

    #[test]
    fn display() {
        assert_eq!(
            IntPolynomial::new([1, 3, 5, 4, 1]).to_string(),
            "1 + 3t + 5t^2 + 4t^3 + t^4"
        );
        assert_eq!(IntPolynomial::new([1, 0, 1]).display_with("q"), "1 + q^2");
        assert_eq!(IntPolynomial::new([0, -2]).to_string(), "-2t");
    }

    #[test]
    fn laurent() {
        let q = LaurentPolynomial::monomial(1, 1);
        let qi = q.bar();
        assert_eq!(&q * &qi, LaurentPolynomial::one());
        assert_eq!((&q - &q), LaurentPolynomial::zero());
        assert_eq!(q.to_poly(), Some(IntPolynomial::new([0, 1])));
        assert_eq!(qi.to_poly(), None);
    }

    use proptest::prelude::*;

    fn poly() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-20i64..20, 0..6).prop_map(IntPolynomial::new)
    }

    proptest! {
        #[test]
        fn ring_laws(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
            }
        }

        #[test]
        fn laurent_bar_is_an_involution(a in poly(), k in -5i64..5) {
            let l = LaurentPolynomial::from_poly(&a).shift(k);
            prop_assert_eq!(l.bar().bar(), l.clone());
            prop_assert_eq!((&l * &l.bar()).bar(), &l * &l.bar());
        }

        #[test]
        fn q_integer_products_factor(es in prop::collection::vec(1usize..6, 0..5)) {
            let p = es.iter().fold(IntPolynomial::one(), |acc, &e| &acc * &IntPolynomial::q_integer(e));
            let mut back = p.factor_q_integers().unwrap();
            let mut want = es.clone();
            back.sort_unstable();
            want.sort_unstable();
            prop_assert_eq!(back, want);
            prop_assert!(p.is_palindromic());
        }
    }
}
