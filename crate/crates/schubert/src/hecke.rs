//! The Hecke algebra in the `T` basis, the rescaled Kazhdan-Lusztig basis
//! `Ĉ_w = q^{ℓ(w)/2} C'_w = Σ P_{x,w} T_x`, and Deodhar's mask formula.
//!
//! Working with `Ĉ_w` keeps every coefficient an honest Laurent polynomial
//! in `q`. The bar-invariance of `C'_w` becomes `ι(Ĉ_w) = q^{-ℓ(w)} Ĉ_w`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use thiserror::Error;

use crate::group::CoxeterGroup;
use crate::kl::KazhdanLusztig;
use crate::poly::{IntPolynomial, LaurentPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error("element {0} does not belong to the algebra's group")]
    RankMismatch(String),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
}

/// A finite combination `Σ c_w T_w`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeckeElement<E: Ord> {
    terms: BTreeMap<E, LaurentPolynomial>,
}

impl<E: Ord + Clone> Default for HeckeElement<E> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<E: Ord + Clone> HeckeElement<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c T_w`.
    pub fn basis(w: E, c: LaurentPolynomial) -> Self {
        let mut h = Self::zero();
        h.add_term(w, &c);
        h
    }

    pub fn add_term(&mut self, w: E, c: &LaurentPolynomial) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn coeff(&self, w: &E) -> LaurentPolynomial {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&E, &LaurentPolynomial)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &LaurentPolynomial) -> Self {
        let mut out = Self::zero();
        for (w, d) in &self.terms {
            out.add_term(w.clone(), &(d * c));
        }
        out
    }

    /// Applies `q -> q^{-1}` to every coefficient only.
    fn bar_coefficients(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.bar()))
                .collect(),
        }
    }
}

/// The Hecke algebra of a Coxeter group over `Z[q, q^{-1}]`.
pub struct HeckeAlgebra<G: CoxeterGroup> {
    pub group: G,
}

impl<G: CoxeterGroup> HeckeAlgebra<G> {
    pub fn new(group: G) -> Self {
        Self { group }
    }

    pub fn one(&self) -> HeckeElement<G::Element> {
        HeckeElement::basis(self.group.identity(), LaurentPolynomial::one())
    }

    /// `T_w`.
    pub fn t(&self, w: G::Element) -> HeckeElement<G::Element> {
        HeckeElement::basis(w, LaurentPolynomial::one())
    }

    /// `T_s^{-1} = q^{-1} T_s - (1 - q^{-1}) T_e`.
    pub fn t_gen_inverse(&self, s: usize) -> HeckeElement<G::Element> {
        let e = self.group.identity();
        let mut h = HeckeElement::basis(
            self.group.mul_gen(&e, s),
            LaurentPolynomial::monomial(-1, 1),
        );
        let mut c = LaurentPolynomial::monomial(-1, 1);
        c.add_term(0, BigInt::from(-1));
        h.add_term(e, &c);
        h
    }

    fn check(&self, h: &HeckeElement<G::Element>) -> Result<(), HeckeError> {
        match h.terms.keys().find(|w| !self.group.contains(w)) {
            Some(w) => Err(HeckeError::RankMismatch(w.to_string())),
            None => Ok(()),
        }
    }

    /// Right multiplication by `T_s`: `T_x T_s = T_{xs}` if `xs > x`, and
    /// `(q - 1) T_x + q T_{xs}` otherwise.
    pub fn mul_gen(&self, h: &HeckeElement<G::Element>, s: usize) -> HeckeElement<G::Element> {
        let mut out = HeckeElement::zero();
        let q = LaurentPolynomial::monomial(1, 1);
        let mut q_minus_one = q.clone();
        q_minus_one.add_term(0, BigInt::from(-1));
        for (x, c) in &h.terms {
            let xs = self.group.mul_gen(x, s);
            if self.group.is_right_descent(x, s) {
                out.add_term(x.clone(), &(c * &q_minus_one));
                out.add_term(xs, &(c * &q));
            } else {
                out.add_term(xs, c);
            }
        }
        out
    }

    /// The product in the `T` basis.
    ///
    /// ```
    /// use schubert::{group::SymmetricGroup, hecke::HeckeAlgebra, poly::LaurentPolynomial};
    /// let h = HeckeAlgebra::new(SymmetricGroup::new(3));
    /// let s1: schubert::Permutation = "213".parse().unwrap();
    /// let sq = h.multiply(&h.t(s1.clone()), &h.t(s1.clone())).unwrap();
    /// // T_s^2 = (q - 1) T_s + q
    /// assert_eq!(sq.coeff(&s1).to_string(), "-1 + 1q");
    /// ```
    pub fn multiply(
        &self,
        a: &HeckeElement<G::Element>,
        b: &HeckeElement<G::Element>,
    ) -> Result<HeckeElement<G::Element>, HeckeError> {
        self.check(a)?;
        self.check(b)?;
        let mut out = HeckeElement::zero();
        for (y, c) in &b.terms {
            let mut part = a.scale(c);
            for s in self.group.reduced_word(y) {
                part = self.mul_gen(&part, s);
            }
            out = out.add(&part);
        }
        Ok(out)
    }

    /// The ring involution `T_w -> (T_{w^{-1}})^{-1}`, `q -> q^{-1}`.
    pub fn involution(
        &self,
        h: &HeckeElement<G::Element>,
    ) -> Result<HeckeElement<G::Element>, HeckeError> {
        self.check(h)?;
        let mut out = HeckeElement::zero();
        let mut cache: HashMap<usize, HeckeElement<G::Element>> = HashMap::new();
        for (w, c) in &h.terms {
            // (T_{w^{-1}})^{-1} = T_{s_1}^{-1} ... T_{s_k}^{-1} for w = s_1...s_k.
            let mut img = self.one();
            for s in self.group.reduced_word(w) {
                let inv = cache
                    .entry(s)
                    .or_insert_with(|| self.t_gen_inverse(s))
                    .clone();
                img = self.multiply(&img, &inv)?;
            }
            out = out.add(&img.scale(&c.bar()));
        }
        Ok(out)
    }

    /// `Ĉ_w = Σ_{x <= w} P_{x,w}(q) T_x`, read off a computed table.
    pub fn kl_basis(
        &self,
        kl: &KazhdanLusztig<G>,
        w: &G::Element,
    ) -> Option<HeckeElement<G::Element>> {
        let col = kl.column(w)?;
        let mut h = HeckeElement::zero();
        for (x, p) in col {
            h.add_term(x, &LaurentPolynomial::from_poly(&p));
        }
        Some(h)
    }

    /// Checks `ι(Ĉ_w) = q^{-ℓ(w)} Ĉ_w`.
    pub fn is_bar_invariant(
        &self,
        kl: &KazhdanLusztig<G>,
        w: &G::Element,
    ) -> Result<bool, HeckeError> {
        let Some(c) = self.kl_basis(kl, w) else {
            return Ok(false);
        };
        let l = self.group.length(w) as i64;
        let lhs = self.involution(&c)?;
        let rhs = c.scale(&LaurentPolynomial::monomial(-l, 1));
        Ok(lhs == rhs)
    }
}

/// Swaps the bar on coefficients; exposed for tests of the involution.
pub fn bar_coefficients<E: Ord + Clone>(h: &HeckeElement<E>) -> HeckeElement<E> {
    h.bar_coefficients()
}

/// For every mask on `word`, the masked product and the defect. Returns,
/// for each element reached, `Σ t^{defect}` over masks landing there.
///
/// The defect of a mask counts the positions `j` where the partial product
/// `π_{j-1}` has `s_{i_j}` as a right descent.
pub fn mask_defect_table<G: CoxeterGroup>(
    group: &G,
    word: &[usize],
) -> Result<BTreeMap<G::Element, IntPolynomial>, HeckeError> {
    let e = group.identity();
    if group.length(&group.product_of_word(word)) != word.len() {
        return Err(HeckeError::NotReduced(word.to_vec()));
    }
    let mut acc: BTreeMap<G::Element, Vec<i64>> = BTreeMap::new();
    fn walk<G: CoxeterGroup>(
        group: &G,
        word: &[usize],
        pi: G::Element,
        defect: usize,
        acc: &mut BTreeMap<G::Element, Vec<i64>>,
    ) {
        let Some((&s, rest)) = word.split_first() else {
            let slot = acc.entry(pi).or_default();
            if slot.len() <= defect {
                slot.resize(defect + 1, 0);
            }
            slot[defect] += 1;
            return;
        };
        let d = defect + group.is_right_descent(&pi, s) as usize;
        walk(group, rest, pi.clone(), d, acc);
        walk(group, rest, group.mul_gen(&pi, s), d, acc);
    }
    walk(group, word, e, 0, &mut acc);
    Ok(acc
        .into_iter()
        .map(|(k, v)| (k, IntPolynomial::new(v)))
        .collect())
}

/// `Σ_{σ: π(σ) = v} t^{defect(σ)}` over masks of a reduced word for `w`.
pub fn mask_defect_gf<G: CoxeterGroup>(
    group: &G,
    v: &G::Element,
    word: &[usize],
) -> Result<IntPolynomial, HeckeError> {
    Ok(mask_defect_table(group, word)?
        .remove(v)
        .unwrap_or_default())
}

/// `Σ_{v <= w} t^{ℓ(v)} P_{v,w}(t) = (1 + t)^{ℓ(w)}`.
pub fn deodhar_identity_holds<G: CoxeterGroup>(kl: &KazhdanLusztig<G>, w: &G::Element) -> bool {
    let Some(col) = kl.column(w) else {
        return false;
    };
    let l = kl.length_of(w).expect("w in table");
    let mut lhs = IntPolynomial::zero();
    for (v, p) in col {
        let lv = kl.length_of(&v).expect("v in table");
        lhs += &(&IntPolynomial::monomial(lv, 1) * &p);
    }
    let mut rhs = IntPolynomial::one();
    for _ in 0..l {
        rhs = &rhs * &IntPolynomial::new([1, 1]);
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::SymmetricGroup;
    use crate::kl::full_symmetric;
    use crate::perm::Permutation;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn quadratic_relation_and_inverse() {
        let h = HeckeAlgebra::new(SymmetricGroup::new(3));
        let s1 = p("213");
        let e = Permutation::identity(3);
        let sq = h.multiply(&h.t(s1.clone()), &h.t(s1.clone())).unwrap();
        let mut q_minus_one = LaurentPolynomial::monomial(1, 1);
        q_minus_one.add_term(0, BigInt::from(-1));
        assert_eq!(sq.coeff(&s1), q_minus_one);
        assert_eq!(sq.coeff(&e), LaurentPolynomial::monomial(1, 1));
        let prod = h.multiply(&h.t_gen_inverse(0), &h.t(s1.clone())).unwrap();
        assert_eq!(prod, h.one());
        let x = h.t(p("231"));
        assert_eq!(h.multiply(&h.one(), &x).unwrap(), x);
        assert!(h.multiply(&h.t(p("2134")), &x).is_err());
    }

    #[test]
    fn braid_relation() {
        let h = HeckeAlgebra::new(SymmetricGroup::new(3));
        let a = h.mul_gen(&h.mul_gen(&h.mul_gen(&h.one(), 0), 1), 0);
        let b = h.mul_gen(&h.mul_gen(&h.mul_gen(&h.one(), 1), 0), 1);
        assert_eq!(a, b);
    }

    #[test]
    fn worked_product_in_s3() {
        // Ĉ_{s1} Ĉ_{s2} Ĉ_{s1} = Ĉ_{s1s2s1} + q Ĉ_{s1}
        let kl = full_symmetric(3);
        let h = HeckeAlgebra::new(SymmetricGroup::new(3));
        let c = |w: &str| h.kl_basis(&kl, &p(w)).unwrap();
        let lhs = h
            .multiply(&h.multiply(&c("213"), &c("132")).unwrap(), &c("213"))
            .unwrap();
        let rhs = c("321").add(&c("213").scale(&LaurentPolynomial::monomial(1, 1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bar_invariance_in_s3() {
        let kl = full_symmetric(3);
        let h = HeckeAlgebra::new(SymmetricGroup::new(3));
        for w in kl.elements() {
            assert!(h.is_bar_invariant(&kl, w).unwrap());
        }
        // T_s alone is not invariant.
        let s = p("213");
        let img = h.involution(&h.t(s.clone())).unwrap();
        assert_ne!(img, h.t(s).scale(&LaurentPolynomial::monomial(-1, 1)));
    }

    #[test]
    fn masks() {
        let g = SymmetricGroup::new(3);
        let e = Permutation::identity(3);
        assert_eq!(mask_defect_gf(&g, &e, &[1]).unwrap(), IntPolynomial::one());
        // 321 is not 321-avoiding: the mask sum over (1,2,1) overshoots.
        assert_eq!(
            mask_defect_gf(&g, &e, &[0, 1, 0]).unwrap(),
            IntPolynomial::new([1, 1])
        );
        assert!(mask_defect_table(&g, &[0, 0]).is_err());
        let g4 = SymmetricGroup::new(4);
        let t = mask_defect_table(&g4, &[0, 2]).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.values().all(|p| *p == IntPolynomial::one()));
    }

    #[test]
    fn deodhar_identity() {
        let kl = full_symmetric(4);
        assert!(deodhar_identity_holds(&kl, &p("2143")));
        assert!(deodhar_identity_holds(&kl, &Permutation::identity(4)));
        let kl3 = full_symmetric(3);
        assert!(!deodhar_identity_holds(&kl3, &p("321")));
    }
}
