//! Kazhdan-Lusztig polynomials for any finite Coxeter group implementing
//! [`CoxeterGroup`].
//!
//! All polynomials `P_{x,y}` for `x <= y <= top` are computed at once, by
//! induction on `ℓ(y)`. With `s` a right descent of `y` and `v = ys`:
//!
//! `P_{x,y} = q^{1-c} P_{xs,v} + q^c P_{x,v} - Σ μ(z,v) q^{(ℓ(y)-ℓ(z))/2} P_{x,z}`
//!
//! where `c = 1` if `xs < x`, and the sum runs over `z < v` with `zs < z`.
//! Internally coefficients are machine integers with overflow checks; the
//! public accessors return [`IntPolynomial`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::group::{CoxeterGroup, SymmetricGroup};
use crate::perm::Permutation;
use crate::poly::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KlError {
    #[error("lower interval has more than {0} elements")]
    Budget(usize),
    #[error("{0} is not below {1}")]
    NotBelow(String, String),
    #[error("coefficient overflow")]
    Overflow,
    #[error("element {0} does not belong to this group")]
    Foreign(String),
}

type Poly = Vec<i64>;

/// Every Kazhdan-Lusztig polynomial inside a lower interval `[e, top]`.
#[derive(Debug)]
pub struct KazhdanLusztig<G: CoxeterGroup> {
    group: G,
    top: G::Element,
    /// Sorted by length, then by the element order.
    elements: Vec<G::Element>,
    index: HashMap<G::Element, u32>,
    lengths: Vec<u32>,
    /// `columns[y]`: `(x, poly id)` for every `x <= y`, sorted by `x`.
    columns: Vec<Vec<(u32, u32)>>,
    polys: Vec<Poly>,
    /// `mu_lists[v]`: `(z, μ(z, v))` for `z < v` with `μ != 0`.
    mu_lists: Vec<Vec<(u32, i64)>>,
}

impl<G: CoxeterGroup> KazhdanLusztig<G> {
    /// Computes all polynomials below `top`. Fails if the interval would
    /// exceed `budget` elements.
    ///
    /// ```
    /// use schubert::{group::SymmetricGroup, kl::KazhdanLusztig, Permutation};
    /// let w: Permutation = "3412".parse().unwrap();
    /// let kl = KazhdanLusztig::new(SymmetricGroup::new(4), &w, 1000).unwrap();
    /// let e = Permutation::identity(4);
    /// assert_eq!(kl.polynomial(&e, &w).unwrap().display_with("q"), "1 + q");
    /// ```
    pub fn new(group: G, top: &G::Element, budget: usize) -> Result<Self, KlError> {
        if !group.contains(top) {
            return Err(KlError::Foreign(top.to_string()));
        }
        let elements = lower_interval(&group, top, budget)?;
        let mut tagged: Vec<(u32, G::Element)> = elements
            .into_iter()
            .map(|e| (group.length(&e) as u32, e))
            .collect();
        tagged.sort();
        let lengths: Vec<u32> = tagged.iter().map(|(l, _)| *l).collect();
        let elements: Vec<G::Element> = tagged.into_iter().map(|(_, e)| e).collect();
        let index: HashMap<G::Element, u32> = elements
            .iter()
            .enumerate()
            .map(|(k, e)| (e.clone(), k as u32))
            .collect();
        let rank = group.rank();
        let right: Vec<Vec<Option<u32>>> = elements
            .iter()
            .map(|e| {
                (0..rank)
                    .map(|s| index.get(&group.mul_gen(e, s)).copied())
                    .collect()
            })
            .collect();
        let mut kl = Self {
            group,
            top: top.clone(),
            elements,
            index,
            lengths,
            columns: Vec::new(),
            polys: vec![vec![1]],
            mu_lists: Vec::new(),
        };
        kl.fill(&right)?;
        Ok(kl)
    }

    fn fill(&mut self, right: &[Vec<Option<u32>>]) -> Result<(), KlError> {
        let n = self.elements.len();
        let mut intern: HashMap<Poly, u32> = HashMap::from([(vec![1], 0)]);
        self.columns = Vec::with_capacity(n);
        self.mu_lists = Vec::with_capacity(n);
        self.columns.push(vec![(0, 0)]);
        self.mu_lists.push(Vec::new());
        let mut scratch: Vec<i64> = Vec::new();
        for y in 1..n {
            let ly = self.lengths[y];
            let s = (0..self.group.rank())
                .find(|&s| self.group.is_right_descent(&self.elements[y], s))
                .expect("non-identity element has a descent");
            let v = right[y][s].expect("ys lies in the interval") as usize;
            // Lower set of y: lower(v) together with its translate by s.
            let mut keys: Vec<u32> = self.columns[v].iter().map(|&(x, _)| x).collect();
            let shifted: Vec<u32> = keys
                .iter()
                .map(|&x| right[x as usize][s].expect("closed under s"))
                .collect();
            keys.extend(shifted);
            keys.sort_unstable();
            keys.dedup();
            let mu_v: Vec<(u32, i64)> = self.mu_lists[v]
                .iter()
                .copied()
                .filter(|&(z, _)| {
                    self.lengths[right[z as usize][s].unwrap() as usize] < self.lengths[z as usize]
                })
                .collect();
            let mut column: Vec<(u32, u32)> = Vec::with_capacity(keys.len());
            let mut pending: Vec<(usize, u32)> = Vec::new();
            for &x in &keys {
                let xs = right[x as usize][s].unwrap();
                if self.lengths[xs as usize] < self.lengths[x as usize] {
                    // P_{x,y} = P_{xs,y} whenever s is a descent of y.
                    pending.push((column.len(), xs));
                    column.push((x, u32::MAX));
                    continue;
                }
                let lx = self.lengths[x as usize];
                scratch.clear();
                scratch.resize(((ly - lx) / 2 + 2) as usize, 0);
                // c = 0: P_{x,y} = q P_{xs,v} + P_{x,v} - Σ ...
                if let Some(p) = self.lookup(xs, v as u32) {
                    add_shifted(&mut scratch, p, 1, 1)?;
                }
                if let Some(p) = self.lookup(x, v as u32) {
                    add_shifted(&mut scratch, p, 0, 1)?;
                }
                for &(z, mu) in &mu_v {
                    if let Some(p) = self.lookup(x, z) {
                        let shift = ((ly - self.lengths[z as usize]) / 2) as usize;
                        add_shifted(&mut scratch, p, shift, -mu)?;
                    }
                }
                while scratch.last() == Some(&0) {
                    scratch.pop();
                }
                let id = match intern.get(&scratch) {
                    Some(&id) => id,
                    None => {
                        let id = self.polys.len() as u32;
                        self.polys.push(scratch.clone());
                        intern.insert(scratch.clone(), id);
                        id
                    }
                };
                column.push((x, id));
            }
            for (slot, xs) in pending {
                let k = column
                    .binary_search_by_key(&xs, |&(x, _)| x)
                    .expect("xs is below y");
                column[slot].1 = column[k].1;
            }
            let mut mu_y = Vec::new();
            for &(x, id) in &column {
                let gap = ly - self.lengths[x as usize];
                if gap % 2 == 1 {
                    let c = self.polys[id as usize]
                        .get(((gap - 1) / 2) as usize)
                        .copied()
                        .unwrap_or(0);
                    if c != 0 {
                        mu_y.push((x, c));
                    }
                }
            }
            self.columns.push(column);
            self.mu_lists.push(mu_y);
        }
        Ok(())
    }

    fn lookup(&self, x: u32, y: u32) -> Option<&Poly> {
        let col = &self.columns[y as usize];
        col.binary_search_by_key(&x, |&(k, _)| k)
            .ok()
            .map(|k| &self.polys[col[k].1 as usize])
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn top(&self) -> &G::Element {
        &self.top
    }

    /// Elements of `[e, top]`, sorted by length.
    pub fn elements(&self) -> &[G::Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &G::Element) -> bool {
        self.index.contains_key(w)
    }

    pub fn length_of(&self, w: &G::Element) -> Option<usize> {
        self.index
            .get(w)
            .map(|&k| self.lengths[k as usize] as usize)
    }

    /// Bruhat order inside the interval.
    pub fn leq(&self, x: &G::Element, y: &G::Element) -> bool {
        match (self.index.get(x), self.index.get(y)) {
            (Some(&a), Some(&b)) => self.lookup(a, b).is_some(),
            _ => false,
        }
    }

    /// `P_{x,y}`, or `None` when `x` is not below `y` or either lies outside
    /// the interval.
    pub fn polynomial(&self, x: &G::Element, y: &G::Element) -> Option<IntPolynomial> {
        let (&a, &b) = (self.index.get(x)?, self.index.get(y)?);
        self.lookup(a, b)
            .map(|p| IntPolynomial::new(p.iter().copied()))
    }

    /// `μ(x, y)`: the coefficient of `q^{(ℓ(y)-ℓ(x)-1)/2}`, zero when the
    /// length gap is even.
    pub fn mu(&self, x: &G::Element, y: &G::Element) -> Option<i64> {
        let (&a, &b) = (self.index.get(x)?, self.index.get(y)?);
        let p = self.lookup(a, b)?;
        let gap = self.lengths[b as usize] - self.lengths[a as usize];
        if gap == 0 || gap.is_multiple_of(2) {
            return Some(0);
        }
        Some(p.get(((gap - 1) / 2) as usize).copied().unwrap_or(0))
    }

    /// `(x, P_{x,y})` for all `x <= y`, sorted by length then element.
    pub fn column(&self, y: &G::Element) -> Option<Vec<(G::Element, IntPolynomial)>> {
        let &b = self.index.get(y)?;
        Some(
            self.columns[b as usize]
                .iter()
                .map(|&(x, id)| {
                    (
                        self.elements[x as usize].clone(),
                        IntPolynomial::new(self.polys[id as usize].iter().copied()),
                    )
                })
                .collect(),
        )
    }

    /// The elements below `y`, with lengths.
    pub fn lower_set(&self, y: &G::Element) -> Option<Vec<(G::Element, usize)>> {
        let &b = self.index.get(y)?;
        Some(
            self.columns[b as usize]
                .iter()
                .map(|&(x, _)| {
                    (
                        self.elements[x as usize].clone(),
                        self.lengths[x as usize] as usize,
                    )
                })
                .collect(),
        )
    }

    /// Rank generating function of `[e, y]`.
    pub fn rank_generating_function(&self, y: &G::Element) -> Option<IntPolynomial> {
        let lower = self.lower_set(y)?;
        let top = lower.iter().map(|&(_, l)| l).max().unwrap_or(0);
        let mut c = vec![0i64; top + 1];
        for (_, l) in lower {
            c[l] += 1;
        }
        Some(IntPolynomial::new(c))
    }

    /// Number of distinct polynomials stored.
    pub fn distinct_polynomials(&self) -> usize {
        self.polys.len()
    }
}

fn add_shifted(acc: &mut Vec<i64>, p: &[i64], shift: usize, factor: i64) -> Result<(), KlError> {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (k, &c) in p.iter().enumerate() {
        let term = c.checked_mul(factor).ok_or(KlError::Overflow)?;
        acc[k + shift] = acc[k + shift].checked_add(term).ok_or(KlError::Overflow)?;
    }
    Ok(())
}

/// `[e, top]` via `L(us) = L(u) ∪ L(u)s` along a reduced word of `top`.
pub fn lower_interval<G: CoxeterGroup>(
    group: &G,
    top: &G::Element,
    budget: usize,
) -> Result<Vec<G::Element>, KlError> {
    let mut seen: HashMap<G::Element, ()> = HashMap::from([(group.identity(), ())]);
    let mut list = vec![group.identity()];
    for s in group.reduced_word(top) {
        let snapshot = list.len();
        for k in 0..snapshot {
            let t = group.mul_gen(&list[k], s);
            if !seen.contains_key(&t) {
                if list.len() == budget {
                    return Err(KlError::Budget(budget));
                }
                seen.insert(t.clone(), ());
                list.push(t);
            }
        }
    }
    Ok(list)
}

/// `P_{x,w}` for every `x <= w` in `S_n`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct KlTable {
    pub top: String,
    pub entries: Vec<(Permutation, IntPolynomial)>,
}

impl KlTable {
    pub fn get(&self, x: &Permutation) -> Option<&IntPolynomial> {
        self.entries.iter().find(|(v, _)| v == x).map(|(_, p)| p)
    }
}

/// The table of `P_{x,w}` over `[id, w]`.
///
/// ```
/// use schubert::{kl::kl_table, Permutation};
/// let w: Permutation = "45312".parse().unwrap();
/// let t = kl_table(&w, 50_000).unwrap();
/// let e = Permutation::identity(5);
/// assert_eq!(t.get(&e).unwrap().display_with("q"), "1 + q^2");
/// ```
pub fn kl_table(w: &Permutation, budget: usize) -> Result<KlTable, KlError> {
    let kl = KazhdanLusztig::new(SymmetricGroup::new(w.size()), w, budget)?;
    Ok(KlTable {
        top: w.to_string(),
        entries: kl.column(w).expect("top is in its interval"),
    })
}

/// `P_{x,w}` for permutations of equal size.
pub fn kl_polynomial(x: &Permutation, w: &Permutation) -> Result<IntPolynomial, KlError> {
    let kl = cached_or_local(w)?;
    kl.polynomial(x, w)
        .ok_or_else(|| KlError::NotBelow(x.to_string(), w.to_string()))
}

/// `μ(x, w)` for `x < w`.
pub fn mu(x: &Permutation, w: &Permutation) -> Result<i64, KlError> {
    if x == w {
        return Err(KlError::NotBelow(x.to_string(), w.to_string()));
    }
    let kl = cached_or_local(w)?;
    kl.mu(x, w)
        .ok_or_else(|| KlError::NotBelow(x.to_string(), w.to_string()))
}

fn cached_or_local(w: &Permutation) -> Result<Arc<KazhdanLusztig<SymmetricGroup>>, KlError> {
    if w.size() <= 6 {
        return Ok(full_symmetric(w.size()));
    }
    Ok(Arc::new(KazhdanLusztig::new(
        SymmetricGroup::new(w.size()),
        w,
        crate::bruhat::DEFAULT_BUDGET,
    )?))
}

/// All Kazhdan-Lusztig polynomials of `S_n`, computed once per process and
/// shared between threads.
pub fn full_symmetric(n: usize) -> Arc<KazhdanLusztig<SymmetricGroup>> {
    type Store = Mutex<HashMap<usize, Arc<KazhdanLusztig<SymmetricGroup>>>>;
    static STORE: OnceLock<Store> = OnceLock::new();
    let store = STORE.get_or_init(Default::default);
    if let Some(kl) = store.lock().expect("kl store").get(&n) {
        return kl.clone();
    }
    // Built outside the lock; a racing thread may duplicate the work once.
    let kl = Arc::new(
        KazhdanLusztig::new(SymmetricGroup::new(n), &Permutation::longest(n), usize::MAX)
            .expect("unbounded budget"),
    );
    store
        .lock()
        .expect("kl store")
        .entry(n)
        .or_insert(kl)
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::HyperoctahedralGroup;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn s4_values() {
        let e = Permutation::identity(4);
        assert_eq!(
            kl_polynomial(&e, &p("3412")).unwrap(),
            IntPolynomial::new([1, 1])
        );
        assert_eq!(
            kl_polynomial(&e, &p("4231")).unwrap(),
            IntPolynomial::new([1, 1])
        );
        assert_eq!(
            kl_polynomial(&p("1324"), &p("3412")).unwrap(),
            IntPolynomial::new([1, 1])
        );
        assert_eq!(
            kl_polynomial(&p("2143"), &p("4231")).unwrap(),
            IntPolynomial::new([1, 1])
        );
        assert_eq!(
            kl_polynomial(&p("3412"), &p("3412")).unwrap(),
            IntPolynomial::one()
        );
        assert!(kl_polynomial(&p("4321"), &p("3412")).is_err());
        for (x, _) in kl_table(&p("4321"), 100).unwrap().entries {
            assert_eq!(kl_polynomial(&x, &p("4321")).unwrap(), IntPolynomial::one());
        }
    }

    #[test]
    fn s5_values() {
        let e = Permutation::identity(5);
        assert_eq!(
            kl_polynomial(&e, &p("52341")).unwrap(),
            IntPolynomial::new([1, 2, 1])
        );
        assert_eq!(
            kl_polynomial(&e, &p("34512")).unwrap(),
            IntPolynomial::new([1, 2])
        );
        // ℓ(45312) = 8 is even, so μ vanishes despite the q^2 term.
        assert_eq!(mu(&e, &p("45312")).unwrap(), 0);
        assert_eq!(mu(&p("14325"), &p("45312")).unwrap(), 1);
        assert!(mu(&p("2143"), &p("2143")).is_err());
    }

    #[test]
    fn covers_have_mu_one() {
        let kl = full_symmetric(4);
        for y in kl.elements() {
            for x in crate::bruhat::covers_down(y) {
                assert_eq!(kl.mu(&x, y), Some(1));
            }
        }
    }

    #[test]
    fn budget_and_foreign() {
        assert_eq!(
            KazhdanLusztig::new(SymmetricGroup::new(4), &p("4321"), 5).unwrap_err(),
            KlError::Budget(5)
        );
        assert!(KazhdanLusztig::new(SymmetricGroup::new(3), &p("4321"), 100).is_err());
    }

    #[test]
    fn b2_is_rationally_smooth() {
        let g = HyperoctahedralGroup::new(2);
        let top = g.product_of_word(&[0, 1, 0, 1]);
        let kl = KazhdanLusztig::new(g, &top, 100).unwrap();
        assert_eq!(kl.len(), 8);
        for y in kl.elements() {
            for (_, poly) in kl.column(y).unwrap() {
                assert_eq!(poly, IntPolynomial::one());
            }
        }
    }

    use crate::strategy::permutation;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn polynomials_are_normalised(w in permutation(1..=5), x in permutation(1..=5)) {
            prop_assume!(x.size() == w.size());
            let p = kl_polynomial(&x, &w);
            if crate::bruhat::bruhat_leq(&x, &w) {
                let p = p.unwrap();
                prop_assert_eq!(p.coeff(0), 1.into());
                if x != w {
                    prop_assert!(2 * p.degree().unwrap_or(0) < w.length() - x.length());
                }
                prop_assert!(p.has_nonnegative_coeffs());
            } else {
                prop_assert!(p.is_err());
            }
        }
    }
}
