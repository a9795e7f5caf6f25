//! Bruhat order on `S_n`: intervals, Poincare polynomials, Bruhat graphs,
//! tangent spaces, singular loci and the essential set `E(w)`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::patterns::occurrences_classical;
use crate::perm::{all_permutations, Diagram, Permutation, RankTable};
use crate::poly::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruhatError {
    #[error("{0} is not below {1} in Bruhat order")]
    NotBelow(String, String),
    #[error("interval has more than {0} elements")]
    Budget(usize),
}

/// `x <= w` in Bruhat order, by rank-table dominance. A smaller permutation
/// is padded with fixed points first.
///
/// ```
/// use schubert::{bruhat::bruhat_leq, Permutation};
/// let p = |s: &str| s.parse::<Permutation>().unwrap();
/// assert!(bruhat_leq(&p("1324"), &p("3412")));
/// assert!(!bruhat_leq(&p("231"), &p("312")) && !bruhat_leq(&p("312"), &p("231")));
/// ```
pub fn bruhat_leq(x: &Permutation, w: &Permutation) -> bool {
    let n = x.size().max(w.size());
    let (x, w) = (x.extend_to(n), w.extend_to(n));
    leq_table(&x, &w.rank_table())
}

/// `x <= w` given the rank table of `w`; sizes must match.
pub fn leq_table(x: &Permutation, w_table: &RankTable) -> bool {
    // Row by row prefix counts: rk_x[i][j] >= rk_w[i][j].
    let n = x.size();
    let mut counts = vec![0usize; n + 1];
    for j in 1..=n {
        let v = x.value(j);
        for c in counts.iter_mut().skip(v) {
            *c += 1;
        }
        for i in 1..n {
            if counts[i] < w_table.get(i, j) {
                return false;
            }
        }
    }
    true
}

/// Elements covered by `w`: `w t_ij` with `w(i) > w(j)` and nothing in
/// between positionally with a value in between.
pub fn covers_down(w: &Permutation) -> Vec<Permutation> {
    let n = w.size();
    let mut out = Vec::new();
    for i in 1..=n {
        let a = w.value(i);
        let mut ceiling = 0;
        for j in i + 1..=n {
            let b = w.value(j);
            if b < a && b > ceiling {
                out.push(w.swap_positions(i, j));
                ceiling = b;
            }
        }
    }
    out.sort();
    out
}

/// Elements covering `w`.
pub fn covers_up(w: &Permutation) -> Vec<Permutation> {
    let n = w.size();
    let mut out = Vec::new();
    for i in 1..=n {
        let a = w.value(i);
        let mut floor = n + 1;
        for j in i + 1..=n {
            let b = w.value(j);
            if b > a && b < floor {
                out.push(w.swap_positions(i, j));
                floor = b;
            }
        }
    }
    out.sort();
    out
}

/// Position pairs `(a, b)` whose swap gives a down-cover of `w`.
pub fn cover_transpositions(w: &Permutation) -> Vec<(usize, usize)> {
    let n = w.size();
    let mut out = Vec::new();
    for i in 1..=n {
        let a = w.value(i);
        let mut ceiling = 0;
        for j in i + 1..=n {
            let b = w.value(j);
            if b < a && b > ceiling {
                out.push((i, j));
                ceiling = b;
            }
        }
    }
    out
}

/// The interval `[bottom, top]` with its covering relation.
#[derive(Clone, Debug)]
pub struct BruhatInterval {
    pub top: Permutation,
    pub bottom: Permutation,
    /// Sorted by length, then lexicographically.
    pub elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    /// `covers[k]` lists the indices of elements covered by `elements[k]`.
    pub covers: Vec<Vec<usize>>,
}

impl BruhatInterval {
    /// Builds `[x, w]` by walking down from `w` and discarding anything not
    /// above `x`. Fails once more than `budget` elements are found.
    pub fn new(x: &Permutation, w: &Permutation, budget: usize) -> Result<Self, BruhatError> {
        if x.size() != w.size() || !bruhat_leq(x, w) {
            return Err(BruhatError::NotBelow(x.to_string(), w.to_string()));
        }
        let above_x = |v: &Permutation| leq_table(x, &v.rank_table());
        let mut seen: HashSet<Permutation> = HashSet::from([w.clone()]);
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(v) = queue.pop_front() {
            for u in covers_down(&v) {
                if !seen.contains(&u) && above_x(&u) {
                    if seen.len() == budget {
                        return Err(BruhatError::Budget(budget));
                    }
                    seen.insert(u.clone());
                    queue.push_back(u);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort_by_cached_key(|v| (v.length(), v.clone()));
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(k, v)| (v.clone(), k))
            .collect();
        let covers = elements
            .iter()
            .map(|v| {
                covers_down(v)
                    .iter()
                    .filter_map(|u| index.get(u).copied())
                    .collect()
            })
            .collect();
        Ok(Self {
            top: w.clone(),
            bottom: x.clone(),
            elements,
            index,
            covers,
        })
    }

    /// `[id, w]`.
    pub fn below(w: &Permutation, budget: usize) -> Result<Self, BruhatError> {
        Self::new(&Permutation::identity(w.size()), w, budget)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: &Permutation) -> bool {
        self.index.contains_key(v)
    }

    pub fn index_of(&self, v: &Permutation) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Number of elements at each length, from `ℓ(bottom)` up.
    pub fn rank_sizes(&self) -> Vec<usize> {
        let base = self.bottom.length();
        let mut sizes = vec![0; self.top.length() - base + 1];
        for v in &self.elements {
            sizes[v.length() - base] += 1;
        }
        sizes
    }

    /// `Σ t^{ℓ(v)}` over the interval.
    pub fn rank_generating_function(&self) -> IntPolynomial {
        let base = self.bottom.length();
        let mut c = vec![0i64; self.top.length() + 1];
        for (k, s) in self.rank_sizes().into_iter().enumerate() {
            c[base + k] = s as i64;
        }
        IntPolynomial::new(c)
    }

    /// Up-covers of each element, the reverse of `covers`.
    pub fn covers_above(&self) -> Vec<Vec<usize>> {
        let mut up = vec![Vec::new(); self.len()];
        for (k, down) in self.covers.iter().enumerate() {
            for &d in down {
                up[d].push(k);
            }
        }
        up
    }

    /// Hasse diagram in DOT syntax, edges pointing down.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph interval {\n  rankdir=BT;\n");
        for v in &self.elements {
            let _ = writeln!(s, "  \"{v}\";");
        }
        for (k, down) in self.covers.iter().enumerate() {
            for &d in down {
                let _ = writeln!(s, "  \"{}\" -> \"{}\";", self.elements[d], self.elements[k]);
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Default cap on interval sizes.
pub const DEFAULT_BUDGET: usize = 50_000;

/// `P_w(t) = Σ_{v <= w} t^{ℓ(v)}`.
///
/// ```
/// use schubert::{bruhat::poincare, Permutation};
/// let w: Permutation = "3412".parse().unwrap();
/// assert_eq!(poincare(&w).to_string(), "1 + 3t + 5t^2 + 4t^3 + t^4");
/// ```
pub fn poincare(w: &Permutation) -> IntPolynomial {
    BruhatInterval::below(w, usize::MAX)
        .expect("identity is below everything")
        .rank_generating_function()
}

/// `#{i < j : v t_ij <= w}`, the dimension of the tangent space of `X_w`
/// at the point `v`.
pub fn tangent_dimension(v: &Permutation, w: &Permutation) -> Result<usize, BruhatError> {
    if v.size() != w.size() || !bruhat_leq(v, w) {
        return Err(BruhatError::NotBelow(v.to_string(), w.to_string()));
    }
    Ok(tangent_dimension_with(v, &w.rank_table()))
}

fn tangent_dimension_with(v: &Permutation, w_table: &RankTable) -> usize {
    let n = v.size();
    let mut count = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            if leq_table(&v.swap_positions(i, j), w_table) {
                count += 1;
            }
        }
    }
    count
}

/// The graph on `[id, w]` joining `v` and `v t_ij` when both lie below `w`.
#[derive(Clone, Debug)]
pub struct BruhatGraph {
    pub vertices: Vec<Permutation>,
    /// Pairs of vertex indices, each unordered edge once with `a < b`.
    pub edges: Vec<(usize, usize)>,
}

impl BruhatGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn is_regular_of_degree(&self, k: usize) -> bool {
        self.degrees().iter().all(|&d| d == k)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph bruhat {\n");
        for v in &self.vertices {
            let _ = writeln!(s, "  \"{v}\";");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  \"{}\" -- \"{}\";", self.vertices[a], self.vertices[b]);
        }
        s.push_str("}\n");
        s
    }
}

pub fn bruhat_graph(w: &Permutation, budget: usize) -> Result<BruhatGraph, BruhatError> {
    let interval = BruhatInterval::below(w, budget)?;
    let n = w.size();
    let mut edges = Vec::new();
    for (a, v) in interval.elements.iter().enumerate() {
        for i in 1..=n {
            for j in i + 1..=n {
                if let Some(b) = interval.index_of(&v.swap_positions(i, j)) {
                    if a < b {
                        edges.push((a, b));
                    }
                }
            }
        }
    }
    edges.sort_unstable();
    Ok(BruhatGraph {
        vertices: interval.elements,
        edges,
    })
}

/// Maximal singular points of `X_w`: the Bruhat-maximal `v <= w` whose
/// tangent space is larger than `ℓ(w)`. Sorted lexicographically.
///
/// ```
/// use schubert::{bruhat::singular_locus, Permutation};
/// let p = |s: &str| s.parse::<Permutation>().unwrap();
/// assert_eq!(singular_locus(&p("4231")), vec![p("2143")]);
/// assert_eq!(singular_locus(&p("3412")), vec![p("1324")]);
/// ```
pub fn singular_locus(w: &Permutation) -> Vec<Permutation> {
    let interval = BruhatInterval::below(w, usize::MAX).expect("unbounded budget");
    singular_locus_in(&interval)
}

pub fn singular_locus_in(interval: &BruhatInterval) -> Vec<Permutation> {
    let w = &interval.top;
    let lw = w.length();
    let table = w.rank_table();
    let singular: Vec<bool> = interval
        .elements
        .iter()
        .map(|v| tangent_dimension_with(v, &table) > lw)
        .collect();
    let up = interval.covers_above();
    let mut out: Vec<Permutation> = (0..interval.len())
        .filter(|&k| singular[k] && up[k].iter().all(|&u| !singular[u]))
        .map(|k| interval.elements[k].clone())
        .collect();
    out.sort();
    out
}

/// A pattern shape and the permutation it is replaced by to produce a
/// singular-locus component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusFamily {
    pub pattern: Permutation,
    pub replacement: Permutation,
}

fn desc(hi: usize, lo: usize) -> Vec<i64> {
    if hi < lo {
        Vec::new()
    } else {
        (lo..=hi).rev().map(|v| v as i64).collect()
    }
}

/// The pattern families generating singular-locus components, up to
/// pattern size `kmax`.
///
/// Three shapes: the `4231` family (`k` on the left, `1` on the right, two
/// decreasing runs between), the `3412` family (decreasing runs on either
/// side of the central `41`), and the `45312` family (a decreasing run
/// between `45`-type and `12`-type pairs).
pub fn locus_families(kmax: usize) -> Vec<LocusFamily> {
    let mut out = Vec::new();
    let mut push = |p: Vec<i64>, v: Vec<i64>| {
        out.push(LocusFamily {
            pattern: Permutation::new(p).expect("family pattern"),
            replacement: Permutation::new(v).expect("family replacement"),
        })
    };
    for k in 4..=kmax {
        for j in 2..=k - 2 {
            let d1 = desc(j, 2);
            let d2 = desc(k - 1, j + 1);
            let p = [vec![k as i64], d1.clone(), d2.clone(), vec![1]].concat();
            let v = [d1, vec![1, k as i64], d2].concat();
            push(p, v);
        }
        for l in 0..=k - 4 {
            let left = desc(l + 1, 2);
            let (b, c) = (l as i64 + 2, l as i64 + 3);
            let right = desc(k - 1, l + 4);
            let p = [
                vec![c],
                left.clone(),
                vec![k as i64, 1],
                right.clone(),
                vec![b],
            ]
            .concat();
            let v = [left, vec![1, c, b, k as i64], right].concat();
            push(p, v);
        }
        if k >= 5 {
            let m = k - 4;
            let mid = desc(m + 2, 3);
            let p = [vec![m as i64 + 3, m as i64 + 4], mid.clone(), vec![1, 2]].concat();
            let v = [vec![1, m as i64 + 3], mid, vec![2, m as i64 + 4]].concat();
            push(p, v);
        }
    }
    out
}

/// Singular-locus components built from pattern occurrences: for each
/// family occurrence, rearrange the occurrence's values as the replacement
/// prescribes and keep the result when the length drops by exactly as much
/// as it does in the family itself.
///
/// ```
/// use schubert::{bruhat::singular_locus_by_patterns, Permutation};
/// let p = |s: &str| s.parse::<Permutation>().unwrap();
/// assert_eq!(singular_locus_by_patterns(&p("45312")), vec![p("14325")]);
/// ```
pub fn singular_locus_by_patterns(w: &Permutation) -> Vec<Permutation> {
    let n = w.size();
    let lw = w.length();
    let mut out = Vec::new();
    for fam in locus_families(n) {
        let drop = fam.pattern.length() - fam.replacement.length();
        for occ in occurrences_classical(w, &fam.pattern, None) {
            let mut vals: Vec<usize> = occ.positions.iter().map(|&p| w.value(p)).collect();
            vals.sort_unstable();
            let mut e = w.to_vec();
            for (t, &pos) in occ.positions.iter().enumerate() {
                e[pos - 1] = vals[fam.replacement.value(t + 1) - 1];
            }
            let v = Permutation::new(e.into_iter().map(|x| x as i64)).expect("rearrangement");
            if lw >= drop && v.length() == lw - drop {
                out.push(v);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Bruhat-minimal elements of `S_n` not below `w`, for `n = w.size()`.
///
/// ```
/// use schubert::{bruhat::essential_set_e, Permutation};
/// let p = |s: &str| s.parse::<Permutation>().unwrap();
/// assert_eq!(essential_set_e(&p("3412")), vec![p("2341"), p("4123")]);
/// ```
pub fn essential_set_e(w: &Permutation) -> Vec<Permutation> {
    let table = w.rank_table();
    let outside = |v: &Permutation| !leq_table(v, &table);
    let mut out: Vec<Permutation> = all_permutations(w.size())
        .filter(|v| outside(v) && covers_down(v).iter().all(|u| !outside(u)))
        .collect();
    out.sort();
    out
}

/// At most one descent, and the same for the inverse.
pub fn is_bigrassmannian(w: &Permutation) -> bool {
    w.descents().len() <= 1 && w.inverse().descents().len() <= 1
}

/// Fulton's essential set: diagram cells with no diagram cell immediately
/// to the right or below.
pub fn fulton_essential_set(w: &Permutation) -> Vec<(usize, usize)> {
    let d: Diagram = w.diagram();
    d.essential
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn covers() {
        assert_eq!(
            covers_down(&p("3412")),
            vec![p("1432"), p("2413"), p("3142"), p("3214")]
        );
        assert!(covers_down(&Permutation::identity(4)).is_empty());
        assert_eq!(covers_down(&p("4231")).len(), 4);
        for v in covers_down(&p("35142")) {
            assert!(covers_up(&v).contains(&p("35142")));
        }
    }

    #[test]
    fn intervals() {
        let i = BruhatInterval::below(&p("3412"), 100).unwrap();
        assert_eq!(i.len(), 14);
        assert_eq!(i.rank_sizes(), vec![1, 3, 5, 4, 1]);
        assert_eq!(
            BruhatInterval::new(&p("3412"), &p("3412"), 10)
                .unwrap()
                .len(),
            1
        );
        assert_eq!(BruhatInterval::below(&p("4321"), 100).unwrap().len(), 24);
        assert_eq!(
            BruhatInterval::below(&p("4321"), 10).unwrap_err(),
            BruhatError::Budget(10)
        );
        assert!(BruhatInterval::new(&p("231"), &p("312"), 10).is_err());
        let mid = BruhatInterval::new(&p("1324"), &p("3412"), 100).unwrap();
        assert!(mid.elements.iter().all(|v| bruhat_leq(&p("1324"), v)));
        assert!(mid.to_dot().starts_with("digraph"));
    }

    #[test]
    fn poincare_polynomials() {
        assert_eq!(
            poincare(&p("4321")),
            IntPolynomial::new([1, 3, 5, 6, 5, 3, 1])
        );
        assert_eq!(poincare(&Permutation::identity(3)), IntPolynomial::one());
    }

    #[test]
    fn tangent_spaces() {
        assert_eq!(
            tangent_dimension(&Permutation::identity(4), &p("4231")).unwrap(),
            6
        );
        assert_eq!(tangent_dimension(&p("2143"), &p("4231")).unwrap(), 6);
        assert_eq!(tangent_dimension(&p("321"), &p("321")).unwrap(), 3);
        assert!(tangent_dimension(&p("4231"), &p("2143")).is_err());
    }

    #[test]
    fn graphs() {
        let g = bruhat_graph(&p("4321"), 100).unwrap();
        assert_eq!(g.vertices.len(), 24);
        assert!(g.is_regular_of_degree(6));
        let g = bruhat_graph(&p("4231"), 100).unwrap();
        let k = g.vertices.iter().position(|v| *v == p("2143")).unwrap();
        assert_eq!(g.degrees()[k], 6);
        let g = bruhat_graph(&Permutation::identity(3), 100).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (1, 0));
    }

    #[test]
    fn loci() {
        assert_eq!(singular_locus(&p("4231")), vec![p("2143")]);
        assert_eq!(singular_locus_by_patterns(&p("4231")), vec![p("2143")]);
        assert_eq!(singular_locus_by_patterns(&p("3412")), vec![p("1324")]);
        assert_eq!(singular_locus(&p("35142")), vec![p("13254")]);
        assert!(singular_locus(&p("612543")).is_empty());
        // Rearranging the 6241 occurrence gives the singular point 215634,
        // which sits below the single component.
        let w = p("625431");
        assert_eq!(singular_locus_by_patterns(&w), vec![p("216543")]);
        assert!(tangent_dimension(&p("215634"), &w).unwrap() > w.length());
        assert!(bruhat_leq(&p("215634"), &p("216543")));
    }

    #[test]
    fn family_shapes() {
        let f = locus_families(5);
        let pats: Vec<String> = f.iter().map(|x| x.pattern.to_string()).collect();
        assert!(pats.contains(&"4231".to_string()));
        assert!(pats.contains(&"3412".to_string()));
        assert!(pats.contains(&"45312".to_string()));
        for fam in &f {
            assert!(bruhat_leq(&fam.replacement, &fam.pattern));
        }
    }

    #[test]
    fn essential_sets() {
        assert!(essential_set_e(&p("4321")).is_empty());
        assert_eq!(essential_set_e(&p("2143")), vec![p("1324")]);
        assert!(is_bigrassmannian(&p("1324")));
        assert!(!is_bigrassmannian(&p("2143")));
        assert_eq!(fulton_essential_set(&p("3412")).len(), 1);
        assert_eq!(fulton_essential_set(&p("2143")).len(), 2);
    }

    use crate::strategy::permutation;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn covers_change_length_by_one(w in permutation(1..=8)) {
            for v in covers_down(&w) {
                prop_assert_eq!(v.length() + 1, w.length());
                prop_assert!(bruhat_leq(&v, &w));
                prop_assert!(covers_up(&v).contains(&w));
            }
        }

        #[test]
        fn order_is_antisymmetric_and_graded(x in permutation(4..=4), w in permutation(4..=4)) {
            if bruhat_leq(&x, &w) && bruhat_leq(&w, &x) {
                prop_assert_eq!(&x, &w);
            }
            if bruhat_leq(&x, &w) {
                prop_assert!(x.length() <= w.length());
                prop_assert!(bruhat_leq(&x.inverse(), &w.inverse()));
            }
        }

        #[test]
        fn tangent_space_is_at_least_the_dimension(w in permutation(1..=6)) {
            let interval = BruhatInterval::below(&w, usize::MAX).unwrap();
            for v in interval.elements.iter().take(30) {
                prop_assert!(tangent_dimension(v, &w).unwrap() >= w.length());
            }
            prop_assert_eq!(interval.rank_generating_function().at_one(), interval.len().into());
        }
    }
}
