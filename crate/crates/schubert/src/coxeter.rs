//! General Coxeter groups through the numbers game, classical root
//! systems, and parabolic flattening.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::group::CoxeterGroup;
use crate::patterns::signed_first_occurrence;
use crate::perm::Permutation;
use crate::signed::SignedPermutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("vertex {0} is not in a graph of rank {1}")]
    BadVertex(usize, usize),
    #[error("edge label {0} has no integer firing weights (use 3, 4, 6 or inf)")]
    UnsupportedLabel(u32),
    #[error("cannot parse edge line `{0}`")]
    Syntax(String),
    #[error("element enumeration exceeded {0} elements")]
    Budget(usize),
    #[error("root system {0} needs rank at least {1}")]
    BadRank(RootType, usize),
    #[error("vector has the wrong dimension for {0}")]
    Dimension(RootType),
    #[error("the roots in U are not an inversion set of any subsystem element")]
    NotAnInversionSet,
    #[error("element and root system have different sizes")]
    SizeMismatch,
}

/// An edge label `m(i, j)`; absent edges mean `m = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    Finite(u32),
    Infinite,
}

impl EdgeLabel {
    /// Firing weights `(f_ij, f_ji)` for an edge written `i j m`.
    pub fn weights(self) -> Result<(i64, i64), CoxeterError> {
        match self {
            Self::Finite(3) => Ok((1, 1)),
            Self::Finite(4) => Ok((2, 1)),
            Self::Finite(6) => Ok((3, 1)),
            Self::Infinite => Ok((4, 1)),
            Self::Finite(m) => Err(CoxeterError::UnsupportedLabel(m)),
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(m) => write!(f, "{m}"),
            Self::Infinite => f.write_str("inf"),
        }
    }
}

/// A Coxeter graph on vertices `0..rank` with its firing weights.
///
/// Firing weights on an edge written `i j m` are `f_ij` from the table
/// (the larger one) and `f_ji = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterGraph {
    rank: usize,
    edges: BTreeMap<(usize, usize), EdgeLabel>,
    weight: Vec<Vec<i64>>,
}

impl CoxeterGraph {
    pub fn new(rank: usize, edges: &[(usize, usize, EdgeLabel)]) -> Result<Self, CoxeterError> {
        let mut weight = vec![vec![0; rank]; rank];
        let mut map = BTreeMap::new();
        for &(i, j, m) in edges {
            for v in [i, j] {
                if v >= rank {
                    return Err(CoxeterError::BadVertex(v, rank));
                }
            }
            if i == j {
                return Err(CoxeterError::Syntax(format!("{i} {j} {m}")));
            }
            if m == EdgeLabel::Finite(2) {
                continue;
            }
            let (a, b) = m.weights()?;
            weight[i][j] = a;
            weight[j][i] = b;
            map.insert((i.min(j), i.max(j)), m);
        }
        Ok(Self {
            rank,
            edges: map,
            weight,
        })
    }

    pub fn type_a(rank: usize) -> Self {
        let edges: Vec<_> = (1..rank)
            .map(|i| (i - 1, i, EdgeLabel::Finite(3)))
            .collect();
        Self::new(rank, &edges).expect("path graph")
    }

    /// `B_n` with vertex 0 at the label-4 end.
    pub fn type_b(rank: usize) -> Self {
        let edges: Vec<_> = (1..rank)
            .map(|i| (i - 1, i, EdgeLabel::Finite(if i == 1 { 4 } else { 3 })))
            .collect();
        Self::new(rank, &edges).expect("path graph")
    }

    /// `D_n`: vertices 0 and 1 both attach to vertex 2.
    pub fn type_d(rank: usize) -> Self {
        let mut edges = vec![];
        if rank >= 3 {
            edges.push((0, 2, EdgeLabel::Finite(3)));
        }
        for i in 2..rank {
            edges.push((i - 1, i, EdgeLabel::Finite(3)));
        }
        Self::new(rank, &edges).expect("forked graph")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self, i: usize, j: usize) -> Option<EdgeLabel> {
        self.edges.get(&(i.min(j), i.max(j))).copied()
    }

    /// `f_ij`: how much of vertex `i`'s value vertex `j` gains when `i` fires.
    pub fn weight(&self, i: usize, j: usize) -> i64 {
        self.weight[i][j]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EdgeLabel)> + '_ {
        self.edges.iter().map(|(&(i, j), &m)| (i, j, m))
    }
}

/// One `i j m` line per edge, vertices numbered from 1. The first line may
/// instead be `rank r` to add isolated vertices. Blank lines and `#`
/// comments are skipped.
impl FromStr for CoxeterGraph {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut edges = Vec::new();
        let mut rank = 0;
        for line in s.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || CoxeterError::Syntax(line.to_string());
            let toks: Vec<&str> = line.split_whitespace().collect();
            if let ["rank", r] = toks.as_slice() {
                rank = rank.max(r.parse().map_err(|_| bad())?);
                continue;
            }
            let [i, j, m] = toks.as_slice() else {
                return Err(bad());
            };
            let i: usize = i.parse().map_err(|_| bad())?;
            let j: usize = j.parse().map_err(|_| bad())?;
            if i == 0 || j == 0 {
                return Err(bad());
            }
            let m = match *m {
                "inf" | "oo" | "∞" => EdgeLabel::Infinite,
                m => EdgeLabel::Finite(m.parse().map_err(|_| bad())?),
            };
            rank = rank.max(i).max(j);
            edges.push((i - 1, j - 1, m));
        }
        Self::new(rank, &edges)
    }
}

impl fmt::Display for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank {}", self.rank)?;
        for (i, j, m) in self.edges() {
            let (i, j) = if self.weight[i][j] >= self.weight[j][i] {
                (i, j)
            } else {
                (j, i)
            };
            writeln!(f, "{} {} {m}", i + 1, j + 1)?;
        }
        Ok(())
    }
}

/// Fires vertex `i`: every neighbour `j` gains `f_ij` times the value at
/// `i`, then the value at `i` changes sign.
///
/// ```
/// use schubert::coxeter::{numbers_game_fire, CoxeterGraph};
/// let g = CoxeterGraph::type_a(2);
/// let s = numbers_game_fire(&[1, 1], 0, &g).unwrap();
/// assert_eq!(s, vec![-1, 2]);
/// assert_eq!(numbers_game_fire(&s, 1, &g).unwrap(), vec![1, -2]);
/// ```
pub fn numbers_game_fire(
    state: &[i64],
    vertex: usize,
    graph: &CoxeterGraph,
) -> Result<Vec<i64>, CoxeterError> {
    if vertex >= graph.rank || state.len() != graph.rank {
        return Err(CoxeterError::BadVertex(vertex, graph.rank));
    }
    Ok(fire(state, vertex, graph))
}

fn fire(state: &[i64], i: usize, graph: &CoxeterGraph) -> Vec<i64> {
    let v = state[i];
    let mut out = state.to_vec();
    for (j, slot) in out.iter_mut().enumerate() {
        *slot += graph.weight[i][j] * v;
    }
    out[i] = -v;
    debug_assert!(out.iter().all(|&x| x != 0), "numbers game produced a zero");
    out
}

/// The numbers-game vector of a group element, started from all ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameVector(pub Vec<i64>);

impl fmt::Display for GameVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The Coxeter group of a graph, with elements keyed by game vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSystem {
    pub graph: CoxeterGraph,
}

impl CoxeterSystem {
    pub fn new(graph: CoxeterGraph) -> Self {
        Self { graph }
    }

    /// Every element, breadth first by length. Fails past `budget`.
    pub fn elements(&self, budget: usize) -> Result<Vec<GameVector>, CoxeterError> {
        let mut seen = HashSet::new();
        let mut out = vec![self.identity()];
        seen.insert(self.identity());
        let mut k = 0;
        while k < out.len() {
            let w = out[k].clone();
            for s in 0..self.rank() {
                if !self.is_right_descent(&w, s) {
                    let ws = self.mul_gen(&w, s);
                    if seen.insert(ws.clone()) {
                        if out.len() == budget {
                            return Err(CoxeterError::Budget(budget));
                        }
                        out.push(ws);
                    }
                }
            }
            k += 1;
        }
        Ok(out)
    }
}

impl CoxeterGroup for CoxeterSystem {
    type Element = GameVector;

    fn rank(&self) -> usize {
        self.graph.rank
    }

    fn identity(&self) -> GameVector {
        GameVector(vec![1; self.graph.rank])
    }

    fn mul_gen(&self, w: &GameVector, s: usize) -> GameVector {
        GameVector(fire(&w.0, s, &self.graph))
    }

    fn is_right_descent(&self, w: &GameVector, s: usize) -> bool {
        w.0[s] < 0
    }

    fn contains(&self, w: &GameVector) -> bool {
        w.0.len() == self.graph.rank
    }
}

/// A group element as its game vector plus one reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterElement {
    pub vector: GameVector,
    pub word: Vec<usize>,
}

impl CoxeterElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// Plays the game along `word` and reads off a reduced word by stripping
/// descents from the result.
///
/// ```
/// use schubert::coxeter::{canonical_form, CoxeterGraph};
/// let g = CoxeterGraph::type_a(2);
/// let a = canonical_form(&[0, 1, 0], &g).unwrap();
/// let b = canonical_form(&[1, 0, 1], &g).unwrap();
/// assert_eq!(a.vector, b.vector);
/// assert_eq!(canonical_form(&[0, 0], &g).unwrap().word, Vec::<usize>::new());
/// ```
pub fn canonical_form(
    word: &[usize],
    graph: &CoxeterGraph,
) -> Result<CoxeterElement, CoxeterError> {
    if let Some(&s) = word.iter().find(|&&s| s >= graph.rank) {
        return Err(CoxeterError::BadVertex(s, graph.rank));
    }
    let sys = CoxeterSystem::new(graph.clone());
    let vector = sys.product_of_word(word);
    let word = sys.reduced_word(&vector);
    Ok(CoxeterElement { vector, word })
}

/// Vertices carrying a negative value.
pub fn right_descents(w: &CoxeterElement) -> Vec<usize> {
    (0..w.vector.0.len())
        .filter(|&i| w.vector.0[i] < 0)
        .collect()
}

/// Lengths of `x` and `w`, and whether `x <= w`, by walking down a reduced
/// word of `w`: when `s` ends the word, `x <= w` iff `min(x, xs) <= ws`.
///
/// ```
/// use schubert::coxeter::{canonical_form, length_and_bruhat, CoxeterGraph};
/// let g = CoxeterGraph::type_b(2);
/// let x = canonical_form(&[0], &g).unwrap();
/// let w = canonical_form(&[0, 1, 0], &g).unwrap();
/// assert_eq!(length_and_bruhat(&x, &w, &g).unwrap(), (1, 3, true));
/// ```
pub fn length_and_bruhat(
    x: &CoxeterElement,
    w: &CoxeterElement,
    graph: &CoxeterGraph,
) -> Result<(usize, usize, bool), CoxeterError> {
    let r = graph.rank;
    if x.vector.0.len() != r || w.vector.0.len() != r {
        return Err(CoxeterError::SizeMismatch);
    }
    let sys = CoxeterSystem::new(graph.clone());
    let mut cur = x.vector.clone();
    for &s in w.word.iter().rev() {
        if sys.is_right_descent(&cur, s) {
            cur = sys.mul_gen(&cur, s);
        }
    }
    Ok((x.length(), w.length(), cur == sys.identity()))
}

/// The classical root system families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootType {
    A,
    B,
    C,
    D,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
            Self::D => "D",
        };
        f.write_str(c)
    }
}

impl FromStr for RootType {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Self::A),
            "B" => Ok(Self::B),
            "C" => Ok(Self::C),
            "D" => Ok(Self::D),
            _ => Err(CoxeterError::Syntax(s.to_string())),
        }
    }
}

/// A root as a coordinate vector in the `e`-basis.
pub type Root = Vec<i64>;

impl RootType {
    /// Ambient dimension: `A_n` lives in `n + 1` coordinates.
    pub fn dimension(self, n: usize) -> usize {
        if self == Self::A {
            n + 1
        } else {
            n
        }
    }
}

fn unit(dim: usize, i: usize, c: i64) -> Root {
    let mut v = vec![0; dim];
    v[i] = c;
    v
}

fn combine(a: &Root, b: &Root, sign: i64) -> Root {
    a.iter().zip(b).map(|(x, y)| x + sign * y).collect()
}

impl RootType {
    /// Positivity of a root. Type A uses the first nonzero coordinate. The
    /// other types use the last one, so that the sign change of the first
    /// entry is a simple reflection (with simple root `e1` or `2e1`).
    pub fn is_positive(self, root: &[i64]) -> bool {
        let mut nonzero = root.iter().filter(|&&c| c != 0);
        let lead = if self == Self::A {
            nonzero.next()
        } else {
            nonzero.next_back()
        };
        lead.is_some_and(|&c| c > 0)
    }
}

/// The positive roots of a classical type, ordered lexicographically from
/// the largest vector down. For `B`, `C` and `D` the roots `e_i - e_j` appear
/// as `e_j - e_i`; see [`RootType::is_positive`].
///
/// ```
/// use schubert::coxeter::{positive_roots, RootType};
/// assert_eq!(positive_roots(RootType::A, 3).unwrap().len(), 6);
/// assert_eq!(positive_roots(RootType::B, 2).unwrap().len(), 4);
/// assert_eq!(positive_roots(RootType::D, 4).unwrap().len(), 12);
/// ```
pub fn positive_roots(kind: RootType, n: usize) -> Result<Vec<Root>, CoxeterError> {
    let min = match kind {
        RootType::A => 1,
        RootType::B | RootType::C => 2,
        RootType::D => 3,
    };
    if n < min {
        return Err(CoxeterError::BadRank(kind, min));
    }
    let dim = kind.dimension(n);
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            if kind == RootType::A {
                out.push(combine(&unit(dim, i, 1), &unit(dim, j, 1), -1));
            } else {
                out.push(combine(&unit(dim, j, 1), &unit(dim, i, 1), -1));
                out.push(combine(&unit(dim, i, 1), &unit(dim, j, 1), 1));
            }
        }
        match kind {
            RootType::B => out.push(unit(dim, i, 1)),
            RootType::C => out.push(unit(dim, i, 2)),
            _ => {}
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Writes a root as `e1-e2`, `2e3`, `e1+e4`.
pub fn root_label(root: &[i64]) -> String {
    let mut s = String::new();
    for (i, &c) in root.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if c.abs() != 1 {
            s.push_str(&c.abs().to_string());
        }
        s.push_str(&format!("e{}", i + 1));
    }
    s
}

/// `w e_i = ±e_{|w(i)|}` with the sign of `w(i)`.
pub fn act(w: &SignedPermutation, v: &[i64]) -> Root {
    let mut out = vec![0; v.len()];
    for (i, &c) in v.iter().enumerate() {
        let t = w.value(i + 1);
        out[t.unsigned_abs() as usize - 1] += t.signum() * c;
    }
    out
}

fn reflect(beta: &[i64], v: &[i64]) -> Root {
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let bb = dot(beta, beta);
    let k = 2 * dot(beta, v) / bb;
    v.iter().zip(beta).map(|(x, b)| x - k * b).collect()
}

/// Positive roots `α` with `wα` negative.
///
/// ```
/// use schubert::coxeter::{inversion_roots, root_label, RootType};
/// use schubert::SignedPermutation;
/// let w = SignedPermutation::new(vec![2, 4, 3, 1]).unwrap();
/// let inv = inversion_roots(&w, RootType::A).unwrap();
/// let labels: Vec<String> = inv.iter().map(|r| root_label(r)).collect();
/// assert_eq!(labels, ["e1-e4", "e2-e4", "e2-e3", "e3-e4"]);
/// ```
pub fn inversion_roots(w: &SignedPermutation, kind: RootType) -> Result<Vec<Root>, CoxeterError> {
    let n = w.size();
    let rank = if kind == RootType::A {
        n.saturating_sub(1)
    } else {
        n
    };
    if kind == RootType::A && w.entries().iter().any(|&v| v < 0) {
        return Err(CoxeterError::Dimension(kind));
    }
    Ok(positive_roots(kind, rank)?
        .into_iter()
        .filter(|a| !kind.is_positive(&act(w, a)))
        .collect())
}

/// Type-A inversion roots of an ordinary permutation.
pub fn permutation_inversion_roots(w: &Permutation) -> Vec<Root> {
    let s = SignedPermutation::new(w.to_vec().into_iter().map(|v| v as i64).collect())
        .expect("permutation");
    inversion_roots(&s, RootType::A).unwrap_or_default()
}

fn rank_of(vectors: &[Root]) -> usize {
    use num_rational::Rational64;
    let mut rows: Vec<Vec<Rational64>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect();
    let m = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..m {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != Rational64::from_integer(0))
        else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank {
                let f = rows[r][col] / rows[rank][col];
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= f * *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The root subsystem `Φ ∩ span(U)` of a classical type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSubsystem {
    pub kind: RootType,
    pub rank: usize,
    /// Positive roots of the subsystem.
    pub positive: Vec<Root>,
    /// Simple roots of the subsystem, in the order of `positive`.
    pub simple: Vec<Root>,
}

impl RootSubsystem {
    pub fn new(kind: RootType, rank: usize, span: &[Root]) -> Result<Self, CoxeterError> {
        let dim = kind.dimension(rank);
        if span.iter().any(|v| v.len() != dim) {
            return Err(CoxeterError::Dimension(kind));
        }
        let base = rank_of(span);
        let positive: Vec<Root> = positive_roots(kind, rank)?
            .into_iter()
            .filter(|a| {
                let mut with = span.to_vec();
                with.push(a.clone());
                rank_of(&with) == base
            })
            .collect();
        let set: BTreeSet<&Root> = positive.iter().collect();
        let simple: Vec<Root> = positive
            .iter()
            .filter(|a| {
                !positive.iter().any(|b| {
                    let rest = combine(a, b, -1);
                    kind.is_positive(&rest) && set.contains(&rest)
                })
            })
            .cloned()
            .collect();
        Ok(Self {
            kind,
            rank,
            positive,
            simple,
        })
    }

    /// The subsystem of type A spanned by `e_p - e_q` for consecutive
    /// entries of `positions` (1-based).
    pub fn on_positions(n: usize, positions: &[usize]) -> Result<Self, CoxeterError> {
        let dim = n;
        let span: Vec<Root> = positions
            .windows(2)
            .map(|p| combine(&unit(dim, p[0] - 1, 1), &unit(dim, p[1] - 1, 1), -1))
            .collect();
        Self::new(RootType::A, n.saturating_sub(1), &span)
    }
}

/// `fl_U(w)`: the subsystem element with the same inversions inside the
/// subsystem as `w`, as a word in the subsystem's simple reflections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flattened {
    /// Letters index into the subsystem's simple roots.
    pub word: Vec<usize>,
    pub inversions: Vec<Root>,
}

/// Peels simple roots off the restricted inversion set `N`: if `β ∈ N` is
/// simple then `N` belongs to `x` with `x s_β < x`, and `x s_β` has
/// inversion set `s_β(N \ {β})`.
///
/// ```
/// use schubert::coxeter::{flatten_parabolic, RootSubsystem};
/// use schubert::SignedPermutation;
/// let w = SignedPermutation::new(vec![2, 4, 3, 1]).unwrap();
/// let u = RootSubsystem::on_positions(4, &[2, 3, 4]).unwrap();
/// let fl = flatten_parabolic(&w, &u).unwrap();
/// assert_eq!(fl.word.len(), 3);
/// ```
pub fn flatten_parabolic(
    w: &SignedPermutation,
    sub: &RootSubsystem,
) -> Result<Flattened, CoxeterError> {
    let all = inversion_roots(w, sub.kind)?;
    if all
        .first()
        .is_some_and(|r| r.len() != sub.kind.dimension(sub.rank))
    {
        return Err(CoxeterError::SizeMismatch);
    }
    let inversions: Vec<Root> = all
        .into_iter()
        .filter(|a| sub.positive.contains(a))
        .collect();
    let mut current: BTreeSet<Root> = inversions.iter().cloned().collect();
    let mut word = Vec::new();
    while !current.is_empty() {
        let k = sub
            .simple
            .iter()
            .position(|b| current.contains(b))
            .ok_or(CoxeterError::NotAnInversionSet)?;
        let beta = &sub.simple[k];
        current = current
            .iter()
            .filter(|a| *a != beta)
            .map(|a| reflect(beta, a))
            .collect();
        if current.iter().any(|a| !sub.kind.is_positive(a)) {
            return Err(CoxeterError::NotAnInversionSet);
        }
        word.push(k);
    }
    word.reverse();
    Ok(Flattened { word, inversions })
}

/// Flattening onto a position subset, returned as a permutation.
pub fn flatten_positions(
    w: &Permutation,
    positions: &[usize],
) -> Result<Permutation, CoxeterError> {
    let s = SignedPermutation::new(w.to_vec().into_iter().map(|v| v as i64).collect())
        .map_err(|_| CoxeterError::SizeMismatch)?;
    let sub = RootSubsystem::on_positions(w.size(), positions)?;
    let fl = flatten_parabolic(&s, &sub)?;
    // simple roots are sorted from the largest vector, which for
    // e_{p1}-e_{p2}, e_{p2}-e_{p3}, ... is the position order
    Ok(Permutation::from_word(
        positions.len(),
        &fl.word.iter().map(|k| k + 1).collect::<Vec<_>>(),
    ))
}

pub const BN_SINGULAR_PATTERNS: &str = "
    (-2,-1)
    (1,2,-3) (1,-2,-3) (-1,2,-3) (2,-1,-3) (-2,1,-3) (3,-2,1)
    (2,-4,3,1) (-2,-4,3,1) (3,4,1,2) (3,4,-1,2) (-3,4,1,2)
    (4,1,3,-2) (4,-1,3,-2) (4,2,3,1) (4,2,3,-1) (-4,2,3,1)";

pub fn bn_singular_patterns() -> &'static [SignedPermutation] {
    static CELL: OnceLock<Vec<SignedPermutation>> = OnceLock::new();
    CELL.get_or_init(|| {
        BN_SINGULAR_PATTERNS
            .split_whitespace()
            .map(|t| t.parse().expect("built-in signed pattern"))
            .collect()
    })
}

/// The first listed pattern that occurs, with its positions.
pub fn bn_singular_witness(
    w: &SignedPermutation,
) -> Option<(&'static SignedPermutation, Vec<usize>)> {
    bn_singular_patterns()
        .iter()
        .find_map(|p| signed_first_occurrence(w, p).map(|o| (p, o.positions)))
}

/// Smoothness of the type-B Schubert variety by signed pattern avoidance.
///
/// ```
/// use schubert::{coxeter::bn_is_smooth, SignedPermutation};
/// let s = |t: &str| t.parse::<SignedPermutation>().unwrap();
/// assert!(!bn_is_smooth(&s("(-2,-1)")));
/// assert!(!bn_is_smooth(&s("(1,2,-3)")));
/// assert!(bn_is_smooth(&SignedPermutation::identity(3)));
/// ```
pub fn bn_is_smooth(w: &SignedPermutation) -> bool {
    bn_singular_witness(w).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat::bruhat_leq;
    use crate::group::{HyperoctahedralGroup, SymmetricGroup};
    use crate::perm::{all_permutations, flatten_at};
    use proptest::prelude::*;

    #[test]
    fn graph_text_round_trip() {
        let g: CoxeterGraph = "1 2 4\n2 3 3\n".parse().unwrap();
        assert_eq!(g, CoxeterGraph::type_b(3));
        assert_eq!(g.to_string().parse::<CoxeterGraph>().unwrap(), g);
        assert_eq!(g.weight(0, 1), 2);
        assert_eq!(g.weight(1, 0), 1);
        assert!("1 2 5".parse::<CoxeterGraph>().is_err());
        assert!("1 2".parse::<CoxeterGraph>().is_err());
        let inf: CoxeterGraph = "1 2 inf".parse().unwrap();
        assert_eq!(inf.label(1, 0), Some(EdgeLabel::Infinite));
    }

    #[test]
    fn finite_group_orders() {
        let order = |g: CoxeterGraph| CoxeterSystem::new(g).elements(10_000).unwrap().len();
        assert_eq!(order(CoxeterGraph::type_a(3)), 24);
        assert_eq!(order(CoxeterGraph::type_b(2)), 8);
        assert_eq!(order(CoxeterGraph::type_b(3)), 48);
        assert_eq!(order(CoxeterGraph::type_d(4)), 192);
        let g2 = CoxeterGraph::new(2, &[(0, 1, EdgeLabel::Finite(6))]).unwrap();
        assert_eq!(order(g2), 12);
        let affine = CoxeterGraph::new(2, &[(0, 1, EdgeLabel::Infinite)]).unwrap();
        assert_eq!(
            CoxeterSystem::new(affine).elements(100),
            Err(CoxeterError::Budget(100))
        );
    }

    #[test]
    fn descents_of_small_elements() {
        let g = CoxeterGraph::type_a(2);
        assert!(right_descents(&canonical_form(&[], &g).unwrap()).is_empty());
        assert_eq!(right_descents(&canonical_form(&[0], &g).unwrap()), vec![0]);
        assert_eq!(
            right_descents(&canonical_form(&[0, 1, 0], &g).unwrap()),
            vec![0, 1]
        );
    }

    #[test]
    fn bruhat_agrees_with_type_a() {
        let g = CoxeterGraph::type_a(3);
        let sym = SymmetricGroup::new(4);
        let perms: Vec<Permutation> = all_permutations(4).collect();
        let elems: Vec<CoxeterElement> = perms
            .iter()
            .map(|p| canonical_form(&sym.reduced_word(p), &g).unwrap())
            .collect();
        for (x, ex) in perms.iter().zip(&elems) {
            for (w, ew) in perms.iter().zip(&elems) {
                let (lx, lw, le) = length_and_bruhat(ex, ew, &g).unwrap();
                assert_eq!((lx, lw, le), (x.length(), w.length(), bruhat_leq(x, w)));
            }
            assert_eq!(
                right_descents(ex),
                x.descents().iter().map(|d| d - 1).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn type_b_game_matches_signed_permutations() {
        let g = CoxeterGraph::type_b(3);
        let b = HyperoctahedralGroup::new(3);
        let mut vectors = HashSet::new();
        for w in SignedPermutation::all(3) {
            let e = canonical_form(&w.reduced_word(), &g).unwrap();
            assert_eq!(e.length(), w.length());
            assert_eq!(right_descents(&e), b.right_descents(&w));
            vectors.insert(e.vector);
        }
        assert_eq!(vectors.len(), 48);
    }

    #[test]
    fn roots_and_inversions() {
        assert_eq!(
            positive_roots(RootType::B, 2).unwrap(),
            vec![vec![1, 1], vec![1, 0], vec![0, 1], vec![-1, 1]]
        );
        assert_eq!(positive_roots(RootType::C, 3).unwrap().len(), 9);
        let w = SignedPermutation::new(vec![-1, 2, 3]).unwrap();
        let inv = inversion_roots(&w, RootType::B).unwrap();
        assert!(inv.contains(&vec![1, 0, 0]));
        assert_eq!(inv.len(), w.length());
        for w in SignedPermutation::all(3) {
            assert_eq!(inversion_roots(&w, RootType::B).unwrap().len(), w.length());
        }
        assert!(
            inversion_roots(&SignedPermutation::identity(4), RootType::D)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn flattening_onto_positions_is_classical_flattening() {
        for w in all_permutations(5) {
            for mask in 1u32..32 {
                let pos: Vec<usize> = (1..=5).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                assert_eq!(
                    flatten_positions(&w, &pos).unwrap(),
                    flatten_at(&w, &pos),
                    "{w} {pos:?}"
                );
            }
        }
        let w: Permutation = "2431".parse().unwrap();
        assert_eq!(
            flatten_positions(&w, &[2, 3, 4]).unwrap(),
            Permutation::longest(3)
        );
    }

    #[test]
    fn flattening_onto_the_whole_system_is_the_identity() {
        let span: Vec<Root> = (0..3).map(|i| unit(3, i, 1)).collect();
        let sub = RootSubsystem::new(RootType::B, 3, &span).unwrap();
        assert_eq!(sub.positive.len(), 9);
        let generator_root = |s: usize| {
            if s == 0 {
                unit(3, 0, 1)
            } else {
                combine(&unit(3, s, 1), &unit(3, s - 1, 1), -1)
            }
        };
        let letter: Vec<usize> = sub
            .simple
            .iter()
            .map(|r| (0..3).find(|&s| generator_root(s) == *r).unwrap())
            .collect();
        for w in SignedPermutation::all(3) {
            let fl = flatten_parabolic(&w, &sub).unwrap();
            let word: Vec<usize> = fl.word.iter().map(|&k| letter[k]).collect();
            assert_eq!(SignedPermutation::from_word(3, &word), w);
        }
    }

    #[test]
    fn b2_smoothness() {
        let bad: Vec<String> = SignedPermutation::all(2)
            .into_iter()
            .filter(|w| !bn_is_smooth(w))
            .map(|w| w.to_string())
            .collect();
        assert_eq!(bad, ["(-2,-1)"]);
        assert_eq!(bn_singular_patterns().len(), 17);
    }

    fn braid_moves(word: &[usize], g: &CoxeterGraph) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..word.len().saturating_sub(1) {
            let (a, b) = (word[i], word[i + 1]);
            let m = match g.label(a, b) {
                _ if a == b => continue,
                None => 2,
                Some(EdgeLabel::Finite(m)) => m as usize,
                Some(EdgeLabel::Infinite) => continue,
            };
            if i + m > word.len() {
                continue;
            }
            let alt = |x: usize, y: usize| (0..m).map(move |k| if k % 2 == 0 { x } else { y });
            if word[i..i + m].iter().copied().eq(alt(a, b)) {
                let mut w = word.to_vec();
                w.splice(i..i + m, alt(b, a));
                out.push(w);
            }
        }
        out
    }

    proptest! {
        #[test]
        fn game_vectors_survive_braid_moves(
            word in prop::collection::vec(0usize..3, 0..16),
            b in any::<bool>(),
        ) {
            let g = if b { CoxeterGraph::type_b(3) } else { CoxeterGraph::type_a(3) };
            let e = canonical_form(&word, &g).unwrap();
            for moved in braid_moves(&word, &g) {
                prop_assert_eq!(&canonical_form(&moved, &g).unwrap().vector, &e.vector);
            }
            prop_assert_eq!(&canonical_form(&e.word, &g).unwrap().vector, &e.vector);
            prop_assert!(e.vector.0.iter().all(|&x| x != 0));
        }
    }
}
