//! Permutations in one-line notation and the statistics built on them.
//!
//! Everything here is 1-based at the API surface: `w.value(1)` is the first
//! entry of the one-line notation, generator `s_i` swaps positions `i` and
//! `i + 1`, and diagram cells are `(row, column)` pairs starting at 1.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

/// Reasons a permutation or partition could not be built.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("empty permutation")]
    Empty,
    #[error("value {0} appears more than once")]
    Duplicate(i64),
    #[error("value {value} is outside 1..={n}")]
    OutOfRange { value: i64, n: usize },
    #[error("`{0}` is not an integer")]
    NotAnInteger(String),
    #[error("permutations larger than 255 are not supported")]
    TooLarge,
    #[error("more than {cap} reduced words")]
    TooManyWords { cap: usize },
    #[error("{0:?} is not a partition")]
    NotAPartition(Vec<usize>),
}

/// A permutation of `1..=n` in one-line notation.
///
/// Ordering is lexicographic on the one-line notation, which is what the
/// enumeration code relies on for deterministic output.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation.
    ///
    /// ```
    /// use schubert::Permutation;
    /// let w = Permutation::new(vec![2, 3, 4, 1]).unwrap();
    /// assert_eq!(w.length(), 3);
    /// assert!(Permutation::new(vec![2, 2, 3]).is_err());
    /// ```
    pub fn new<I>(values: I) -> Result<Self, PermError>
    where
        I: IntoIterator,
        I::Item: Into<i64>,
    {
        let values: Vec<i64> = values.into_iter().map(Into::into).collect();
        let n = values.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        if n > 255 {
            return Err(PermError::TooLarge);
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v < 1 || v > n as i64 {
                return Err(PermError::OutOfRange { value: v, n });
            }
            if seen[v as usize] {
                return Err(PermError::Duplicate(v));
            }
            seen[v as usize] = true;
        }
        Ok(Self {
            entries: values.into_iter().map(|v| v as u8).collect(),
        })
    }

    pub(crate) fn from_raw(entries: Vec<u8>) -> Self {
        debug_assert!(entries.is_empty() || Self::new(entries.iter().map(|&v| v as i64)).is_ok());
        Self { entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_raw((1..=n as u8).collect())
    }

    /// The longest element `n n-1 ... 1`.
    pub fn longest(n: usize) -> Self {
        Self::from_raw((1..=n as u8).rev().collect())
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn value(&self, i: usize) -> usize {
        self.entries[i - 1] as usize
    }

    /// The one-line notation as raw bytes.
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.entries.iter().map(|&v| v as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.size()];
        for (i, &v) in self.entries.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Self::from_raw(inv)
    }

    /// The product `self * other`, i.e. `i -> self(other(i))`.
    ///
    /// Panics if the sizes differ.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.size(), other.size(), "size mismatch");
        Self::from_raw(
            other
                .entries
                .iter()
                .map(|&v| self.entries[v as usize - 1])
                .collect(),
        )
    }

    /// `w * t_ij`: swaps the entries in positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut e = self.entries.clone();
        e.swap(i - 1, j - 1);
        Self { entries: e }
    }

    /// `t_ij * w`: swaps the values `i` and `j`.
    pub fn swap_values(&self, i: usize, j: usize) -> Self {
        let (a, b) = (i as u8, j as u8);
        Self {
            entries: self
                .entries
                .iter()
                .map(|&v| {
                    if v == a {
                        b
                    } else if v == b {
                        a
                    } else {
                        v
                    }
                })
                .collect(),
        }
    }

    /// Right multiplication by the simple transposition `s_i`.
    pub fn mul_simple(&self, i: usize) -> Self {
        self.swap_positions(i, i + 1)
    }

    /// Pads with fixed points up to size `n`.
    pub fn extend_to(&self, n: usize) -> Self {
        let mut e = self.entries.clone();
        e.extend((self.size() as u8 + 1)..=(n as u8));
        Self { entries: e }
    }

    /// Number of inversions, which is the Coxeter length.
    pub fn length(&self) -> usize {
        let e = &self.entries;
        let mut count = 0;
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if e[i] > e[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Inversion pairs `(i, j)` with `i < j` and `w(i) > w(j)`, in
    /// lexicographic order.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let e = &self.entries;
        let mut out = Vec::new();
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if e[i] > e[j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn length_and_inversions(&self) -> (usize, Vec<(usize, usize)>) {
        let inv = self.inversions();
        (inv.len(), inv)
    }

    /// True when `w s_i < w`.
    pub fn is_descent(&self, i: usize) -> bool {
        self.entries[i - 1] > self.entries[i]
    }

    /// Right descents of `w`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.size()).filter(|&i| self.is_descent(i)).collect()
    }

    pub fn rank_table(&self) -> RankTable {
        RankTable::of(self)
    }

    /// The Rothe diagram, built from the matrix of the inverse as in the
    /// text: a cell `(i, j)` survives when `j < w(i)` and `i < w^{-1}(j)`.
    /// For `2341` that is the first column, rows 1 to 3.
    pub fn diagram(&self) -> Diagram {
        let inv = self.inverse();
        let n = self.size();
        let mut cells = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if j < self.value(i) && i < inv.value(j) {
                    cells.push((i, j));
                }
            }
        }
        Diagram::from_cells(n, cells)
    }

    /// The diagram obtained by crossing out cells right of and below the 1s
    /// of the matrix of `w` itself, with 1s at `(w(j), j)`. This is the
    /// transpose of [`Permutation::diagram`], and equals the diagram of
    /// `w^{-1}`.
    pub fn diagram_of_matrix(&self) -> Diagram {
        let inv = self.inverse();
        let n = self.size();
        let mut cells = Vec::new();
        for r in 1..=n {
            for c in 1..=n {
                if r < self.value(c) && c < inv.value(r) {
                    cells.push((r, c));
                }
            }
        }
        Diagram::from_cells(n, cells)
    }

    /// Row lengths of [`Permutation::diagram`], sorted into a partition.
    pub fn shape_of_diagram(&self) -> Partition {
        let d = self.diagram();
        let mut rows = vec![0usize; self.size()];
        for &(i, _) in &d.cells {
            rows[i - 1] += 1;
        }
        rows.retain(|&r| r > 0);
        rows.sort_unstable_by(|a, b| b.cmp(a));
        Partition(rows)
    }

    /// One reduced word, found by repeatedly stripping the first descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        while let Some(i) = (1..w.size()).find(|&i| w.is_descent(i)) {
            word.push(i);
            w = w.mul_simple(i);
        }
        word.reverse();
        word
    }

    /// Multiplies out a word in the simple transpositions, starting from the
    /// identity of `S_n`.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        let mut e: Vec<u8> = (1..=n as u8).collect();
        for &i in word {
            e.swap(i - 1, i);
        }
        Self { entries: e }
    }

    /// All reduced words in lexicographic order. Fails if more than `cap`
    /// words would be produced for `w` or any permutation visited on the way.
    pub fn reduced_words(&self, cap: usize) -> Result<Vec<Vec<usize>>, PermError> {
        let mut memo = HashMap::new();
        let words = reduced_words_rec(self, cap, &mut memo)?;
        let mut words: Vec<Vec<usize>> = words
            .iter()
            .map(|w| w.iter().map(|&l| l as usize).collect())
            .collect();
        words.sort();
        Ok(words)
    }

    /// The number of reduced words, without listing them.
    pub fn reduced_word_count(&self) -> BigUint {
        fn go(w: &Permutation, memo: &mut HashMap<Permutation, BigUint>) -> BigUint {
            if w.is_identity() {
                return BigUint::one();
            }
            if let Some(c) = memo.get(w) {
                return c.clone();
            }
            let mut total = BigUint::default();
            for i in w.descents() {
                total += go(&w.mul_simple(i), memo);
            }
            memo.insert(w.clone(), total.clone());
            total
        }
        go(self, &mut HashMap::new())
    }

    /// Matrix positions `(w(j), j)`, the convention used for the permutation
    /// matrix.
    pub fn matrix_ones(&self) -> Vec<(usize, usize)> {
        (1..=self.size()).map(|j| (self.value(j), j)).collect()
    }

    /// Lexicographic successor within `S_n`, or `None` at the last one.
    pub fn next_lex(&self) -> Option<Self> {
        let mut e = self.entries.clone();
        let n = e.len();
        let i = (0..n.saturating_sub(1)).rev().find(|&i| e[i] < e[i + 1])?;
        let j = (i + 1..n).rev().find(|&j| e[j] > e[i])?;
        e.swap(i, j);
        e[i + 1..].reverse();
        Some(Self { entries: e })
    }
}

type WordSet = std::rc::Rc<Vec<Vec<u8>>>;

fn reduced_words_rec(
    w: &Permutation,
    cap: usize,
    memo: &mut HashMap<Permutation, WordSet>,
) -> Result<WordSet, PermError> {
    if let Some(ws) = memo.get(w) {
        return Ok(ws.clone());
    }
    let mut out = Vec::new();
    if w.is_identity() {
        out.push(Vec::new());
    } else {
        for i in w.descents() {
            for prefix in reduced_words_rec(&w.mul_simple(i), cap, memo)?.iter() {
                if out.len() == cap {
                    return Err(PermError::TooManyWords { cap });
                }
                let mut word = prefix.clone();
                word.push(i as u8);
                out.push(word);
            }
        }
    }
    let ws = std::rc::Rc::new(out);
    memo.insert(w.clone(), ws.clone());
    Ok(ws)
}

impl fmt::Display for Permutation {
    /// Compact digits when every entry is a single digit, otherwise
    /// space-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size() <= 9 {
            for v in &self.entries {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl serde::Serialize for Permutation {
    /// Serialized as its display string.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts whitespace- or comma-separated integers. A single token made
    /// only of digits, like `2341`, is read one digit per entry.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.len() == 1 && tokens[0].len() > 1 && tokens[0].bytes().all(|b| b.is_ascii_digit())
        {
            return Self::new(tokens[0].bytes().map(|b| (b - b'0') as i64));
        }
        parse_tokens(&tokens)
    }
}

/// Parses a sequence of integer tokens into a permutation.
pub fn parse_permutation<S: AsRef<str>>(tokens: &[S]) -> Result<Permutation, PermError> {
    let joined: Vec<&str> = tokens.iter().map(AsRef::as_ref).collect();
    if joined.len() == 1 {
        return joined[0].parse();
    }
    parse_tokens(&joined)
}

fn parse_tokens(tokens: &[&str]) -> Result<Permutation, PermError> {
    let values = tokens
        .iter()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| PermError::NotAnInteger(t.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Permutation::new(values)
}

/// The permutation with the same relative order as `values`.
///
/// ```
/// use schubert::perm::flatten;
/// assert_eq!(flatten(&[6, 2, 4, 1]).unwrap().to_string(), "4231");
/// ```
pub fn flatten(values: &[i64]) -> Result<Permutation, PermError> {
    if values.is_empty() {
        return Err(PermError::Empty);
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(PermError::Duplicate(w[0]));
    }
    Permutation::new(
        values
            .iter()
            .map(|v| sorted.binary_search(v).unwrap() as i64 + 1),
    )
}

/// Flattens the entries of `w` at the given 1-based positions.
pub fn flatten_at(w: &Permutation, positions: &[usize]) -> Permutation {
    let mut ranked: Vec<(u8, usize)> = positions
        .iter()
        .enumerate()
        .map(|(k, &p)| (w.entries[p - 1], k))
        .collect();
    ranked.sort_unstable();
    let mut out = vec![0u8; positions.len()];
    for (rank, &(_, k)) in ranked.iter().enumerate() {
        out[k] = rank as u8 + 1;
    }
    Permutation::from_raw(out)
}

/// Iterates over `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    std::iter::successors(Some(Permutation::identity(n)), |w| w.next_lex())
}

/// `rk[i][j] = #{h <= j : w(h) <= i}`, stored row-major with a zero border.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RankTable {
    n: usize,
    rk: Vec<u16>,
}

impl RankTable {
    pub fn of(w: &Permutation) -> Self {
        let n = w.size();
        let stride = n + 1;
        let mut rk = vec![0u16; stride * stride];
        for i in 1..=n {
            for j in 1..=n {
                let hit = (w.value(j) == i) as u16;
                rk[i * stride + j] = rk[(i - 1) * stride + j] + rk[i * stride + j - 1]
                    - rk[(i - 1) * stride + j - 1]
                    + hit;
            }
        }
        Self { n, rk }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `rk[i][j]` for `0 <= i, j <= n`.
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.rk[i * (self.n + 1) + j] as usize
    }

    /// Rows `1..=n`, each listing columns `1..=n`.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (1..=self.n)
            .map(|i| (1..=self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Recovers the permutation: `w(j) = i` exactly where the table's mixed
    /// difference at `(i, j)` is 1.
    pub fn to_permutation(&self) -> Permutation {
        let n = self.n;
        let mut e = vec![0u8; n];
        for i in 1..=n {
            for j in 1..=n {
                let d = self.get(i, j) + self.get(i - 1, j - 1)
                    - self.get(i - 1, j)
                    - self.get(i, j - 1);
                if d == 1 {
                    e[j - 1] = i as u8;
                }
            }
        }
        Permutation::from_raw(e)
    }

    /// Entrywise `self >= other`, the Bruhat test `self's permutation <=
    /// other's`.
    pub fn dominates(&self, other: &RankTable) -> bool {
        self.rk.iter().zip(&other.rk).all(|(a, b)| a >= b)
    }
}

/// A set of cells `(row, column)` in an `n x n` grid, with its essential
/// cells precomputed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagram {
    pub n: usize,
    pub cells: Vec<(usize, usize)>,
    pub essential: Vec<(usize, usize)>,
}

impl Diagram {
    pub fn from_cells(n: usize, mut cells: Vec<(usize, usize)>) -> Self {
        cells.sort_unstable();
        let has = |c: (usize, usize)| cells.binary_search(&c).is_ok();
        let essential = cells
            .iter()
            .copied()
            .filter(|&(i, j)| !has((i, j + 1)) && !has((i + 1, j)))
            .collect();
        Self {
            n,
            cells,
            essential,
        }
    }

    pub fn contains(&self, cell: (usize, usize)) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    pub fn transpose(&self) -> Self {
        Self::from_cells(self.n, self.cells.iter().map(|&(i, j)| (j, i)).collect())
    }
}

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PermError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PermError::NotAPartition(parts));
        }
        Ok(Self(parts))
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Standard Young tableaux of this shape, by the hook length formula.
    ///
    /// ```
    /// use schubert::perm::Partition;
    /// assert_eq!(Partition::new(vec![2, 1]).unwrap().syt_count(), 2u32.into());
    /// ```
    pub fn syt_count(&self) -> BigUint {
        let parts = &self.0;
        let mut numerator = BigUint::one();
        for k in 2..=self.size() {
            numerator *= k;
        }
        let mut hooks = BigUint::one();
        for (i, &len) in parts.iter().enumerate() {
            for j in 0..len {
                let arm = len - j - 1;
                let leg = parts[i + 1..].iter().filter(|&&l| l > j).count();
                hooks *= arm + leg + 1;
            }
        }
        numerator / hooks
    }
}

impl FromStr for Partition {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| PermError::NotAnInteger(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }
}

/// Hook-length count for a shape given as parts.
pub fn syt_count(shape: &[usize]) -> Result<BigUint, PermError> {
    Ok(Partition::new(shape.to_vec())?.syt_count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(p("2 3 4 1"), p("2341"));
        assert_eq!(p("2,3,4,1").to_vec(), vec![2, 3, 4, 1]);
        assert!(p("1").is_identity());
        assert_eq!("2 2 3".parse::<Permutation>(), Err(PermError::Duplicate(2)));
        assert_eq!(
            "1 4".parse::<Permutation>(),
            Err(PermError::OutOfRange { value: 4, n: 2 })
        );
        assert_eq!("".parse::<Permutation>(), Err(PermError::Empty));
        assert!(matches!(
            "1 x".parse::<Permutation>(),
            Err(PermError::NotAnInteger(_))
        ));
        assert_eq!(parse_permutation(&["3", "1", "2"]).unwrap(), p("312"));
    }

    #[test]
    fn lengths() {
        assert_eq!(p("2341").length(), 3);
        assert_eq!(p("4321").length(), 6);
        assert_eq!(Permutation::identity(5).length(), 0);
        assert_eq!(p("2341").inversions(), vec![(1, 4), (2, 4), (3, 4)]);
    }

    #[test]
    fn rank_table_of_2341() {
        let t = p("2341").rank_table();
        assert_eq!(
            t.rows(),
            vec![
                vec![0, 0, 0, 1],
                vec![1, 1, 1, 2],
                vec![1, 2, 2, 3],
                vec![1, 2, 3, 4]
            ]
        );
        assert_eq!(t.to_permutation(), p("2341"));
        let id = Permutation::identity(4).rank_table();
        for i in 1..=4 {
            for j in 1..=4 {
                assert_eq!(id.get(i, j), i.min(j));
            }
        }
    }

    #[test]
    fn diagrams() {
        let d = p("2341").diagram();
        assert_eq!(d.cells, vec![(1, 1), (2, 1), (3, 1)]);
        assert_eq!(d.essential, vec![(3, 1)]);
        let d = p("2143").diagram();
        assert_eq!(d.cells, vec![(1, 1), (3, 3)]);
        assert_eq!(d.essential, d.cells);
        assert!(Permutation::identity(3).diagram().cells.is_empty());
        let w = p("2341");
        assert_eq!(w.diagram_of_matrix(), w.diagram().transpose());
        assert_eq!(w.diagram_of_matrix(), w.inverse().diagram());
    }

    #[test]
    fn flattening() {
        assert_eq!(flatten(&[6, 2, 4, 1]).unwrap(), p("4231"));
        assert_eq!(flatten(&[3, 5, 1, 2]).unwrap(), p("3412"));
        assert_eq!(flatten(&[1, 2, 3]).unwrap(), Permutation::identity(3));
        assert_eq!(flatten(&[1, 1]), Err(PermError::Duplicate(1)));
        assert_eq!(flatten_at(&p("625431"), &[1, 2, 4, 6]), p("4231"));
    }

    #[test]
    fn words() {
        assert_eq!(
            p("321").reduced_words(100).unwrap(),
            vec![vec![1, 2, 1], vec![2, 1, 2]]
        );
        assert_eq!(
            Permutation::identity(3).reduced_words(10).unwrap(),
            vec![Vec::<usize>::new()]
        );
        assert!(p("2341")
            .reduced_words(10)
            .unwrap()
            .contains(&vec![1, 2, 3]));
        assert_eq!(
            p("4321").reduced_words(3),
            Err(PermError::TooManyWords { cap: 3 })
        );
        assert_eq!(p("4321").reduced_word_count(), 16u32.into());
        let w = p("35142");
        assert_eq!(Permutation::from_word(5, &w.reduced_word()), w);
    }

    #[test]
    fn shapes_and_tableaux() {
        assert_eq!(p("321").shape_of_diagram(), Partition(vec![2, 1]));
        assert_eq!(p("2341").shape_of_diagram(), Partition(vec![1, 1, 1]));
        assert_eq!(
            Permutation::identity(4).shape_of_diagram(),
            Partition(vec![])
        );
        assert_eq!(syt_count(&[2, 2]).unwrap(), 2u32.into());
        assert_eq!(syt_count(&[5]).unwrap(), 1u32.into());
        assert_eq!(syt_count(&[3, 2, 1]).unwrap(), 16u32.into());
        assert!(syt_count(&[1, 2]).is_err());
        assert_eq!("3,1".parse::<Partition>().unwrap(), Partition(vec![3, 1]));
    }

    #[test]
    fn composition_convention() {
        let u = p("231");
        let v = p("312");
        let uv = u.compose(&v);
        for i in 1..=3 {
            assert_eq!(uv.value(i), u.value(v.value(i)));
        }
        assert_eq!(u.compose(&u.inverse()), Permutation::identity(3));
        assert_eq!(p("2341").swap_positions(1, 4), p("1342"));
        assert_eq!(p("2341").swap_values(1, 4), p("2314"));
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let all: Vec<_> = all_permutations(4).collect();
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    use crate::strategy::permutation;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn group_laws(w in permutation(1..=9), seed in any::<usize>()) {
            let n = w.size();
            prop_assert!(w.compose(&w.inverse()).is_identity());
            prop_assert_eq!(w.inverse().length(), w.length());
            if n >= 2 {
                let s = Permutation::from_word(n, &[1 + seed % (n - 1)]);
                prop_assert_eq!(w.compose(&s).length().abs_diff(w.length()), 1);
            }
        }

        #[test]
        fn words_and_tables_round_trip(w in permutation(1..=8)) {
            let word = w.reduced_word();
            prop_assert_eq!(word.len(), w.length());
            prop_assert_eq!(Permutation::from_word(w.size(), &word), w.clone());
            prop_assert_eq!(w.rank_table().to_permutation(), w.clone());
            prop_assert_eq!(w.to_string().parse::<Permutation>().unwrap(), w.clone());
            prop_assert_eq!(w.diagram().cells.len(), w.length());
        }

        #[test]
        fn flattening_is_a_pattern(w in permutation(1..=9), mask in any::<u16>()) {
            let pos: Vec<usize> = (1..=w.size()).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            let f = flatten_at(&w, &pos);
            prop_assert_eq!(f.size(), pos.len());
            prop_assert!(f.length() <= w.length());
        }
    }
}
