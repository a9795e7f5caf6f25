//! Pattern containment in its five flavours: classical, with adjacency
//! constraints, with Bruhat restrictions, interval embeddings, and signed.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::{flatten_at, PermError, Permutation};
use crate::signed::SignedPermutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("adjacency pair ({0}, {1}) must name consecutive pattern positions")]
    BadAdjacency(usize, usize),
    #[error("restriction t{0}{1} must satisfy 1 <= a < b <= pattern size")]
    BadRestriction(usize, usize),
    #[error("interval [{0}, {1}] is empty in Bruhat order")]
    EmptyInterval(String, String),
    #[error("cannot parse pattern `{0}`")]
    Syntax(String),
    #[error("a {0} pattern cannot be matched against this host")]
    WrongHost(&'static str),
}

/// Increasing 1-based host positions `i_1 < ... < i_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Occurrence {
    pub positions: Vec<usize>,
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.positions.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Backtracking matcher. For each pattern index we precompute the earlier
/// pattern indices holding the nearest smaller and larger values, so each
/// extension step is a constant-time window check.
struct Matcher<'a> {
    host: &'a [i64],
    pattern: Vec<i64>,
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
    glued: Vec<bool>,
    signs: bool,
}

impl<'a> Matcher<'a> {
    fn new(host: &'a [i64], pattern: &[i64], glued: Vec<bool>, signs: bool) -> Self {
        let key = |v: i64| if signs { v.abs() } else { v };
        let m = pattern.len();
        let mut below = vec![None; m];
        let mut above = vec![None; m];
        for k in 0..m {
            let pk = key(pattern[k]);
            for j in 0..k {
                let pj = key(pattern[j]);
                if pj < pk && below[k].is_none_or(|b: usize| key(pattern[b]) < pj) {
                    below[k] = Some(j);
                }
                if pj > pk && above[k].is_none_or(|a: usize| key(pattern[a]) > pj) {
                    above[k] = Some(j);
                }
            }
        }
        Self {
            host,
            pattern: pattern.to_vec(),
            below,
            above,
            glued,
            signs,
        }
    }

    fn key(&self, v: i64) -> i64 {
        if self.signs {
            v.abs()
        } else {
            v
        }
    }

    /// Calls `visit` on every occurrence in lexicographic order; stops early
    /// when `visit` returns false.
    fn run(&self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let mut chosen = Vec::with_capacity(self.pattern.len());
        if self.pattern.len() <= self.host.len() {
            self.extend(&mut chosen, visit);
        }
    }

    fn extend(&self, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let k = chosen.len();
        let m = self.pattern.len();
        if k == m {
            return visit(chosen);
        }
        let start = chosen.last().map_or(0, |&p| p + 1);
        let end = self.host.len() - (m - k - 1);
        let range = if k > 0 && self.glued[k] {
            start..(start + 1).min(end)
        } else {
            start..end
        };
        let lo = self.below[k].map(|j| self.key(self.host[chosen[j]]));
        let hi = self.above[k].map(|j| self.key(self.host[chosen[j]]));
        for pos in range {
            let v = self.host[pos];
            if self.signs && v.signum() != self.pattern[k].signum() {
                continue;
            }
            let kv = self.key(v);
            if lo.is_some_and(|l| kv < l) || hi.is_some_and(|h| kv > h) {
                continue;
            }
            chosen.push(pos);
            let go_on = self.extend(chosen, visit);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn as_i64(w: &Permutation) -> Vec<i64> {
    w.entries().iter().map(|&v| v as i64).collect()
}

fn collect(m: &Matcher<'_>, limit: Option<usize>) -> Vec<Occurrence> {
    let mut out = Vec::new();
    if limit == Some(0) {
        return out;
    }
    m.run(&mut |pos| {
        out.push(Occurrence {
            positions: pos.iter().map(|p| p + 1).collect(),
        });
        limit.is_none_or(|l| out.len() < l)
    });
    out
}

/// Classical occurrences of `pattern` in `host`, lexicographic by position,
/// truncated to `limit` if given.
///
/// ```
/// use schubert::{patterns::occurrences_classical, Permutation};
/// let host: Permutation = "625431".parse().unwrap();
/// let p4231: Permutation = "4231".parse().unwrap();
/// let all = occurrences_classical(&host, &p4231, None);
/// assert!(all.iter().any(|o| o.positions == vec![1, 2, 4, 6]));
/// ```
pub fn occurrences_classical(
    host: &Permutation,
    pattern: &Permutation,
    limit: Option<usize>,
) -> Vec<Occurrence> {
    let h = as_i64(host);
    let m = Matcher::new(&h, &as_i64(pattern), vec![false; pattern.size()], false);
    collect(&m, limit)
}

/// The lexicographically first occurrence, if any.
pub fn first_occurrence(host: &Permutation, pattern: &Permutation) -> Option<Occurrence> {
    occurrences_classical(host, pattern, Some(1)).pop()
}

pub fn contains(host: &Permutation, pattern: &Permutation) -> bool {
    first_occurrence(host, pattern).is_some()
}

/// True when `host` avoids every pattern in the list.
pub fn avoids_all(host: &Permutation, patterns: &[Permutation]) -> bool {
    patterns.iter().all(|p| !contains(host, p))
}

/// The first pattern of the list that occurs, with its first occurrence.
pub fn first_witness<'p>(
    host: &Permutation,
    patterns: &'p [Permutation],
) -> Option<(&'p Permutation, Occurrence)> {
    patterns
        .iter()
        .find_map(|p| first_occurrence(host, p).map(|o| (p, o)))
}

/// The change in length caused by swapping positions `i < j`.
pub fn swap_length_delta(w: &Permutation, i: usize, j: usize) -> i64 {
    let (a, b) = (w.value(i), w.value(j));
    let (lo, hi) = (a.min(b), a.max(b));
    let between = (i + 1..j)
        .filter(|&k| {
            let v = w.value(k);
            lo < v && v < hi
        })
        .count() as i64;
    let d = 1 + 2 * between;
    if a < b {
        d
    } else {
        -d
    }
}

/// A pattern together with the regime it is matched under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternSpec {
    Classical(Permutation),
    /// Each pair `(a, a + 1)` of pattern positions must land on adjacent host
    /// positions.
    Adjacency {
        pattern: Permutation,
        adjacent: Vec<(usize, usize)>,
    },
    /// Every transposition `t_ab` of pattern positions must change the
    /// host's length by the same amount it changes the pattern's.
    BruhatRestricted {
        pattern: Permutation,
        restrictions: Vec<(usize, usize)>,
    },
    Interval {
        lower: Permutation,
        upper: Permutation,
    },
    Signed(SignedPermutation),
}

impl PatternSpec {
    pub fn adjacency(
        pattern: Permutation,
        adjacent: Vec<(usize, usize)>,
    ) -> Result<Self, PatternError> {
        for &(a, b) in &adjacent {
            if a == 0 || b != a + 1 || b > pattern.size() {
                return Err(PatternError::BadAdjacency(a, b));
            }
        }
        Ok(Self::Adjacency { pattern, adjacent })
    }

    pub fn bruhat_restricted(
        pattern: Permutation,
        restrictions: Vec<(usize, usize)>,
    ) -> Result<Self, PatternError> {
        for &(a, b) in &restrictions {
            if a == 0 || a >= b || b > pattern.size() {
                return Err(PatternError::BadRestriction(a, b));
            }
        }
        Ok(Self::BruhatRestricted {
            pattern,
            restrictions,
        })
    }

    pub fn interval(lower: Permutation, upper: Permutation) -> Result<Self, PatternError> {
        if lower.size() != upper.size() || !crate::bruhat::bruhat_leq(&lower, &upper) {
            return Err(PatternError::EmptyInterval(
                lower.to_string(),
                upper.to_string(),
            ));
        }
        Ok(Self::Interval { lower, upper })
    }

    /// First witnessing occurrence in an ordinary permutation host.
    pub fn find_in(&self, host: &Permutation) -> Result<Option<Occurrence>, PatternError> {
        match self {
            Self::Classical(p) => Ok(first_occurrence(host, p)),
            Self::Adjacency { pattern, adjacent } => {
                let mut glued = vec![false; pattern.size()];
                for &(a, _) in adjacent {
                    glued[a] = true;
                }
                let h = as_i64(host);
                let m = Matcher::new(&h, &as_i64(pattern), glued, false);
                Ok(collect(&m, Some(1)).pop())
            }
            Self::BruhatRestricted {
                pattern,
                restrictions,
            } => {
                let wanted: Vec<i64> = restrictions
                    .iter()
                    .map(|&(a, b)| swap_length_delta(pattern, a, b))
                    .collect();
                let h = as_i64(host);
                let m = Matcher::new(&h, &as_i64(pattern), vec![false; pattern.size()], false);
                let mut found = None;
                m.run(&mut |pos| {
                    let ok = restrictions.iter().zip(&wanted).all(|(&(a, b), &d)| {
                        swap_length_delta(host, pos[a - 1] + 1, pos[b - 1] + 1) == d
                    });
                    if ok {
                        found = Some(Occurrence {
                            positions: pos.iter().map(|p| p + 1).collect(),
                        });
                    }
                    !ok
                });
                Ok(found)
            }
            Self::Interval { .. } => Err(PatternError::WrongHost("interval")),
            Self::Signed(_) => Err(PatternError::WrongHost("signed")),
        }
    }

    pub fn is_contained_in(&self, host: &Permutation) -> Result<bool, PatternError> {
        Ok(self.find_in(host)?.is_some())
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Classical(p) => write!(f, "{p}"),
            Self::Adjacency { pattern, adjacent } => {
                let e = pattern.to_vec();
                let in_pair = |k: usize| adjacent.iter().any(|&(a, b)| k == a || k == b);
                let mut k = 1;
                while k <= e.len() {
                    if in_pair(k) {
                        f.write_str("_")?;
                        write!(f, "{}", e[k - 1])?;
                        while adjacent.iter().any(|&(a, _)| a == k) {
                            k += 1;
                            write!(f, "{}", e[k - 1])?;
                        }
                        f.write_str("_")?;
                    } else {
                        write!(f, "{}", e[k - 1])?;
                    }
                    k += 1;
                }
                Ok(())
            }
            Self::BruhatRestricted {
                pattern,
                restrictions,
            } => {
                let r: Vec<String> = restrictions
                    .iter()
                    .map(|(a, b)| format!("t{a}{b}"))
                    .collect();
                write!(f, "{pattern}!{}", r.join(","))
            }
            Self::Interval { lower, upper } => write!(f, "[{lower},{upper}]"),
            Self::Signed(s) => write!(f, "{s}"),
        }
    }
}

impl FromStr for PatternSpec {
    type Err = PatternError;

    /// `3412`, `3_41_2`, `35142!t15,t23`, `[3142,3412]` or `(-2,-1)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let syntax = || PatternError::Syntax(s.to_string());
        if s.starts_with('(') {
            return Ok(Self::Signed(s.parse()?));
        }
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (a, b) = inner.split_once(',').ok_or_else(syntax)?;
            return Self::interval(a.trim().parse()?, b.trim().parse()?);
        }
        if let Some((p, r)) = s.split_once('!') {
            let pattern: Permutation = p.parse()?;
            let mut restrictions = Vec::new();
            for t in r.split(',') {
                let digits = t.trim().strip_prefix('t').ok_or_else(syntax)?;
                let d: Vec<usize> = digits
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize))
                    .collect::<Option<_>>()
                    .ok_or_else(syntax)?;
                if d.len() != 2 {
                    return Err(syntax());
                }
                restrictions.push((d[0], d[1]));
            }
            return Self::bruhat_restricted(pattern, restrictions);
        }
        if s.contains('_') {
            let mut values = Vec::new();
            let mut adjacent = Vec::new();
            for (g, group) in s.split('_').enumerate() {
                for (k, c) in group.chars().enumerate() {
                    let v = c.to_digit(10).ok_or_else(syntax)? as i64;
                    values.push(v);
                    if g % 2 == 1 && k > 0 {
                        adjacent.push((values.len() - 1, values.len()));
                    }
                }
            }
            return Self::adjacency(Permutation::new(values)?, adjacent);
        }
        Ok(Self::Classical(s.parse()?))
    }
}

/// Adjacency containment; see [`PatternSpec::Adjacency`].
pub fn contains_adjacency(host: &Permutation, spec: &PatternSpec) -> Result<bool, PatternError> {
    match spec {
        PatternSpec::Adjacency { .. } => spec.is_contained_in(host),
        _ => Err(PatternError::WrongHost("non-adjacency")),
    }
}

/// Bruhat-restricted containment; see [`PatternSpec::BruhatRestricted`].
pub fn contains_bruhat_restricted(
    host: &Permutation,
    spec: &PatternSpec,
) -> Result<bool, PatternError> {
    match spec {
        PatternSpec::BruhatRestricted { .. } => spec.is_contained_in(host),
        _ => Err(PatternError::WrongHost("non-restricted")),
    }
}

/// Looks for positions where `[u, v]` embeds into `[x, y]`: `x` and `y`
/// restrict to `u` and `v` there, agree elsewhere, and the length gaps
/// agree.
///
/// ```
/// use schubert::{patterns::interval_embeds, Permutation};
/// let p = |s: &str| s.parse::<Permutation>().unwrap();
/// let occ = interval_embeds(&p("2143"), &p("4231"), &p("2143"), &p("4231")).unwrap();
/// assert_eq!(occ.unwrap().positions, vec![1, 2, 3, 4]);
/// ```
pub fn interval_embeds(
    u: &Permutation,
    v: &Permutation,
    x: &Permutation,
    y: &Permutation,
) -> Result<Option<Occurrence>, PatternError> {
    use crate::bruhat::bruhat_leq;
    if u.size() != v.size() || !bruhat_leq(u, v) {
        return Err(PatternError::EmptyInterval(u.to_string(), v.to_string()));
    }
    if x.size() != y.size() || !bruhat_leq(x, y) {
        return Err(PatternError::EmptyInterval(x.to_string(), y.to_string()));
    }
    if u.size() > x.size() {
        return Ok(None);
    }
    if v.length() as i64 - u.length() as i64 != y.length() as i64 - x.length() as i64 {
        return Ok(None);
    }
    let differ: Vec<usize> = (1..=x.size())
        .filter(|&i| x.value(i) != y.value(i))
        .collect();
    let found = occurrences_classical(x, u, None).into_iter().find(|o| {
        differ.iter().all(|d| o.positions.binary_search(d).is_ok())
            && flatten_at(y, &o.positions) == *v
    });
    Ok(found)
}

/// Signed containment: signs must agree entrywise and absolute values must
/// flatten to the pattern's absolute values.
///
/// ```
/// use schubert::{patterns::signed_contains, SignedPermutation};
/// let s = |t: &str| t.parse::<SignedPermutation>().unwrap();
/// assert!(signed_contains(&s("(-2,-1)"), &s("(-2,-1)")));
/// assert!(!signed_contains(&s("(-1,-2)"), &s("(-2,-1)")));
/// ```
pub fn signed_contains(host: &SignedPermutation, pattern: &SignedPermutation) -> bool {
    signed_first_occurrence(host, pattern).is_some()
}

pub fn signed_first_occurrence(
    host: &SignedPermutation,
    pattern: &SignedPermutation,
) -> Option<Occurrence> {
    let h: Vec<i64> = host.entries().iter().map(|&v| v as i64).collect();
    let p: Vec<i64> = pattern.entries().iter().map(|&v| v as i64).collect();
    let m = Matcher::new(&h, &p, vec![false; p.len()], true);
    collect(&m, Some(1)).pop()
}

/// Parses a whitespace-separated list of permutations.
pub fn pattern_list(text: &str) -> Vec<Permutation> {
    text.split_whitespace()
        .map(|t| t.parse().expect("built-in pattern list"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn classical() {
        assert!(occurrences_classical(&p("612543"), &p("4231"), None).is_empty());
        assert!(occurrences_classical(&p("612543"), &p("3412"), None).is_empty());
        let w = p("35142");
        assert_eq!(
            occurrences_classical(&w, &w, None),
            vec![Occurrence {
                positions: vec![1, 2, 3, 4, 5]
            }]
        );
        assert_eq!(
            occurrences_classical(&p("4321"), &p("21"), Some(2)).len(),
            2
        );
        assert_eq!(occurrences_classical(&p("4321"), &p("21"), None).len(), 6);
        assert!(occurrences_classical(&p("12"), &p("123"), None).is_empty());
    }

    #[test]
    fn adjacency() {
        let spec: PatternSpec = "3_41_2".parse().unwrap();
        assert_eq!(
            spec,
            PatternSpec::Adjacency {
                pattern: p("3412"),
                adjacent: vec![(2, 3)]
            }
        );
        assert_eq!(spec.to_string(), "3_41_2");
        assert!(contains_adjacency(&p("3412"), &spec).unwrap());
        assert!(contains_adjacency(&p("35142"), &spec).unwrap());
        // 3 5 1 2 at positions 1, 3, 4, 5 has the 5 and 1 side by side.
        assert!(contains_adjacency(&p("34512"), &spec).unwrap());
        assert!(!contains_adjacency(&p("351624"), &"4_23_1".parse().unwrap()).unwrap());
        assert!(PatternSpec::adjacency(p("3412"), vec![(1, 3)]).is_err());
    }

    #[test]
    fn bruhat_restricted() {
        let spec: PatternSpec = "35142!t15,t23".parse().unwrap();
        assert_eq!(spec.to_string(), "35142!t15,t23");
        assert!(contains_bruhat_restricted(&p("35142"), &spec).unwrap());
        assert!(!contains_bruhat_restricted(&p("12345"), &spec).unwrap());
        assert!(PatternSpec::bruhat_restricted(p("3412"), vec![(3, 2)]).is_err());
        assert!(matches!(
            "35142!t1".parse::<PatternSpec>(),
            Err(PatternError::Syntax(_))
        ));
    }

    #[test]
    fn length_deltas() {
        let w = p("3412");
        for i in 1..=4 {
            for j in i + 1..=4 {
                let d = w.swap_positions(i, j).length() as i64 - w.length() as i64;
                assert_eq!(swap_length_delta(&w, i, j), d);
            }
        }
    }

    #[test]
    fn intervals() {
        let spec: PatternSpec = "[3142,3412]".parse().unwrap();
        assert_eq!(spec.to_string(), "[3142,3412]");
        assert!("[3412,3142]".parse::<PatternSpec>().is_err());
        let hit = interval_embeds(&p("3142"), &p("3412"), &p("3142"), &p("3412")).unwrap();
        assert_eq!(hit.unwrap().positions, vec![1, 2, 3, 4]);
        // Same restriction pattern but the outer length gap is 3, not 1.
        let miss = interval_embeds(&p("3142"), &p("3412"), &p("31524"), &p("35412")).unwrap();
        assert!(miss.is_none());
    }

    #[test]
    fn signed() {
        let s = |t: &str| t.parse::<SignedPermutation>().unwrap();
        assert!(signed_contains(&s("(3,-2,1)"), &s("(3,-2,1)")));
        assert!(signed_contains(&s("(1,-3,-2)"), &s("(-2,-1)")));
        assert!(!signed_contains(&s("(1,2,3)"), &s("(-2,-1)")));
        assert!(matches!(
            "(-2,-1)".parse::<PatternSpec>().unwrap(),
            PatternSpec::Signed(_)
        ));
    }

    use crate::strategy::permutation;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn occurrences_flatten_to_the_pattern(host in permutation(1..=9), pat in permutation(1..=4)) {
            for occ in occurrences_classical(&host, &pat, Some(20)) {
                prop_assert!(occ.positions.windows(2).all(|w| w[0] < w[1]));
                prop_assert_eq!(flatten_at(&host, &occ.positions), pat.clone());
            }
        }

        #[test]
        fn avoidance_is_monotone(host in permutation(1..=8), mask in any::<u8>()) {
            let p = pattern_list("3412 4231");
            for q in &p {
                let pos: Vec<usize> = (1..=host.size()).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                let sub = flatten_at(&host, &pos);
                if contains(&sub, q) {
                    prop_assert!(contains(&host, q));
                }
            }
        }

        #[test]
        fn restricted_and_adjacent_imply_classical(host in permutation(4..=8)) {
            let adj: PatternSpec = "3_41_2".parse().unwrap();
            let res: PatternSpec = "35142!t15,t23".parse().unwrap();
            if adj.is_contained_in(&host).unwrap() {
                prop_assert!(contains(&host, &"3412".parse().unwrap()));
            }
            if res.is_contained_in(&host).unwrap() {
                prop_assert!(contains(&host, &"35142".parse().unwrap()));
            }
        }
    }
}
