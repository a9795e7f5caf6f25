//! Geometric properties of `X_w` read off from `w`.
//!
//! Almost every checker here is a pattern-avoidance test against a fixed
//! list. The lists are kept verbatim as text so they can be audited.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::bruhat::{cover_transpositions, singular_locus_in, BruhatError, BruhatInterval};
use crate::patterns::{first_witness, pattern_list, Occurrence, PatternSpec};
use crate::perm::Permutation;

pub const SMOOTH_PATTERNS: &str = "3412 4231";
pub const INCLUSION_PATTERNS: &str = "4231 35142 42513 351624";
pub const LCI_PATTERNS: &str = "53241 52341 52431 35142 42513 426153";
pub const HEXAGON_PATTERNS: &str = "321 56781234 56718234 46781235 46718235";
pub const BOOLEAN_PATTERNS: &str = "321 3412";
pub const VEXILLARY_PATTERNS: &str = "2143";

/// Restricted patterns for the first Gorenstein condition. A `w0` twist of
/// these (`31542!t15,t23` and `24153!t15,t34`) appears in some sources.
pub const GORENSTEIN_PATTERNS: [&str; 2] = ["35142!t15,t23", "42513!t15,t34"];

/// Patterns whose avoidance, together with a one-component singular
/// locus, characterizes `P_{id,w}(1) = 2`.
pub const KL_TWO_SIX: &str = "653421 632541 463152 526413 546213 465132";

pub const TWO_VEXILLARY_PATTERNS: &str = "
    32154 21543 214365 241365 314265 312645 214635 241635 231564 215364
    315264 426153 5271436 5173264 4265173 2547163 5472163 5276143
    61832547 26481537 64821537 26581437 65821437 51736284 51763284 61837254
    61873254 25476183 54726183 54762183 26487153 64872153 26587143 65827143
    65872143";

pub const KL_TWO_PATTERNS: &str = "
    45123 34512 53412 52341 45231
    351624 523614 526314 624153 524613
    462513 526413 546213 361452 461352
    364152 463152 536142 465132 426351
    632541 635241 642531 653421
    3612745 6231745 6241735 3416725
    4236715 4263715 4267315 3712564
    7231564 3715264 3751264 7523164
    6251734 7261453 3417562 3517462
    4517362 4237561 5347261 4275631
    34127856 42317856 34172856
    42371856 42731856 35127846
    52317846 52417836 34128675
    42318675 34182675 42381675
    42831675 34186275 42386175
    42863175 35128674 52318674
    36128574 62318574 52418673
    62518473";

fn cached(cell: &'static OnceLock<Vec<Permutation>>, text: &str) -> &'static [Permutation] {
    cell.get_or_init(|| pattern_list(text))
}

macro_rules! list_fn {
    ($name:ident, $text:expr) => {
        pub fn $name() -> &'static [Permutation] {
            static CELL: OnceLock<Vec<Permutation>> = OnceLock::new();
            cached(&CELL, $text)
        }
    };
}

list_fn!(smooth_patterns, SMOOTH_PATTERNS);
list_fn!(inclusion_patterns, INCLUSION_PATTERNS);
list_fn!(lci_patterns, LCI_PATTERNS);
list_fn!(hexagon_patterns, HEXAGON_PATTERNS);
list_fn!(boolean_patterns, BOOLEAN_PATTERNS);
list_fn!(vexillary_patterns, VEXILLARY_PATTERNS);
list_fn!(two_vexillary_patterns, TWO_VEXILLARY_PATTERNS);
list_fn!(kl_two_patterns, KL_TWO_PATTERNS);
list_fn!(kl_two_six, KL_TWO_SIX);

fn factorial_specs() -> &'static [PatternSpec] {
    static CELL: OnceLock<Vec<PatternSpec>> = OnceLock::new();
    CELL.get_or_init(|| {
        ["4231", "3_41_2"]
            .iter()
            .map(|s| s.parse().expect("built-in pattern"))
            .collect()
    })
}

fn gorenstein_specs() -> &'static [PatternSpec] {
    static CELL: OnceLock<Vec<PatternSpec>> = OnceLock::new();
    CELL.get_or_init(|| {
        GORENSTEIN_PATTERNS
            .iter()
            .map(|s| s.parse().expect("built-in pattern"))
            .collect()
    })
}

/// A violated pattern and where it sits in the host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub pattern: String,
    pub positions: Vec<usize>,
}

impl Witness {
    fn new(pattern: impl ToString, occ: Occurrence) -> Self {
        Self {
            pattern: pattern.to_string(),
            positions: occ.positions,
        }
    }
}

fn list_witness(w: &Permutation, list: &[Permutation]) -> Option<Witness> {
    first_witness(w, list).map(|(p, o)| Witness::new(p, o))
}

fn spec_witness(w: &Permutation, specs: &[PatternSpec]) -> Option<Witness> {
    specs.iter().find_map(|s| {
        s.find_in(w)
            .expect("built-in specs match permutations")
            .map(|o| Witness::new(s, o))
    })
}

pub fn smooth_witness(w: &Permutation) -> Option<Witness> {
    list_witness(w, smooth_patterns())
}

/// Avoids 3412 and 4231.
pub fn is_smooth(w: &Permutation) -> bool {
    smooth_witness(w).is_none()
}

pub fn factorial_witness(w: &Permutation) -> Option<Witness> {
    spec_witness(w, factorial_specs())
}

/// Avoids 4231, and 3412 wherever its 4 and 1 are adjacent.
pub fn is_factorial(w: &Permutation) -> bool {
    factorial_witness(w).is_none()
}

pub fn gorenstein_pattern_witness(w: &Permutation) -> Option<Witness> {
    spec_witness(w, gorenstein_specs())
}

/// Whether the Monk-formula system for the anticanonical class has an
/// integral solution: unknowns `a_1, ..., a_{n-1}` with
/// `a_i + ... + a_{j-1} = 1` for every cover `w·t_ij ⋖ w`.
///
/// Writing the sums as differences of prefix sums turns each equation into
/// `S_{j-1} - S_{i-1} = 1`, which a union-find with offsets decides.
pub fn monk_system_consistent(w: &Permutation) -> bool {
    let n = w.size();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut offset = vec![0i64; n];

    fn find(parent: &mut [usize], offset: &mut [i64], x: usize) -> (usize, i64) {
        if parent[x] == x {
            return (x, 0);
        }
        let (root, o) = find(parent, offset, parent[x]);
        parent[x] = root;
        offset[x] += o;
        (root, offset[x])
    }

    for (i, j) in cover_transpositions(w) {
        let (x, y) = (i - 1, j - 1);
        let (rx, ox) = find(&mut parent, &mut offset, x);
        let (ry, oy) = find(&mut parent, &mut offset, y);
        if rx == ry {
            if oy - ox != 1 {
                return false;
            }
        } else {
            parent[ry] = rx;
            offset[ry] = ox + 1 - oy;
        }
    }
    true
}

/// Avoids the two Bruhat-restricted patterns and passes the Monk-system
/// test.
///
/// ```
/// use schubert::{properties::is_gorenstein, Permutation};
/// let p = |s: &str| s.parse::<Permutation>().unwrap();
/// assert!(!is_gorenstein(&p("35142")));
/// assert!(!is_gorenstein(&p("52431")));
/// assert!(is_gorenstein(&p("4231")));
/// ```
pub fn is_gorenstein(w: &Permutation) -> bool {
    gorenstein_pattern_witness(w).is_none() && monk_system_consistent(w)
}

/// Partition of the Grassmannian permutation obtained by sorting
/// `w(1..d)` and `w(d+1..n)`, with zero parts dropped.
///
/// ```
/// use schubert::{properties::grassmannian_partition, Permutation};
/// let w: Permutation = "25134".parse().unwrap();
/// assert_eq!(grassmannian_partition(&w, 2), vec![3, 1]);
/// ```
pub fn grassmannian_partition(w: &Permutation, d: usize) -> Vec<usize> {
    let mut top: Vec<usize> = (1..=d).map(|i| w.value(i)).collect();
    top.sort_unstable();
    (1..=d)
        .map(|i| top[d - i] - (d + 1 - i))
        .filter(|&p| p > 0)
        .collect()
}

/// Removable corners `(row, column)` of a partition, 1-based.
pub fn inner_corners(parts: &[usize]) -> Vec<(usize, usize)> {
    (0..parts.len())
        .filter(|&r| parts[r] > parts.get(r + 1).copied().unwrap_or(0))
        .map(|r| (r + 1, parts[r]))
        .collect()
}

pub fn corners_on_one_antidiagonal(parts: &[usize]) -> bool {
    let corners = inner_corners(parts);
    corners
        .windows(2)
        .all(|c| c[0].0 + c[0].1 == c[1].0 + c[1].1)
}

/// The corner rule applied at every descent. It agrees with
/// [`monk_system_consistent`] when `w` is decreasing on `1..d` and on
/// `d+1..n` for some `d`, but not in general: 52431 passes it while
/// failing the Monk test.
pub fn descent_corners_aligned(w: &Permutation) -> bool {
    w.descents()
        .into_iter()
        .all(|d| corners_on_one_antidiagonal(&grassmannian_partition(w, d)))
}

pub fn inclusions_witness(w: &Permutation) -> Option<Witness> {
    list_witness(w, inclusion_patterns())
}

/// Avoids 4231, 35142, 42513 and 351624.
pub fn is_defined_by_inclusions(w: &Permutation) -> bool {
    inclusions_witness(w).is_none()
}

pub fn lci_witness(w: &Permutation) -> Option<Witness> {
    list_witness(w, lci_patterns())
}

pub fn is_lci(w: &Permutation) -> bool {
    lci_witness(w).is_none()
}

pub fn hexagon_witness(w: &Permutation) -> Option<Witness> {
    list_witness(w, hexagon_patterns())
}

/// 321-hexagon avoidance: the Deodhar elements of `S_n`.
pub fn is_321_hexagon_avoiding(w: &Permutation) -> bool {
    hexagon_witness(w).is_none()
}

pub fn boolean_witness(w: &Permutation) -> Option<Witness> {
    list_witness(w, boolean_patterns())
}

/// `[id, w]` is a Boolean lattice.
pub fn is_boolean(w: &Permutation) -> bool {
    boolean_witness(w).is_none()
}

pub fn vexillary_witness(w: &Permutation) -> Option<Witness> {
    list_witness(w, vexillary_patterns())
}

pub fn is_vexillary(w: &Permutation) -> bool {
    vexillary_witness(w).is_none()
}

pub fn two_vexillary_witness(w: &Permutation) -> Option<Witness> {
    list_witness(w, two_vexillary_patterns())
}

pub fn is_2_vexillary(w: &Permutation) -> bool {
    two_vexillary_witness(w).is_none()
}

pub fn kl_two_witness(w: &Permutation) -> Option<Witness> {
    list_witness(w, kl_two_patterns())
}

/// `P_{id,w}(1) <= 2`, decided by the pattern list.
///
/// ```
/// use schubert::{properties::kl_filtration_level_le2, Permutation};
/// let p = |s: &str| s.parse::<Permutation>().unwrap();
/// assert!(!kl_filtration_level_le2(&p("45123")));
/// assert!(kl_filtration_level_le2(&p("45312")));
/// ```
pub fn kl_filtration_level_le2(w: &Permutation) -> bool {
    kl_two_witness(w).is_none()
}

/// `P_{id,w}(1) = 2` via the six-pattern criterion: none of the six
/// patterns occur and the singular locus has one component.
pub fn kl_at_one_is_two_by_locus(w: &Permutation, locus_size: usize) -> bool {
    locus_size == 1 && first_witness(w, kl_two_six()).is_none()
}

/// Flags and witnesses for one permutation.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub subject: Permutation,
    pub flags: BTreeMap<&'static str, bool>,
    pub witnesses: BTreeMap<&'static str, Option<Witness>>,
    /// Exponents `e_i` with `P_w = Π [e_i + 1]_t`, when such exist.
    pub q_integer_exponents: Option<Vec<usize>>,
    pub singular_locus_size: usize,
}

impl PropertyReport {
    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags.get(name).copied()
    }

    pub fn witness(&self, name: &str) -> Option<&Witness> {
        self.witnesses.get(name).and_then(|w| w.as_ref())
    }
}

/// Runs every checker on `w`.
///
/// ```
/// use schubert::{properties::classify, Permutation};
/// let r = classify(&"4231".parse::<Permutation>().unwrap());
/// assert_eq!(r.flag("smooth"), Some(false));
/// assert_eq!(r.witness("smooth").unwrap().positions, vec![1, 2, 3, 4]);
/// ```
pub fn classify(w: &Permutation) -> PropertyReport {
    classify_with_budget(w, usize::MAX).expect("unbounded budget")
}

/// As [`classify`], refusing intervals `[id, w]` with more than `budget`
/// elements.
pub fn classify_with_budget(w: &Permutation, budget: usize) -> Result<PropertyReport, BruhatError> {
    let interval = BruhatInterval::below(w, budget)?;
    let poincare = interval.rank_generating_function();
    let locus_size = singular_locus_in(&interval).len();

    let pattern_checks: [(&'static str, Option<Witness>); 10] = [
        ("smooth", smooth_witness(w)),
        ("factorial", factorial_witness(w)),
        ("defined_by_inclusions", inclusions_witness(w)),
        ("lci", lci_witness(w)),
        ("hexagon_avoiding", hexagon_witness(w)),
        ("boolean", boolean_witness(w)),
        ("vexillary", vexillary_witness(w)),
        ("two_vexillary", two_vexillary_witness(w)),
        ("kl_level_le2", kl_two_witness(w)),
        ("gorenstein", gorenstein_pattern_witness(w)),
    ];
    let mut flags = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for (name, witness) in pattern_checks {
        flags.insert(name, witness.is_none());
        witnesses.insert(name, witness);
    }
    if flags["gorenstein"] {
        flags.insert("gorenstein", monk_system_consistent(w));
    }
    flags.insert("palindromic", poincare.is_palindromic());
    Ok(PropertyReport {
        subject: w.clone(),
        flags,
        witnesses,
        q_integer_exponents: poincare.factor_q_integers(),
        singular_locus_size: locus_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn count(n: usize, f: fn(&Permutation) -> bool) -> usize {
        all_permutations(n).filter(f).count()
    }

    #[test]
    fn list_sizes() {
        assert_eq!(two_vexillary_patterns().len(), 35);
        assert_eq!(kl_two_six().len(), 6);
        assert_eq!(lci_patterns().len(), 6);
        assert_eq!(hexagon_patterns().len(), 5);
    }

    #[test]
    fn kl_two_list_has_no_redundant_entry() {
        let list = kl_two_patterns();
        for (i, a) in list.iter().enumerate() {
            for (j, b) in list.iter().enumerate() {
                if i != j {
                    assert!(!crate::patterns::contains(a, b), "{a} contains {b}");
                }
            }
        }
    }

    #[test]
    fn examples() {
        assert!(!is_smooth(&p("625431")));
        assert!(is_smooth(&p("612543")));
        assert!(!is_factorial(&p("3412")));
        assert!(!is_factorial(&p("34512")));
        assert!(!is_defined_by_inclusions(&p("4231")));
        assert!(!is_lci(&p("53241")));
        assert!(!is_321_hexagon_avoiding(&p("321")));
        assert!(is_321_hexagon_avoiding(&p("2143")));
        assert!(!is_321_hexagon_avoiding(&p("56781234")));
        assert!(is_boolean(&p("2143")));
        assert!(!is_vexillary(&p("2143")));
        assert!(is_2_vexillary(&p("2143")));
        assert!(!is_2_vexillary(&p("32154")));
    }

    #[test]
    fn gorenstein_counts() {
        let counts: Vec<usize> = (4..=6).map(|n| count(n, is_gorenstein)).collect();
        assert_eq!(counts, vec![24, 116, 636]);
        let bad: Vec<String> = all_permutations(5)
            .filter(|w| !is_gorenstein(w))
            .map(|w| w.to_string())
            .collect();
        assert_eq!(bad, ["35142", "42513", "52431", "53241"]);
    }

    #[test]
    fn restricted_patterns_never_reject_monk_solutions() {
        for n in 4..=6 {
            for w in all_permutations(n) {
                if monk_system_consistent(&w) {
                    assert!(gorenstein_pattern_witness(&w).is_none(), "{w}");
                }
            }
        }
    }

    #[test]
    fn corner_rule_on_grassmannian_pullbacks() {
        for n in 4..=7 {
            for w in all_permutations(n) {
                for d in 1..n {
                    let dec = |a: usize, b: usize| (a..b).all(|i| w.value(i) > w.value(i + 1));
                    if dec(1, d) && dec(d + 1, n) {
                        let lam = grassmannian_partition(&w, d);
                        assert_eq!(
                            corners_on_one_antidiagonal(&lam),
                            monk_system_consistent(&w),
                            "{w} {d}"
                        );
                    }
                }
            }
        }
        assert!(descent_corners_aligned(&p("52431")));
        assert!(!monk_system_consistent(&p("52431")));
    }

    #[test]
    fn factorial_and_boolean_counts() {
        let f: Vec<usize> = (1..=7).map(|n| count(n, is_factorial)).collect();
        assert_eq!(f, vec![1, 2, 6, 22, 89, 379, 1661]);
        let b: Vec<usize> = (1..=7).map(|n| count(n, is_boolean)).collect();
        assert_eq!(b, vec![1, 2, 5, 13, 34, 89, 233]);
    }

    #[test]
    fn classify_reports() {
        let r = classify(&Permutation::identity(4));
        assert!(r.flags.values().all(|&b| b));
        assert_eq!(r.singular_locus_size, 0);
        let r = classify(&p("625431"));
        assert_eq!(r.flag("smooth"), Some(false));
        let wit = r.witness("smooth").unwrap();
        assert_eq!(wit.pattern, "4231");
        assert_eq!(wit.positions, vec![1, 2, 3, 6]);
        let r = classify(&p("4231"));
        assert_eq!(r.q_integer_exponents, None);
        assert_eq!(r.singular_locus_size, 1);
    }

    #[test]
    fn json_shape() {
        let r = classify(&p("3412"));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["subject"], "3412");
        assert_eq!(v["flags"]["smooth"], false);
        assert_eq!(
            v["witnesses"]["smooth"]["positions"],
            serde_json::json!([1, 2, 3, 4])
        );
        assert!(v["witnesses"]["vexillary"].is_null());
    }

    use crate::strategy::permutation;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn implication_chain(w in permutation(1..=9)) {
            if is_smooth(&w) {
                prop_assert!(is_factorial(&w) && is_lci(&w) && is_defined_by_inclusions(&w));
                prop_assert!(kl_filtration_level_le2(&w));
            }
            if is_factorial(&w) || is_lci(&w) {
                prop_assert!(is_gorenstein(&w));
            }
            if is_boolean(&w) {
                prop_assert!(is_321_hexagon_avoiding(&w) && is_smooth(&w));
            }
            if is_vexillary(&w) {
                prop_assert!(is_2_vexillary(&w));
            }
        }
    }
}
