//! The acceptance suite: twelve end-to-end checks of the library against
//! closed forms, published tables and independent characterisations.
//!
//! Each criterion returns a short summary on success or the first
//! counterexample on failure. The suite is deterministic; the sampled
//! checks use a fixed seed.

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrangements::{lewis_morales_check, region_distance_gf, regions};
use crate::bruhat::{
    bruhat_graph, bruhat_leq, poincare, singular_locus, singular_locus_by_patterns,
};
use crate::coxeter::{
    canonical_form, flatten_positions, right_descents, CoxeterGraph, CoxeterSystem, EdgeLabel,
};
use crate::enumerate::{count, fibonacci, Property};
use crate::group::{CoxeterGroup, SymmetricGroup};
use crate::hecke::{deodhar_identity_holds, mask_defect_table};
use crate::kl::{full_symmetric, KazhdanLusztig};
use crate::patterns::{contains, pattern_list};
use crate::perm::{all_permutations, flatten_at};
use crate::properties as props;
use crate::series::{gf_series, Which};
use crate::{IntPolynomial, Permutation, SignedPermutation};

/// `Ok(summary)` or `Err(first counterexample)`.
pub type Outcome = Result<String, String>;

fn p(s: &str) -> Permutation {
    s.parse().expect("valid permutation")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn counts_against(property: Property, expected: &[u64], which: Option<Which>) -> Outcome {
    let series = which.map(|w| gf_series(w, expected.len()).expect("series"));
    for (k, &want) in expected.iter().enumerate() {
        let n = k + 1;
        let got = count(property, n).map_err(|e| e.to_string())?;
        ensure(got == want, || {
            format!("n = {n}: counted {got}, expected {want}")
        })?;
        if let Some(s) = &series {
            ensure(s[n] == BigInt::from(got), || {
                format!("n = {n}: series gives {}, counted {got}", s[n])
            })?;
        }
    }
    Ok(format!("n = 1..{}", expected.len()))
}

fn smooth_counts() -> Outcome {
    counts_against(
        Property::Smooth,
        &[1, 2, 6, 22, 88, 366, 1552, 6652],
        Some(Which::Smooth),
    )
}

fn factorial_counts() -> Outcome {
    counts_against(
        Property::Factorial,
        &[1, 2, 6, 22, 89, 379, 1661, 7405],
        Some(Which::Factorial),
    )
}

fn boolean_counts() -> Outcome {
    let expected: Vec<u64> = (1..=8)
        .map(|n| u64::try_from(fibonacci(2 * n - 1)).expect("small"))
        .collect();
    counts_against(Property::Boolean, &expected, None)
}

fn s5_table() -> Outcome {
    let q_plus_one = "14523 15342 24513 25341 34125 34152 35124 35142 35241 35412 41523 42315 \
        42351 42513 42531 43512 45132 45213 51342 52314 52413 52431 53142 53241 53421 54231";
    let mut expected: Vec<(Permutation, IntPolynomial)> = Vec::new();
    for w in pattern_list(q_plus_one) {
        expected.push((w, IntPolynomial::new([1, 1])));
    }
    for w in pattern_list("34512 45123 45231 53412") {
        expected.push((w, IntPolynomial::new([1, 2])));
    }
    expected.push((p("52341"), IntPolynomial::new([1, 2, 1])));
    expected.push((p("45312"), IntPolynomial::new([1, 0, 1])));
    ensure(expected.len() == 32, || "table transcription".into())?;
    let kl = full_symmetric(5);
    let e = Permutation::identity(5);
    let mut nontrivial = 0;
    for w in all_permutations(5) {
        let got = kl.polynomial(&e, &w).ok_or("missing polynomial")?;
        let want = expected
            .iter()
            .find(|(v, _)| *v == w)
            .map(|(_, q)| q.clone())
            .unwrap_or_else(IntPolynomial::one);
        ensure(got == want, || {
            format!(
                "P(id, {w}) = {}, expected {}",
                got.display_with("q"),
                want.display_with("q")
            )
        })?;
        nontrivial += (got != IntPolynomial::one()) as usize;
    }
    Ok(format!("120 polynomials, {nontrivial} nontrivial"))
}

fn smoothness_equivalences() -> Outcome {
    let mut checked = 0;
    for n in 1..=6 {
        let kl = full_symmetric(n);
        let e = Permutation::identity(n);
        let transpositions: Vec<Permutation> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .map(|(i, j)| e.swap_positions(i, j))
            .collect();
        for w in all_permutations(n) {
            let l = w.length();
            let pw = poincare(&w);
            let graph = bruhat_graph(&w, usize::MAX).map_err(|e| e.to_string())?;
            let below = transpositions.iter().filter(|t| bruhat_leq(t, &w)).count();
            let flags = [
                props::is_smooth(&w),
                kl.polynomial(&e, &w) == Some(IntPolynomial::one()),
                pw.is_palindromic(),
                pw.factor_q_integers().is_some(),
                graph.is_regular_of_degree(l),
                below == l,
            ];
            ensure(flags.iter().all(|&f| f == flags[0]), || {
                format!("{w}: {flags:?}")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} permutations, six characterisations agree"
    ))
}

fn singular_loci() -> Outcome {
    ensure(singular_locus(&p("4231")) == vec![p("2143")], || {
        "Sing(4231)".into()
    })?;
    ensure(singular_locus(&p("3412")) == vec![p("1324")], || {
        "Sing(3412)".into()
    })?;
    let mut components = 0;
    for n in 1..=6 {
        for w in all_permutations(n) {
            let oracle = singular_locus(&w);
            let built = singular_locus_by_patterns(&w);
            ensure(oracle == built, || {
                format!("{w}: tangent spaces give {oracle:?}, patterns give {built:?}")
            })?;
            for v in &oracle {
                ensure(w.length() - v.length() >= 3, || {
                    format!("{w}: component {v} has small codimension")
                })?;
            }
            components += oracle.len();
        }
    }
    Ok(format!(
        "n <= 6, {components} components, all codimension >= 3"
    ))
}

/// Whether the mask-defect sums over `word` reproduce every `P_{v,w}`.
fn masks_reproduce(w: &Permutation, word: &[usize], kl: &KazhdanLusztig<SymmetricGroup>) -> bool {
    let group = SymmetricGroup::new(w.size());
    let table = mask_defect_table(&group, word).expect("reduced word");
    let column = kl.column(w).expect("in table");
    column.len() == table.len()
        && column
            .iter()
            .all(|(v, pv)| table.get(v).is_some_and(|m| m == pv))
}

fn deodhar_suite() -> Outcome {
    let mut hexagon = 0;
    for n in 1..=6 {
        let kl = full_symmetric(n);
        let group = SymmetricGroup::new(n);
        for w in all_permutations(n) {
            let avoids = props::is_321_hexagon_avoiding(&w);
            let identity = deodhar_identity_holds(&kl, &w);
            let canonical = group.reduced_word(&w);
            let masks = masks_reproduce(&w, &canonical, &kl);
            ensure(avoids == identity && identity == masks, || {
                format!("{w}: avoidance {avoids}, identity {identity}, masks {masks}")
            })?;
            if avoids {
                hexagon += 1;
                let others = w.reduced_words(usize::MAX).map_err(|e| e.to_string())?;
                let step = others.len().div_ceil(8);
                for word in others.into_iter().step_by(step) {
                    let word: Vec<usize> = word.iter().map(|s| s - 1).collect();
                    ensure(masks_reproduce(&w, &word, &kl), || {
                        format!("{w}: masks over {word:?} disagree")
                    })?;
                }
            }
        }
    }
    Ok(format!("n <= 6, {hexagon} hexagon-avoiding"))
}

fn arrangement_suite() -> Outcome {
    let mut checked = 0;
    for n in 1..=6 {
        for w in all_permutations(n) {
            let r = regions(&w, usize::MAX).map_err(|e| e.to_string())?.len();
            let interval = poincare(&w).at_one();
            let equal = BigInt::from(r) == interval;
            let avoids = props::is_defined_by_inclusions(&w);
            ensure(equal == avoids, || {
                format!("{w}: {r} regions, interval size {interval}, avoids {avoids}")
            })?;
            if n <= 5 {
                let rw = region_distance_gf(&w, usize::MAX).map_err(|e| e.to_string())?;
                ensure((rw == poincare(&w)) == props::is_smooth(&w), || {
                    format!("{w}: distance polynomial against smoothness")
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} permutations"))
}

fn lewis_morales() -> Outcome {
    for w in all_permutations(3) {
        let ok = lewis_morales_check(&w, &[2, 3, 5]).map_err(|e| e.to_string())?;
        ensure(ok, || format!("{w} fails"))?;
    }
    let excluded = pattern_list("1324 24153 31524 426153");
    let mut avoiders = 0;
    let mut failures = Vec::new();
    for w in all_permutations(4) {
        let ok = lewis_morales_check(&w, &[2]).map_err(|e| e.to_string())?;
        if excluded.iter().all(|pat| !contains(&w, pat)) {
            ensure(ok, || format!("avoider {w} fails at q = 2"))?;
            avoiders += 1;
        } else if !ok {
            failures.push(w.to_string());
        }
    }
    ensure(!failures.is_empty(), || {
        "no containing permutation fails".into()
    })?;
    Ok(format!(
        "S3 at q = 2,3,5; {avoiders} S4 avoiders at q = 2; fails for {}",
        failures.join(",")
    ))
}

fn implication_lattice() -> Outcome {
    let implications: [(&str, Check, Check); 7] = [
        ("smooth => factorial", props::is_smooth, props::is_factorial),
        (
            "factorial => gorenstein",
            props::is_factorial,
            props::is_gorenstein,
        ),
        ("smooth => lci", props::is_smooth, props::is_lci),
        ("lci => gorenstein", props::is_lci, props::is_gorenstein),
        (
            "smooth => inclusions",
            props::is_smooth,
            props::is_defined_by_inclusions,
        ),
        (
            "boolean => hexagon",
            props::is_boolean,
            props::is_321_hexagon_avoiding,
        ),
        (
            "smooth => kl level 2",
            props::is_smooth,
            props::kl_filtration_level_le2,
        ),
    ];
    for n in 1..=7 {
        for w in all_permutations(n) {
            for (name, a, b) in &implications {
                ensure(!a(&w) || b(&w), || format!("{name} fails at {w}"))?;
            }
        }
    }
    let mut level_two = 0;
    for n in 1..=6 {
        let kl = full_symmetric(n);
        let e = Permutation::identity(n);
        for w in all_permutations(n) {
            let at_one = kl.polynomial(&e, &w).ok_or("missing polynomial")?.at_one();
            let fast = props::kl_filtration_level_le2(&w);
            ensure((at_one <= BigInt::from(2)) == fast, || {
                format!("{w}: P(1) = {at_one}, list says {fast}")
            })?;
            let by_locus = props::kl_at_one_is_two_by_locus(&w, singular_locus(&w).len());
            ensure((at_one == BigInt::from(2)) == by_locus, || {
                format!("{w}: P(1) = {at_one}, six-pattern criterion says {by_locus}")
            })?;
            level_two += (at_one == BigInt::from(2)) as usize;
        }
    }
    Ok(format!(
        "n <= 7; fast path and locus criterion agree, {level_two} with P(1) = 2"
    ))
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

fn billey_braden(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let kl6 = full_symmetric(6);
    let all: Vec<Permutation> = all_permutations(6).collect();
    let mut sampled = 0;
    while sampled < 1000 {
        // x is drawn from the coset of w: same values outside the chosen positions
        let w = &all[rng.gen_range(0..all.len())];
        let mask = rng.gen_range(1u32..64);
        let positions: Vec<usize> = (1..=6).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        let mut values: Vec<usize> = positions.iter().map(|&i| w.value(i)).collect();
        for k in (1..values.len()).rev() {
            values.swap(k, rng.gen_range(0..=k));
        }
        let mut entries = w.to_vec();
        for (&i, &v) in positions.iter().zip(&values) {
            entries[i - 1] = v;
        }
        let x = &Permutation::new(entries.into_iter().map(|v| v as i64)).expect("shuffle");
        if !bruhat_leq(x, w) || x == w {
            continue;
        }
        let (fx, fw) = (
            flatten_positions(x, &positions).map_err(|e| e.to_string())?,
            flatten_positions(w, &positions).map_err(|e| e.to_string())?,
        );
        let small = full_symmetric(positions.len());
        let lhs = kl6.polynomial(x, w).ok_or("x below w")?.at_one();
        let rhs = small
            .polynomial(&fx, &fw)
            .map(|q| q.at_one())
            .unwrap_or_default();
        ensure(lhs >= rhs, || {
            format!("x = {x}, w = {w}, positions {positions:?}: {lhs} < {rhs}")
        })?;
        sampled += 1;
    }
    Ok(sampled)
}

fn coxeter_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let graphs = [
        ("A3", CoxeterGraph::type_a(3)),
        ("B3", CoxeterGraph::type_b(3)),
    ];
    for round in 0..10_000 {
        let (name, g) = &graphs[round % 2];
        let len = rng.gen_range(0..20);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..3)).collect();
        let base = canonical_form(&word, g).map_err(|e| e.to_string())?;
        let mut cur = word.clone();
        for _ in 0..4 {
            let moves = braid_moves(&cur, g);
            if moves.is_empty() {
                break;
            }
            cur = moves[rng.gen_range(0..moves.len())].clone();
            let moved = canonical_form(&cur, g).map_err(|e| e.to_string())?;
            ensure(moved.vector == base.vector, || {
                format!("{name}: {word:?} vs {cur:?}")
            })?;
        }
        let model_length = if *name == "A3" {
            let w: Vec<usize> = word.iter().map(|s| s + 1).collect();
            Permutation::from_word(4, &w).length()
        } else {
            SignedPermutation::from_word(3, &word).length()
        };
        ensure(base.length() == model_length, || {
            format!("{name}: length of {word:?}")
        })?;
    }

    for (name, g) in &graphs {
        let sys = CoxeterSystem::new(g.clone());
        for v in sys.elements(1000).map_err(|e| e.to_string())? {
            let w = canonical_form(&sys.reduced_word(&v), g).map_err(|e| e.to_string())?;
            let by_words: Vec<usize> = (0..3)
                .filter(|&s| {
                    let mut longer = w.word.clone();
                    longer.push(s);
                    canonical_form(&longer, g).expect("valid word").length() < w.length()
                })
                .collect();
            ensure(right_descents(&w) == by_words, || {
                format!("{name}: descents of {:?}", w.word)
            })?;
        }
    }

    let b3 = CoxeterSystem::new(CoxeterGraph::type_b(3));
    let elements = b3.elements(1000).map_err(|e| e.to_string())?;
    ensure(elements.len() == 48, || {
        format!("W(B3) has {} elements", elements.len())
    })?;
    let top = b3.product_of_word(&[0, 1, 0, 1, 2, 1, 0, 1, 2]);
    let kl = KazhdanLusztig::new(b3.clone(), &top, 1000).map_err(|e| e.to_string())?;
    ensure(kl.len() == 48, || "top of W(B3) is not longest".into())?;
    let e = b3.identity();
    let mut rationally_smooth = 0;
    for w in &elements {
        let palindromic = kl
            .rank_generating_function(w)
            .ok_or("missing")?
            .is_palindromic();
        let trivial = kl.polynomial(&e, w) == Some(IntPolynomial::one());
        ensure(palindromic == trivial, || format!("W(B3) element {w}"))?;
        rationally_smooth += trivial as usize;
    }

    for w in all_permutations(5) {
        for a in 1..=5 {
            for b in a..=5 {
                let positions: Vec<usize> = (a..=b).collect();
                let fl = flatten_positions(&w, &positions).map_err(|e| e.to_string())?;
                ensure(fl == flatten_at(&w, &positions), || {
                    format!("{w} on {positions:?}")
                })?;
            }
        }
    }

    let triples = billey_braden(&mut rng)?;
    Ok(format!(
        "10^4 braid words; descents in A3/B3; {rationally_smooth}/48 rationally smooth in B3; \
         S5 flattening; {triples} Billey-Braden triples"
    ))
}

fn vexillary_suite() -> Outcome {
    let mut vexillary = 0;
    for w in all_permutations(5).filter(props::is_vexillary) {
        let words = w.reduced_word_count();
        let tableaux = w.shape_of_diagram().syt_count();
        ensure(words == tableaux, || {
            format!("{w}: {words} reduced words, {tableaux} tableaux")
        })?;
        vexillary += 1;
    }
    let list = props::two_vexillary_patterns();
    let base = p("2143");
    ensure(list.len() == 35, || {
        format!("{} patterns listed", list.len())
    })?;
    for a in list {
        ensure(contains(a, &base), || format!("{a} avoids 2143"))?;
        for b in list {
            ensure(a == b || !contains(a, b), || format!("{a} contains {b}"))?;
        }
    }
    let mut failing = 0;
    for n in 1..=7 {
        for w in all_permutations(n) {
            match props::two_vexillary_witness(&w) {
                Some(wit) => {
                    let pat = p(&wit.pattern);
                    ensure(flatten_at(&w, &wit.positions) == pat, || {
                        format!(
                            "{w}: witness {} at {:?} is wrong",
                            wit.pattern, wit.positions
                        )
                    })?;
                    failing += 1;
                }
                None => ensure(list.iter().all(|pat| !contains(&w, pat)), || {
                    format!("{w} passes but contains a listed pattern")
                })?,
            }
            if props::is_vexillary(&w) {
                ensure(props::is_2_vexillary(&w), || format!("{w} vexillary only"))?;
            }
        }
    }
    Ok(format!(
        "{vexillary} vexillary in S5; {failing} witnessed failures for n <= 7"
    ))
}

/// A check's name and body.
pub type Criterion = (&'static str, fn() -> Outcome);

type Check = fn(&Permutation) -> bool;

pub const CRITERIA: [Criterion; 12] = [
    ("smooth counts", smooth_counts),
    ("factorial counts", factorial_counts),
    ("boolean counts", boolean_counts),
    ("S5 Kazhdan-Lusztig table", s5_table),
    ("smoothness characterisations", smoothness_equivalences),
    ("singular loci", singular_loci),
    ("hexagon-avoiding elements", deodhar_suite),
    ("inversion arrangements", arrangement_suite),
    ("matrix counts over F_q", lewis_morales),
    ("implications and KL level two", implication_lattice),
    ("Coxeter groups", coxeter_suite),
    ("vexillary and 2-vexillary", vexillary_suite),
];

/// The result of one criterion.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {:>2} {}: {} ({:.1}s)",
            self.id,
            self.name,
            self.detail,
            self.elapsed_ms as f64 / 1000.0
        )
    }
}

/// Runs criterion `id` (1-based). A panic counts as a failure.
pub fn run_one(id: usize) -> Option<CriterionResult> {
    let (name, check) = *CRITERIA.get(id.checked_sub(1)?)?;
    let start = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(CriterionResult {
        id,
        name,
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Runs every criterion in order.
pub fn run_all() -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).filter_map(run_one).collect()
}
