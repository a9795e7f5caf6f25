use std::fmt::{self, Write as _};
use std::process::ExitCode;

use anyhow::{Context, Result};
use serde::Serialize;

use schubert::acceptance::{run_one, CriterionResult, CRITERIA};
use schubert::arrangements::{
    lewis_morales_samples, matcount_fq, region_distance_gf, ArrangementError, InversionArrangement,
    LewisMoralesSample,
};
use schubert::bruhat::{
    bruhat_graph, bruhat_leq, singular_locus_by_patterns, singular_locus_in, BruhatError,
    BruhatInterval,
};
use schubert::coxeter::{
    bn_singular_witness, canonical_form, flatten_parabolic, flatten_positions, length_and_bruhat,
    right_descents, root_label, CoxeterError, CoxeterGraph, CoxeterSystem, Root, RootSubsystem,
    RootType,
};
use schubert::enumerate::{count, list, verify_counts, CountRow, EnumerateError};
use schubert::group::{CoxeterGroup, SymmetricGroup};
use schubert::kl::{kl_table, KazhdanLusztig, KlError};
use schubert::perm::PermError;
use schubert::poly::IntPolynomial;
use schubert::properties::{classify_with_budget, PropertyReport};
use schubert::series::{gf_series, SeriesError, Which};
use schubert::{Permutation, SignedPermutation};

use crate::output::{emit, join, yes_no, Format, Render};
use crate::{
    AnalyzeArgs, Command, CoxeterCmd, EnumerateCmd, FlattenArgs, GameArgs, GraphChoice,
    IntervalArgs, KlArgs, LocusArgs, MatcountArgs, SeriesArgs, VerifyArgs,
};

/// Input the library accepted syntactically but that makes no sense here.
#[derive(Debug)]
pub struct BadInput(pub String);

impl fmt::Display for BadInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for BadInput {}

fn bad(msg: impl Into<String>) -> anyhow::Error {
    BadInput(msg.into()).into()
}

/// 2 for bad input, 3 for a blown budget, 1 otherwise.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<BadInput>() || cause.is::<PermError>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<BruhatError>() {
            return if matches!(e, BruhatError::Budget(_)) {
                3
            } else {
                1
            };
        }
        if let Some(e) = cause.downcast_ref::<KlError>() {
            return match e {
                KlError::Budget(_) => 3,
                KlError::Foreign(_) => 2,
                _ => 1,
            };
        }
        if let Some(e) = cause.downcast_ref::<ArrangementError>() {
            return match e {
                ArrangementError::Budget(_) | ArrangementError::Scale { .. } => 3,
                _ => 2,
            };
        }
        if let Some(e) = cause.downcast_ref::<CoxeterError>() {
            return match e {
                CoxeterError::Budget(_) => 3,
                CoxeterError::NotAnInversionSet => 1,
                _ => 2,
            };
        }
        if let Some(e) = cause.downcast_ref::<EnumerateError>() {
            return if matches!(e, EnumerateError::TooLarge(..)) {
                3
            } else {
                2
            };
        }
        if let Some(e) = cause.downcast_ref::<SeriesError>() {
            return if matches!(e, SeriesError::TooLong(..)) {
                3
            } else {
                1
            };
        }
    }
    1
}

pub fn run(command: Command, format: Format, budget: usize) -> Result<ExitCode> {
    match command {
        Command::Analyze(args) => analyze(args, format, budget),
        Command::Enumerate(cmd) => enumerate(cmd, format),
        Command::Kl(args) => kl(args, format, budget),
        Command::Interval(args) => interval(args, format, budget),
        Command::Poincare { w } => poincare(w, format, budget),
        Command::Graph { w } => graph(w, format, budget),
        Command::Locus(args) => locus(args, format, budget),
        Command::Arrangement { w } => arrangement(w, format, budget),
        Command::Matcount(args) => matcount(args, format),
        Command::Coxeter(CoxeterCmd::Game(args)) => game(args, format, budget),
        Command::Coxeter(CoxeterCmd::Flatten(args)) => flatten(args, format),
        Command::Coxeter(CoxeterCmd::BnSmooth { w }) => bn_smooth(w, format),
        Command::Series(args) => series(args, format),
        Command::Verify(args) => verify(args, format),
    }
}

fn done(format: Format, value: &impl Render) -> Result<ExitCode> {
    emit(format, value)?;
    Ok(ExitCode::SUCCESS)
}

// analyze

#[derive(Serialize)]
struct Analysis {
    #[serde(flatten)]
    report: PropertyReport,
    length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    kl_identity: Option<IntPolynomial>,
    #[serde(skip_serializing_if = "Option::is_none")]
    singular_locus: Option<Vec<Permutation>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    poincare: Option<IntPolynomial>,
    #[serde(skip_serializing_if = "Option::is_none")]
    regions: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    region_distances: Option<IntPolynomial>,
}

impl Analysis {
    fn rows(&self) -> Vec<(String, String, String)> {
        let mut rows = Vec::new();
        for (name, &flag) in &self.report.flags {
            let witness = match self.report.witness(name) {
                Some(w) => format!("{} at {}", w.pattern, join(&w.positions, ",")),
                None => String::new(),
            };
            rows.push((name.to_string(), yes_no(flag).to_string(), witness));
        }
        let exps = match &self.report.q_integer_exponents {
            Some(e) => join(e, ","),
            None => "none".into(),
        };
        rows.push(("q_integer_exponents".into(), exps, String::new()));
        rows.push((
            "singular_components".into(),
            self.report.singular_locus_size.to_string(),
            String::new(),
        ));
        if let Some(p) = &self.kl_identity {
            rows.push(("kl_identity".into(), p.display_with("q"), String::new()));
        }
        if let Some(locus) = &self.singular_locus {
            rows.push(("singular_locus".into(), join(locus, " "), String::new()));
        }
        if let Some(p) = &self.poincare {
            rows.push(("poincare".into(), p.to_string(), String::new()));
        }
        if let Some(r) = self.regions {
            rows.push(("regions".into(), r.to_string(), String::new()));
        }
        if let Some(p) = &self.region_distances {
            rows.push(("region_distances".into(), p.to_string(), String::new()));
        }
        rows
    }
}

impl Render for Analysis {
    fn text(&self) -> String {
        let mut s = format!("w = {} (length {})\n", self.report.subject, self.length);
        for (name, value, witness) in self.rows() {
            let _ = writeln!(
                s,
                "{}",
                format!("{name:<22} {value:<4} {witness}").trim_end()
            );
        }
        s
    }

    fn tsv(&self) -> String {
        let mut s = String::from("property\tvalue\twitness\n");
        for (name, value, witness) in self.rows() {
            let _ = writeln!(s, "{name}\t{value}\t{witness}");
        }
        s
    }
}

fn analyze(args: AnalyzeArgs, format: Format, budget: usize) -> Result<ExitCode> {
    let w = &args.w;
    let report = classify_with_budget(w, budget)?;
    let kl_identity = if args.kl {
        let kl = KazhdanLusztig::new(SymmetricGroup::new(w.size()), w, budget)?;
        kl.polynomial(&Permutation::identity(w.size()), w)
    } else {
        None
    };
    let interval = if args.locus || args.poincare {
        Some(BruhatInterval::below(w, budget)?)
    } else {
        None
    };
    let singular_locus = args
        .locus
        .then(|| singular_locus_in(interval.as_ref().expect("built")));
    let poincare = args
        .poincare
        .then(|| interval.as_ref().expect("built").rank_generating_function());
    let (regions, region_distances) = if args.arrangement {
        let r = InversionArrangement::of(w).regions(budget)?;
        (Some(r.len()), Some(region_distance_gf(w, budget)?))
    } else {
        (None, None)
    };
    done(
        format,
        &Analysis {
            length: w.length(),
            report,
            kl_identity,
            singular_locus,
            poincare,
            regions,
            region_distances,
        },
    )
}

// enumerate

#[derive(Serialize)]
struct Counted {
    property: String,
    n: usize,
    count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected: Option<String>,
}

impl Render for Counted {
    fn text(&self) -> String {
        match &self.expected {
            Some(e) => format!("{} (expected {e})", self.count),
            None => self.count.to_string(),
        }
    }

    fn tsv(&self) -> String {
        format!(
            "n\tcount\texpected\n{}\t{}\t{}",
            self.n,
            self.count,
            self.expected.as_deref().unwrap_or("")
        )
    }
}

#[derive(Serialize)]
struct CountTable {
    property: String,
    rows: Vec<CountRow>,
    passed: bool,
}

impl Render for CountTable {
    fn text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let expected = r.expected.as_deref().unwrap_or("?");
            let mark = if r.passed { "ok" } else { "MISMATCH" };
            let _ = writeln!(
                s,
                "n = {:>2}  {:>10}  expected {:>10}  {mark}",
                r.n, r.actual, expected
            );
        }
        s
    }

    fn tsv(&self) -> String {
        let mut s = String::from("n\tcount\texpected\tpassed\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{}\t{}\t{}\t{}",
                r.n,
                r.actual,
                r.expected.as_deref().unwrap_or(""),
                r.passed
            );
        }
        s
    }
}

#[derive(Serialize)]
struct Listed {
    property: String,
    n: usize,
    elements: Vec<String>,
}

impl Render for Listed {
    fn text(&self) -> String {
        self.elements.join("\n")
    }
}

fn enumerate(cmd: EnumerateCmd, format: Format) -> Result<ExitCode> {
    match cmd {
        EnumerateCmd::Count {
            property,
            n,
            upto: false,
        } => done(
            format,
            &Counted {
                property: property.to_string(),
                n,
                count: count(property, n)?,
                expected: property.expected_count(n).map(|e| e.to_string()),
            },
        ),
        EnumerateCmd::Count {
            property,
            n,
            upto: true,
        } => {
            let report = verify_counts(property, n)?;
            let table = CountTable {
                property: property.to_string(),
                passed: report.passed,
                rows: report.rows,
            };
            emit(format, &table)?;
            Ok(if table.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        EnumerateCmd::List { property, n } => done(
            format,
            &Listed {
                property: property.to_string(),
                n,
                elements: list(property, n)?,
            },
        ),
    }
}

// kl

#[derive(Serialize)]
struct KlPair {
    x: Permutation,
    w: Permutation,
    below: bool,
    polynomial: IntPolynomial,
    mu: i64,
}

impl Render for KlPair {
    fn text(&self) -> String {
        format!(
            "P({}, {}) = {}\nmu = {}",
            self.x,
            self.w,
            self.polynomial.display_with("q"),
            self.mu
        )
    }

    fn tsv(&self) -> String {
        format!(
            "x\tw\tpolynomial\tmu\n{}\t{}\t{}\t{}",
            self.x,
            self.w,
            self.polynomial.display_with("q"),
            self.mu
        )
    }
}

#[derive(Serialize)]
struct KlColumn {
    w: Permutation,
    entries: Vec<KlEntry>,
}

#[derive(Serialize)]
struct KlEntry {
    x: Permutation,
    polynomial: IntPolynomial,
}

impl Render for KlColumn {
    fn text(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let _ = writeln!(s, "{}  {}", e.x, e.polynomial.display_with("q"));
        }
        s
    }

    fn tsv(&self) -> String {
        let mut s = String::from("x\tpolynomial\n");
        for e in &self.entries {
            let _ = writeln!(s, "{}\t{}", e.x, e.polynomial.display_with("q"));
        }
        s
    }
}

fn kl(args: KlArgs, format: Format, budget: usize) -> Result<ExitCode> {
    let w = args.w;
    let Some(x) = args.x else {
        let table = kl_table(&w, budget)?;
        let entries = table
            .entries
            .into_iter()
            .map(|(x, polynomial)| KlEntry { x, polynomial })
            .collect();
        return done(format, &KlColumn { w, entries });
    };
    if x.size() != w.size() {
        return Err(bad(format!("{x} and {w} have different sizes")));
    }
    let below = bruhat_leq(&x, &w);
    let (polynomial, mu) = if below {
        let kl = KazhdanLusztig::new(SymmetricGroup::new(w.size()), &w, budget)?;
        let p = kl.polynomial(&x, &w).context("x is below w")?;
        let mu = if x == w {
            0
        } else {
            kl.mu(&x, &w).unwrap_or(0)
        };
        (p, mu)
    } else {
        (IntPolynomial::zero(), 0)
    };
    done(
        format,
        &KlPair {
            x,
            w,
            below,
            polynomial,
            mu,
        },
    )
}

// interval and friends

#[derive(Serialize)]
struct IntervalOut {
    bottom: Permutation,
    top: Permutation,
    size: usize,
    rank_sizes: Vec<usize>,
    elements: Vec<Permutation>,
    lengths: Vec<usize>,
    #[serde(skip)]
    dot: Option<String>,
}

impl Render for IntervalOut {
    fn text(&self) -> String {
        if let Some(d) = &self.dot {
            return d.clone();
        }
        let mut s = format!(
            "[{}, {}]: {} elements, rank sizes {}\n",
            self.bottom,
            self.top,
            self.size,
            join(&self.rank_sizes, " ")
        );
        let mut by_length: Vec<(usize, Vec<&Permutation>)> = Vec::new();
        for (v, &l) in self.elements.iter().zip(&self.lengths) {
            match by_length.last_mut() {
                Some((k, vs)) if *k == l => vs.push(v),
                _ => by_length.push((l, vec![v])),
            }
        }
        for (l, vs) in by_length {
            let _ = writeln!(s, "{l:>3}: {}", join(&vs, " "));
        }
        s
    }

    fn tsv(&self) -> String {
        if let Some(d) = &self.dot {
            return d.clone();
        }
        let mut s = String::from("element\tlength\n");
        for (v, l) in self.elements.iter().zip(&self.lengths) {
            let _ = writeln!(s, "{v}\t{l}");
        }
        s
    }
}

fn interval(args: IntervalArgs, format: Format, budget: usize) -> Result<ExitCode> {
    if args.x.size() != args.w.size() {
        return Err(bad(format!(
            "{} and {} have different sizes",
            args.x, args.w
        )));
    }
    let iv = BruhatInterval::new(&args.x, &args.w, budget)?;
    done(
        format,
        &IntervalOut {
            bottom: iv.bottom.clone(),
            top: iv.top.clone(),
            size: iv.len(),
            rank_sizes: iv.rank_sizes(),
            lengths: iv.elements.iter().map(Permutation::length).collect(),
            dot: args.dot.then(|| iv.to_dot()),
            elements: iv.elements,
        },
    )
}

#[derive(Serialize)]
struct PoincareOut {
    w: Permutation,
    polynomial: IntPolynomial,
    palindromic: bool,
    q_integer_exponents: Option<Vec<usize>>,
}

impl Render for PoincareOut {
    fn text(&self) -> String {
        let mut s = self.polynomial.to_string();
        if let Some(e) = &self.q_integer_exponents {
            let factors: Vec<String> = e.iter().map(|k| format!("[{}]", k + 1)).collect();
            let _ = write!(s, "\n= {}", factors.join(""));
        }
        s
    }

    fn tsv(&self) -> String {
        let mut s = String::from("degree\tcoefficient\n");
        for (k, c) in self.polynomial.coeffs().iter().enumerate() {
            let _ = writeln!(s, "{k}\t{c}");
        }
        s
    }
}

fn poincare(w: Permutation, format: Format, budget: usize) -> Result<ExitCode> {
    let polynomial = BruhatInterval::below(&w, budget)?.rank_generating_function();
    done(
        format,
        &PoincareOut {
            w,
            palindromic: polynomial.is_palindromic(),
            q_integer_exponents: polynomial.factor_q_integers(),
            polynomial,
        },
    )
}

#[derive(Serialize)]
struct GraphOut {
    vertices: Vec<Permutation>,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
    #[serde(skip)]
    dot: String,
}

impl Render for GraphOut {
    fn text(&self) -> String {
        self.dot.clone()
    }
}

fn graph(w: Permutation, format: Format, budget: usize) -> Result<ExitCode> {
    let g = bruhat_graph(&w, budget)?;
    done(
        format,
        &GraphOut {
            dot: g.to_dot(),
            degrees: g.degrees(),
            vertices: g.vertices,
            edges: g.edges,
        },
    )
}

#[derive(Serialize)]
struct LocusOut {
    w: Permutation,
    components: Vec<Component>,
}

#[derive(Serialize)]
struct Component {
    element: Permutation,
    codimension: usize,
}

impl Render for LocusOut {
    fn text(&self) -> String {
        if self.components.is_empty() {
            return format!("{} is smooth", self.w);
        }
        let mut s = String::new();
        for c in &self.components {
            let _ = writeln!(s, "{}  codimension {}", c.element, c.codimension);
        }
        s
    }

    fn tsv(&self) -> String {
        let mut s = String::from("component\tcodimension\n");
        for c in &self.components {
            let _ = writeln!(s, "{}\t{}", c.element, c.codimension);
        }
        s
    }
}

fn locus(args: LocusArgs, format: Format, budget: usize) -> Result<ExitCode> {
    let w = args.w;
    let elements = if args.patterns {
        singular_locus_by_patterns(&w)
    } else {
        singular_locus_in(&BruhatInterval::below(&w, budget)?)
    };
    let lw = w.length();
    let components = elements
        .into_iter()
        .map(|v| Component {
            codimension: lw - v.length(),
            element: v,
        })
        .collect();
    done(format, &LocusOut { w, components })
}

// arrangements

#[derive(Serialize)]
struct ArrangementOut {
    w: Permutation,
    hyperplanes: Vec<(usize, usize)>,
    regions: Vec<RegionOut>,
    distance_polynomial: IntPolynomial,
}

#[derive(Serialize)]
struct RegionOut {
    signs: String,
    distance: usize,
}

impl ArrangementOut {
    fn table(&self) -> String {
        let mut s = String::from("signs\tdistance\n");
        for r in &self.regions {
            let _ = writeln!(s, "{}\t{}", r.signs, r.distance);
        }
        s
    }
}

impl Render for ArrangementOut {
    fn text(&self) -> String {
        let planes: Vec<String> = self
            .hyperplanes
            .iter()
            .map(|(i, j)| format!("x{i}=x{j}"))
            .collect();
        format!(
            "# hyperplanes: {}\n# {} regions, distances {}\n{}",
            planes.join(" "),
            self.regions.len(),
            self.distance_polynomial,
            self.table()
        )
    }

    fn tsv(&self) -> String {
        self.table()
    }
}

fn arrangement(w: Permutation, format: Format, budget: usize) -> Result<ExitCode> {
    let arr = InversionArrangement::of(&w);
    let regions = arr.regions(budget)?;
    let mut distances = vec![0i64; arr.hyperplanes.len() + 1];
    for r in &regions {
        distances[r.distance()] += 1;
    }
    done(
        format,
        &ArrangementOut {
            regions: regions
                .iter()
                .map(|r| RegionOut {
                    signs: r.sign_string(),
                    distance: r.distance(),
                })
                .collect(),
            hyperplanes: arr.hyperplanes,
            distance_polynomial: IntPolynomial::new(distances),
            w,
        },
    )
}

#[derive(Serialize)]
struct MatcountOut {
    n: usize,
    rank: usize,
    forbidden: Vec<(usize, usize)>,
    counts: Vec<QCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    comparison: Option<Vec<LewisMoralesSample>>,
}

#[derive(Serialize)]
struct QCount {
    q: u64,
    count: String,
}

impl Render for MatcountOut {
    fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.counts {
            let _ = writeln!(s, "q = {}: {}", c.q, c.count);
        }
        for c in self.comparison.iter().flatten() {
            let m = c
                .matrices
                .as_ref()
                .map_or("not divisible".into(), |m| m.to_string());
            let _ = writeln!(
                s,
                "q = {}: count/(q-1)^n = {m}, Poincare side = {}, {}",
                c.q,
                c.poincare_side,
                if c.holds() { "equal" } else { "different" }
            );
        }
        s
    }

    fn tsv(&self) -> String {
        let mut s = String::from("q\tcount\n");
        for c in &self.counts {
            let _ = writeln!(s, "{}\t{}", c.q, c.count);
        }
        s
    }
}

fn parse_cells(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|cell| {
            let (i, j) = cell
                .split_once(',')
                .ok_or_else(|| bad(format!("cell `{cell}` is not `i,j`")))?;
            let num = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| bad(format!("`{t}` is not a positive integer")))
            };
            Ok((num(i)?, num(j)?))
        })
        .collect()
}

fn matcount(args: MatcountArgs, format: Format) -> Result<ExitCode> {
    let (n, forbidden) = match (&args.diagram, &args.forbidden) {
        (Some(w), _) => (w.size(), w.diagram().cells),
        (None, Some(text)) => {
            let n = args
                .n
                .ok_or_else(|| bad("--n is required with --forbidden"))?;
            (n, parse_cells(text)?)
        }
        (None, None) => (
            args.n.ok_or_else(|| bad("give --n or --diagram"))?,
            Vec::new(),
        ),
    };
    if args.n.is_some_and(|m| m != n) {
        return Err(bad(format!(
            "--n {} does not match the diagram size {n}",
            args.n.unwrap_or(0)
        )));
    }
    let rank = args.rank.unwrap_or(n);
    let counts = args
        .q
        .iter()
        .map(|&q| {
            Ok(QCount {
                q,
                count: matcount_fq(n, &forbidden, q, rank)?.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let comparison = match (&args.diagram, args.compare) {
        (Some(w), true) => Some(lewis_morales_samples(w, &args.q)?),
        _ => None,
    };
    done(
        format,
        &MatcountOut {
            n,
            rank,
            forbidden,
            counts,
            comparison,
        },
    )
}

// coxeter

fn load_graph(choice: &GraphChoice) -> Result<CoxeterGraph> {
    if let Some(path) = &choice.graph {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(|e| bad(format!("{e:#}")))?;
        return Ok(text.parse()?);
    }
    let name = choice
        .kind
        .as_deref()
        .ok_or_else(|| bad("give --type or --graph"))?;
    let (family, rank) = name.split_at(1.min(name.len()));
    let rank: usize = rank
        .parse()
        .map_err(|_| bad(format!("`{name}` is not a graph name like A3 or B4")))?;
    match family.to_ascii_uppercase().as_str() {
        "A" if rank >= 1 => Ok(CoxeterGraph::type_a(rank)),
        "B" | "C" if rank >= 2 => Ok(CoxeterGraph::type_b(rank)),
        "D" if rank >= 4 => Ok(CoxeterGraph::type_d(rank)),
        _ => Err(bad(format!("no graph named `{name}`"))),
    }
}

fn parse_word(text: &str, rank: usize) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(k) if (1..=rank).contains(&k) => Ok(k - 1),
            _ => Err(bad(format!("`{t}` is not a vertex in 1..={rank}"))),
        })
        .collect()
}

#[derive(Serialize)]
struct GameOut {
    vector: Vec<i64>,
    word: Vec<usize>,
    length: usize,
    descents: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    leq: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elements: Option<Vec<GameElement>>,
}

#[derive(Serialize)]
struct GameElement {
    vector: Vec<i64>,
    word: Vec<usize>,
}

impl Render for GameOut {
    fn text(&self) -> String {
        let mut s = format!(
            "vector   {}\nword     {}\nlength   {}\ndescents {}\n",
            join(&self.vector, " "),
            join(&self.word, " "),
            self.length,
            join(&self.descents, " ")
        );
        if let Some(b) = self.leq {
            let _ = writeln!(s, "below    {}", yes_no(b));
        }
        if let Some(all) = &self.elements {
            let _ = writeln!(s, "# {} elements", all.len());
            for e in all {
                let _ = writeln!(s, "{}\t{}", join(&e.vector, " "), join(&e.word, " "));
            }
        }
        s
    }

    fn tsv(&self) -> String {
        let mut s = String::from("vector\tword\n");
        match &self.elements {
            Some(all) => {
                for e in all {
                    let _ = writeln!(s, "{}\t{}", join(&e.vector, " "), join(&e.word, " "));
                }
            }
            None => {
                let _ = writeln!(s, "{}\t{}", join(&self.vector, " "), join(&self.word, " "));
            }
        }
        s
    }
}

fn one_based(word: &[usize]) -> Vec<usize> {
    word.iter().map(|s| s + 1).collect()
}

fn game(args: GameArgs, format: Format, budget: usize) -> Result<ExitCode> {
    let g = load_graph(&args.graph)?;
    let word = parse_word(&args.word, g.rank())?;
    let w = canonical_form(&word, &g)?;
    let leq = match &args.leq {
        Some(other) => {
            let other = canonical_form(&parse_word(other, g.rank())?, &g)?;
            Some(length_and_bruhat(&w, &other, &g)?.2)
        }
        None => None,
    };
    let elements = if args.elements {
        let sys = CoxeterSystem::new(g.clone());
        Some(
            sys.elements(budget)?
                .into_iter()
                .map(|v| GameElement {
                    word: one_based(&sys.reduced_word(&v)),
                    vector: v.0,
                })
                .collect(),
        )
    } else {
        None
    };
    done(
        format,
        &GameOut {
            descents: one_based(&right_descents(&w)),
            length: w.length(),
            word: one_based(&w.word),
            vector: w.vector.0,
            leq,
            elements,
        },
    )
}

#[derive(Serialize)]
struct FlattenOut {
    w: String,
    simple_roots: Vec<String>,
    inversions: Vec<String>,
    word: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    permutation: Option<Permutation>,
}

impl Render for FlattenOut {
    fn text(&self) -> String {
        let mut s = format!(
            "simple roots {}\ninversions   {}\nword         {}\n",
            self.simple_roots.join(" "),
            self.inversions.join(" "),
            join(&self.word, " ")
        );
        if let Some(p) = &self.permutation {
            let _ = writeln!(s, "flattening   {p}");
        }
        s
    }
}

/// Reads `e1-e2`, `e1+e2`, `e3`, `2e1` or `-e2` as a coordinate vector.
fn parse_root(text: &str, dim: usize) -> Result<Root> {
    let mut v = vec![0i64; dim];
    let t = text.trim().replace(' ', "");
    let mut rest = t.as_str();
    let err = || bad(format!("cannot read root `{text}`"));
    if rest.is_empty() {
        return Err(err());
    }
    while !rest.is_empty() {
        let sign = match rest.as_bytes()[0] {
            b'-' => {
                rest = &rest[1..];
                -1
            }
            b'+' => {
                rest = &rest[1..];
                1
            }
            _ => 1,
        };
        let e = rest.find('e').ok_or_else(err)?;
        let coeff: i64 = if e == 0 {
            1
        } else {
            rest[..e].parse().map_err(|_| err())?
        };
        rest = &rest[e + 1..];
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let i: usize = rest[..end].parse().map_err(|_| err())?;
        if i == 0 || i > dim {
            return Err(bad(format!("e{i} is outside 1..={dim}")));
        }
        v[i - 1] += sign * coeff;
        rest = &rest[end..];
    }
    Ok(v)
}

/// A signed permutation, also accepting compact one-line input like `2431`.
fn parse_signed(text: &str) -> Result<SignedPermutation> {
    if !text.contains(['-', '(']) {
        if let Ok(p) = text.parse::<Permutation>() {
            return Ok(SignedPermutation::new(
                p.to_vec().into_iter().map(|v| v as i64).collect(),
            )?);
        }
    }
    Ok(text.parse()?)
}

fn flatten(args: FlattenArgs, format: Format) -> Result<ExitCode> {
    let w = parse_signed(&args.w)?;
    let n = w.size();
    let kind = args.kind;
    let (sub, permutation) = match (&args.positions, &args.span) {
        (Some(positions), _) => {
            if kind != RootType::A {
                return Err(bad(
                    "--positions selects a type-A subsystem; use --span for other types",
                ));
            }
            if positions.iter().any(|&p| p == 0 || p > n)
                || positions.windows(2).any(|p| p[0] >= p[1])
            {
                return Err(bad(format!("positions must increase within 1..={n}")));
            }
            let plain = Permutation::new(w.entries().iter().map(|&v| v as i64))
                .map_err(|_| bad("type A needs an unsigned permutation"))?;
            (
                RootSubsystem::on_positions(n, positions)?,
                Some(flatten_positions(&plain, positions)?),
            )
        }
        (None, Some(span)) => {
            let rank = if kind == RootType::A {
                n.saturating_sub(1)
            } else {
                n
            };
            let dim = kind.dimension(rank);
            let roots = span
                .iter()
                .map(|r| parse_root(r, dim))
                .collect::<Result<Vec<_>>>()?;
            (RootSubsystem::new(kind, rank, &roots)?, None)
        }
        (None, None) => return Err(bad("give --positions or --span")),
    };
    let fl = flatten_parabolic(&w, &sub)?;
    done(
        format,
        &FlattenOut {
            w: args.w,
            simple_roots: sub.simple.iter().map(|r| root_label(r)).collect(),
            inversions: fl.inversions.iter().map(|r| root_label(r)).collect(),
            word: one_based(&fl.word),
            permutation,
        },
    )
}

#[derive(Serialize)]
struct BnOut {
    w: String,
    smooth: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pattern: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    positions: Option<Vec<usize>>,
}

impl Render for BnOut {
    fn text(&self) -> String {
        match (&self.pattern, &self.positions) {
            (Some(p), Some(pos)) => format!("not smooth: contains {p} at {}", join(pos, ",")),
            _ => "smooth".into(),
        }
    }
}

fn bn_smooth(w: SignedPermutation, format: Format) -> Result<ExitCode> {
    let witness = bn_singular_witness(&w);
    done(
        format,
        &BnOut {
            w: w.to_string(),
            smooth: witness.is_none(),
            pattern: witness.as_ref().map(|(p, _)| p.to_string()),
            positions: witness.map(|(_, pos)| pos),
        },
    )
}

// series and verify

#[derive(Serialize)]
struct SeriesOut {
    which: String,
    coefficients: Vec<String>,
}

impl Render for SeriesOut {
    fn text(&self) -> String {
        self.coefficients.join(", ")
    }

    fn tsv(&self) -> String {
        let mut s = String::from("n\tcoefficient\n");
        for (k, c) in self.coefficients.iter().enumerate() {
            let _ = writeln!(s, "{k}\t{c}");
        }
        s
    }
}

fn series(args: SeriesArgs, format: Format) -> Result<ExitCode> {
    let coeffs = gf_series(args.which, args.order)?;
    let which: Which = args.which;
    done(
        format,
        &SeriesOut {
            which: which.to_string(),
            coefficients: coeffs.iter().map(|c| c.to_string()).collect(),
        },
    )
}

#[derive(Serialize)]
struct VerifyOut {
    results: Vec<CriterionResult>,
    passed: usize,
    total: usize,
}

impl Render for VerifyOut {
    fn text(&self) -> String {
        let mut s = String::new();
        for r in &self.results {
            let _ = writeln!(s, "{r}");
        }
        let _ = writeln!(s, "{} of {} criteria passed", self.passed, self.total);
        s
    }

    fn tsv(&self) -> String {
        let mut s = String::from("id\tname\tpassed\telapsed_ms\tdetail\n");
        for r in &self.results {
            let _ = writeln!(
                s,
                "{}\t{}\t{}\t{}\t{}",
                r.id, r.name, r.passed, r.elapsed_ms, r.detail
            );
        }
        s
    }
}

fn verify(args: VerifyArgs, format: Format) -> Result<ExitCode> {
    let ids: Vec<usize> = if args.only.is_empty() {
        (1..=CRITERIA.len()).collect()
    } else {
        args.only
    };
    if let Some(&bad_id) = ids.iter().find(|&&k| k == 0 || k > CRITERIA.len()) {
        return Err(bad(format!(
            "there is no criterion {bad_id}; use 1..={}",
            CRITERIA.len()
        )));
    }
    std::panic::set_hook(Box::new(|_| {}));
    let results: Vec<CriterionResult> = ids.into_iter().filter_map(run_one).collect();
    let passed = results.iter().filter(|r| r.passed).count();
    let out = VerifyOut {
        total: results.len(),
        passed,
        results,
    };
    emit(format, &out)?;
    Ok(if out.passed == out.total {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_parse() {
        assert_eq!(parse_root("e1-e2", 3).unwrap(), vec![1, -1, 0]);
        assert_eq!(parse_root("e1+e3", 3).unwrap(), vec![1, 0, 1]);
        assert_eq!(parse_root("2e2", 3).unwrap(), vec![0, 2, 0]);
        assert_eq!(parse_root("-e3", 3).unwrap(), vec![0, 0, -1]);
        assert!(parse_root("e4", 3).is_err());
        assert!(parse_root("x1", 3).is_err());
    }

    #[test]
    fn cells_parse() {
        assert_eq!(parse_cells("1,2; 3,1").unwrap(), vec![(1, 2), (3, 1)]);
        assert!(parse_cells("1;2").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&bad("x")), 2);
        assert_eq!(exit_code(&BruhatError::Budget(3).into()), 3);
        assert_eq!(exit_code(&KlError::Budget(3).into()), 3);
        assert_eq!(exit_code(&anyhow::anyhow!("other")), 1);
    }
}
