mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use schubert::bruhat::DEFAULT_BUDGET;
use schubert::coxeter::RootType;
use schubert::enumerate::Property;
use schubert::series::Which;
use schubert::{Permutation, SignedPermutation};

use crate::output::Format;

/// Schubert variety combinatorics: patterns, Bruhat order,
/// Kazhdan-Lusztig polynomials and friends.
#[derive(Parser, Debug)]
#[command(name = "schubert", version)]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,
    /// Print tab-separated values where the output is tabular.
    #[arg(long, global = true)]
    tsv: bool,
    /// Largest interval, group or region set to build before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Every property check for one permutation, with witnesses.
    Analyze(AnalyzeArgs),
    /// Count or list the permutations of size n with a property.
    #[command(subcommand)]
    Enumerate(EnumerateCmd),
    /// Kazhdan-Lusztig polynomials P_{x,w}.
    Kl(KlArgs),
    /// The Bruhat interval [x, w].
    Interval(IntervalArgs),
    /// The Poincare polynomial of w.
    Poincare { w: Permutation },
    /// The Bruhat graph of [id, w] in DOT syntax.
    Graph { w: Permutation },
    /// Irreducible components of the singular locus of X_w.
    Locus(LocusArgs),
    /// Regions of the inversion arrangement of w.
    Arrangement { w: Permutation },
    /// Count matrices over F_q of given rank vanishing on a set of cells.
    Matcount(MatcountArgs),
    /// Numbers game, parabolic flattening and type-B smoothness.
    #[command(subcommand)]
    Coxeter(CoxeterCmd),
    /// Coefficients of a closed-form generating function.
    Series(SeriesArgs),
    /// Run the acceptance suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    pub w: Permutation,
    /// Include P_{id,w}.
    #[arg(long)]
    pub kl: bool,
    /// Include the singular locus components.
    #[arg(long)]
    pub locus: bool,
    /// Include the Poincare polynomial.
    #[arg(long)]
    pub poincare: bool,
    /// Include the inversion arrangement region count and distance polynomial.
    #[arg(long)]
    pub arrangement: bool,
}

#[derive(Subcommand, Debug)]
pub enum EnumerateCmd {
    /// How many elements of size n have the property.
    Count {
        property: Property,
        n: usize,
        /// Count every size 1..=n and compare with the closed form.
        #[arg(long)]
        upto: bool,
    },
    /// The elements of size n with the property, in lexicographic order.
    List { property: Property, n: usize },
}

#[derive(Args, Debug)]
pub struct KlArgs {
    pub w: Permutation,
    /// Lower element; without it the whole column below w is printed.
    pub x: Option<Permutation>,
}

#[derive(Args, Debug)]
pub struct IntervalArgs {
    pub x: Permutation,
    pub w: Permutation,
    /// Print the Hasse diagram in DOT syntax.
    #[arg(long)]
    pub dot: bool,
}

#[derive(Args, Debug)]
pub struct LocusArgs {
    pub w: Permutation,
    /// Build the components from pattern occurrences instead of tangent spaces.
    #[arg(long)]
    pub patterns: bool,
}

#[derive(Args, Debug)]
pub struct MatcountArgs {
    /// Matrix size; defaults to the size of --diagram.
    #[arg(long)]
    pub n: Option<usize>,
    /// Field sizes (primes), comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub q: Vec<u64>,
    /// Rank; defaults to n.
    #[arg(long)]
    pub rank: Option<usize>,
    /// Cells forced to zero, as `i,j;i,j` (1-based row, column).
    #[arg(long, conflicts_with = "diagram")]
    pub forbidden: Option<String>,
    /// Force the diagram of this permutation to zero.
    #[arg(long)]
    pub diagram: Option<Permutation>,
    /// With --diagram, also evaluate the Poincare-polynomial side of the
    /// matrix-count identity.
    #[arg(long, requires = "diagram")]
    pub compare: bool,
}

#[derive(Subcommand, Debug)]
pub enum CoxeterCmd {
    /// Play the numbers game along a word.
    Game(GameArgs),
    /// Flatten w onto a root subsystem.
    Flatten(FlattenArgs),
    /// Smoothness of a type-B Schubert variety by signed patterns.
    BnSmooth { w: SignedPermutation },
}

#[derive(Args, Debug)]
pub struct GraphChoice {
    /// A named graph such as A3, B4 or D5.
    #[arg(long = "type", conflicts_with = "graph")]
    pub kind: Option<String>,
    /// A file with one `i j m` line per edge.
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GameArgs {
    #[command(flatten)]
    pub graph: GraphChoice,
    /// Vertices to fire, 1-based, separated by spaces or commas.
    #[arg(long, default_value = "")]
    pub word: String,
    /// Compare with this element in Bruhat order.
    #[arg(long)]
    pub leq: Option<String>,
    /// List every element of the group (within the budget).
    #[arg(long)]
    pub elements: bool,
}

#[derive(Args, Debug)]
pub struct FlattenArgs {
    /// A permutation or signed permutation.
    pub w: String,
    /// Type-A subsystem on these positions (1-based, comma-separated).
    #[arg(long, value_delimiter = ',', conflicts_with = "span")]
    pub positions: Option<Vec<usize>>,
    /// Roots spanning U, like `e1-e2,e2`.
    #[arg(long, value_delimiter = ',')]
    pub span: Option<Vec<String>>,
    /// Ambient root system.
    #[arg(long = "type", default_value = "A")]
    pub kind: RootType,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    pub which: Which,
    /// Highest power of t.
    #[arg(long, default_value_t = 10)]
    pub order: usize,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only these criteria (1-based, comma-separated).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let format = if cli.json {
        Format::Json
    } else if cli.tsv {
        Format::Tsv
    } else {
        Format::Text
    };
    match commands::run(cli.command, format, cli.budget) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
