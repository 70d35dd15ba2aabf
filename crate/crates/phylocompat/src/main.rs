//! Command-line interface for generating, deciding, checking and
//! verifying character compatibility.
//!
//! Exit codes: 0 success (for `decide`: compatible), 1 negative outcome
//! (incompatible / failed checks), 2 undecided or incomplete within
//! budget, 3 and above errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use phylocompat::construction::{
    counterexample, duplicate_taxon, fitch_example, gapify, FITCH_SEQUENCES,
};
use phylocompat::display::displays_character;
use phylocompat::matrix_file::{parse_matrix, serialize_matrix, serialize_matrix_with_tokens};
use phylocompat::newick::{to_newick, trees_from_newick};
use phylocompat::solver::{
    decide_pp, enumerate_compatible_trees, minimal_obstructions, IncompatibilityReason,
    SearchMode, Status,
};
use phylocompat::verify::{verify_small, verify_theorem, verify_witness_suite, LemmaReport};
use phylocompat::{CharacterMatrix, Error};

/// Default node budget when neither `--budget` nor the environment
/// variable is set.
const DEFAULT_BUDGET: u64 = 50_000_000;
const BUDGET_ENV: &str = "PHYLOCOMPAT_BUDGET";

#[derive(Parser)]
#[command(
    name = "phylocompat",
    version,
    about = "Perfect-phylogeny compatibility: decide, check, generate and verify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a built-in character matrix.
    Generate(GenerateArgs),
    /// Decide whether a matrix admits a perfect phylogeny.
    Decide(DecideArgs),
    /// Check which characters of a matrix a given tree displays.
    Check(CheckArgs),
    /// List inclusion-minimal incompatible character subsets.
    Obstructions(ObstructionsArgs),
    /// Run the built-in verification suite for the counterexample family.
    #[command(name = "verify-paper")]
    VerifyPaper(VerifyArgs),
    /// Replace singleton states by gaps in a matrix file.
    Gapify(TransformArgs),
    /// Copy a taxon, placing the copies in exactly its states.
    Duplicate(DuplicateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// The family C(n) on 2n paired taxa (requires --n).
    Counterexample,
    /// The classical five-taxon, three-character instance.
    Fitch,
    /// The eight-taxon instance (the family at n = 4).
    Small8,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// Family size parameter (even, at least 4).
    #[arg(long)]
    n: Option<usize>,
    /// Replace singleton states by gaps.
    #[arg(long)]
    gapify: bool,
    /// Duplicate a taxon, as TAXON:COUNT. Repeatable.
    #[arg(long = "duplicate", value_name = "TAXON:COUNT")]
    duplicate: Vec<String>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Auto,
    Exhaustive,
    #[value(name = "branch-and-bound", alias = "bb")]
    BranchAndBound,
}

impl From<Mode> for SearchMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Auto => SearchMode::Auto,
            Mode::Exhaustive => SearchMode::Exhaustive,
            Mode::BranchAndBound => SearchMode::BranchAndBound,
        }
    }
}

#[derive(Args)]
struct DecideArgs {
    /// Matrix file.
    matrix: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    mode: Mode,
    /// Node budget; 0 means unlimited. Defaults to $PHYLOCOMPAT_BUDGET
    /// or a built-in cap.
    #[arg(long)]
    budget: Option<u64>,
    /// Number of distinct witness trees to report when compatible.
    #[arg(long, default_value_t = 1)]
    limit: usize,
    /// Write the witness tree(s) (Newick, one per line) here when
    /// compatible.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Matrix file.
    matrix: PathBuf,
    /// Newick tree file (one tree per line).
    tree: PathBuf,
}

#[derive(Args)]
struct ObstructionsArgs {
    /// Matrix file.
    matrix: PathBuf,
    /// Largest subset size to search (defaults to the matrix size).
    #[arg(long = "max-size")]
    max_size: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    /// Display checks of every named witness only.
    Witnesses,
    /// Witness checks plus incompatibility certification.
    Full,
}

#[derive(Args)]
struct VerifyArgs {
    /// Family size parameter (even, at least 4).
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "full")]
    level: Level,
}

#[derive(Args)]
struct TransformArgs {
    /// Input matrix file.
    matrix: PathBuf,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DuplicateArgs {
    /// Input matrix file.
    matrix: PathBuf,
    /// Taxon to copy.
    #[arg(long)]
    taxon: String,
    /// Number of copies.
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(3);
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Decide(args) => cmd_decide(args),
        Command::Check(args) => cmd_check(args),
        Command::Obstructions(args) => cmd_obstructions(args),
        Command::VerifyPaper(args) => cmd_verify(args),
        Command::Gapify(args) => cmd_gapify(args),
        Command::Duplicate(args) => cmd_duplicate(args),
    }
}

fn effective_budget(cli_budget: Option<u64>) -> Option<u64> {
    let requested = cli_budget.or_else(|| {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.parse::<u64>().ok())
    });
    match requested {
        Some(0) => None, // unlimited
        Some(b) => Some(b),
        None => Some(DEFAULT_BUDGET),
    }
}

fn write_out(out: Option<&PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn parse_duplicate_spec(spec: &str) -> Result<(String, usize), Error> {
    let (taxon, count) = spec.rsplit_once(':').ok_or_else(|| {
        Error::Domain(format!("duplicate spec '{spec}' must look like TAXON:COUNT"))
    })?;
    let count = count
        .parse::<usize>()
        .map_err(|_| Error::Domain(format!("invalid duplicate count in '{spec}'")))?;
    Ok((taxon.to_string(), count))
}

fn cmd_generate(args: GenerateArgs) -> Result<u8, Error> {
    let (mut matrix, fitch_letters) = match args.kind {
        Kind::Counterexample => {
            let n = args.n.ok_or_else(|| {
                Error::Domain("generate counterexample requires --n".into())
            })?;
            (counterexample(n)?.matrix, false)
        }
        Kind::Small8 => {
            if args.n.is_some_and(|n| n != 4) {
                return Err(Error::Domain("small8 is the family at n = 4".into()));
            }
            (counterexample(4)?.matrix, false)
        }
        Kind::Fitch => {
            if args.n.is_some() {
                return Err(Error::Domain("--n does not apply to fitch".into()));
            }
            (fitch_example(), true)
        }
    };
    for spec in &args.duplicate {
        let (taxon, count) = parse_duplicate_spec(spec)?;
        matrix = duplicate_taxon(&matrix, &taxon, count)?;
    }
    if args.gapify {
        matrix = gapify(&matrix);
    }
    let text = if fitch_letters {
        // keep the nucleotide symbols of the source alignment
        let m = matrix.clone();
        serialize_matrix_with_tokens(&matrix, move |ci, si| {
            m.character(ci).states()[si]
                .iter()
                .find(|&&t| t < FITCH_SEQUENCES.len())
                .map(|&t| FITCH_SEQUENCES[t].1.chars().nth(ci).expect("3 columns").to_string())
        })
    } else {
        serialize_matrix(&matrix)
    };
    write_out(args.out.as_ref(), &text)?;
    Ok(0)
}

fn load_matrix(path: &PathBuf) -> Result<CharacterMatrix, Error> {
    parse_matrix(&fs::read_to_string(path)?)
}

fn cmd_decide(args: DecideArgs) -> Result<u8, Error> {
    let matrix = load_matrix(&args.matrix)?;
    if args.limit == 0 {
        return Err(Error::Domain("--limit must be at least 1".into()));
    }
    let budget = effective_budget(args.budget);
    let verdict = decide_pp(&matrix, args.mode.into(), budget)?;
    println!("taxa={} characters={}", matrix.taxa().len(), matrix.len());
    println!(
        "explored={} pruned={} wall_ms={}",
        verdict.stats.explored,
        verdict.stats.pruned,
        verdict.stats.wall.as_millis()
    );
    match verdict.status {
        Status::Compatible(tree) => {
            println!("status=compatible");
            let witnesses = if args.limit == 1 {
                vec![tree]
            } else {
                enumerate_compatible_trees(&matrix, args.limit, budget)?.trees
            };
            let text: String = witnesses
                .iter()
                .map(|t| format!("{}\n", to_newick(t)))
                .collect();
            match &args.out {
                Some(path) => {
                    fs::write(path, text)?;
                    println!("witness_file={}", path.display());
                }
                None => {
                    for line in text.lines() {
                        println!("witness={line}");
                    }
                }
            }
            println!("witnesses={}", witnesses.len());
            Ok(0)
        }
        Status::Incompatible(reason) => {
            println!("status=incompatible");
            match reason {
                IncompatibilityReason::ExhaustedSearch => println!("reason=exhausted-search"),
                IncompatibilityReason::Filter(name) => println!("reason=filter:{name}"),
            }
            Ok(1)
        }
        Status::Undecided { budget } => {
            println!("status=undecided");
            println!("reason=budget:{budget}");
            Ok(2)
        }
    }
}

fn cmd_check(args: CheckArgs) -> Result<u8, Error> {
    let matrix = load_matrix(&args.matrix)?;
    let trees = trees_from_newick(&fs::read_to_string(&args.tree)?, None)?;
    if trees.is_empty() {
        return Err(Error::Domain("tree file contains no trees".into()));
    }
    let mut all_pass = true;
    for (ti, tree) in trees.iter().enumerate() {
        let tree = align_taxa(tree, &matrix)?;
        for c in matrix.characters() {
            let ok = displays_character(&tree, c)?;
            all_pass &= ok;
            println!(
                "tree={} character={} status={}",
                ti,
                c.display_name(),
                if ok { "pass" } else { "fail" }
            );
        }
    }
    println!("result={}", if all_pass { "pass" } else { "fail" });
    Ok(u8::from(!all_pass))
}

// Re-expresses the tree over the matrix's taxon set, reporting the
// symmetric difference when the leaf sets do not match.
fn align_taxa(
    tree: &phylocompat::Tree,
    matrix: &CharacterMatrix,
) -> Result<phylocompat::Tree, Error> {
    let tree_labels: std::collections::BTreeSet<&str> =
        tree.taxa().labels().iter().map(String::as_str).collect();
    let matrix_labels: std::collections::BTreeSet<&str> =
        matrix.taxa().labels().iter().map(String::as_str).collect();
    if tree_labels != matrix_labels {
        let only_tree: Vec<&str> = tree_labels.difference(&matrix_labels).copied().collect();
        let only_matrix: Vec<&str> = matrix_labels.difference(&tree_labels).copied().collect();
        return Err(Error::TaxonSetMismatch(format!(
            "tree-only leaves: [{}]; matrix-only taxa: [{}]",
            only_tree.join(", "),
            only_matrix.join(", ")
        )));
    }
    tree.with_taxa(matrix.taxa().clone())
}

fn cmd_obstructions(args: ObstructionsArgs) -> Result<u8, Error> {
    let matrix = load_matrix(&args.matrix)?;
    let max_size = args.max_size.unwrap_or(matrix.len());
    let budget = effective_budget(args.budget);
    let report = minimal_obstructions(&matrix, max_size, budget)?;
    for o in &report.obstructions {
        let names: Vec<String> = o
            .subset
            .iter()
            .map(|&i| matrix.character(i).display_name())
            .collect();
        println!("obstruction={}", names.join(","));
    }
    println!("count={}", report.obstructions.len());
    println!("complete={}", report.complete);
    Ok(if report.complete { 0 } else { 2 })
}

fn print_reports(reports: &[LemmaReport]) -> bool {
    let mut all = true;
    for r in reports {
        all &= r.passed();
        println!(
            "lemma={} n={} status={} evidence={}",
            r.id,
            r.n,
            if r.passed() { "pass" } else { "fail" },
            r.evidence
        );
    }
    all
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Error> {
    let n = args.n;
    let mut reports = Vec::new();
    if n == 4 {
        reports.push(verify_small()?);
    } else {
        reports.extend(verify_witness_suite(n)?);
    }
    if matches!(args.level, Level::Full) {
        reports.push(verify_theorem(n, 2 * n - 5)?);
    }
    let all = print_reports(&reports);
    println!(
        "passed={} failed={}",
        reports.iter().filter(|r| r.passed()).count(),
        reports.iter().filter(|r| !r.passed()).count()
    );
    println!("result={}", if all { "pass" } else { "fail" });
    Ok(u8::from(!all))
}

fn cmd_gapify(args: TransformArgs) -> Result<u8, Error> {
    let matrix = load_matrix(&args.matrix)?;
    write_out(args.out.as_ref(), &serialize_matrix(&gapify(&matrix)))?;
    Ok(0)
}

fn cmd_duplicate(args: DuplicateArgs) -> Result<u8, Error> {
    let matrix = load_matrix(&args.matrix)?;
    let out = duplicate_taxon(&matrix, &args.taxon, args.count)?;
    write_out(args.out.as_ref(), &serialize_matrix(&out))?;
    Ok(0)
}
