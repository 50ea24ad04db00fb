use std::path::PathBuf;
use std::process::ExitCode;

use cantor_ap::{BlockSelection, Rational};
use clap::{Args, Parser, Subcommand};

mod commands;
mod output;

/// Exact construction and certification of points whose mod-1 translates
/// all lie near a middle-1/N Cantor set.
#[derive(Parser)]
#[command(name = "cantor-ap", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the approximant X_delta, optionally translated and windowed.
    Build(BuildArgs),
    /// Test whether an interval of length 1/N^k is k-good.
    Good(GoodArgs),
    /// Find a point common to (approximately) all translates.
    Find(FindArgs),
    /// Find a point x with x + i*d near the Cantor set for i < len.
    FindAp(FindApArgs),
    /// Re-check a certificate from scratch.
    Verify(VerifyArgs),
    /// Sweep the gap-count lemma against the brute-force oracle.
    LemmaCheck(LemmaArgs),
    /// Sweep the scaled gap-count bound against the brute-force oracle.
    CorollaryCheck(CorollaryArgs),
    /// Distance from a point to the Cantor set.
    Dist(DistArgs),
    /// Longest progression found by increasing the length until failure.
    Search(SearchArgs),
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long = "N", alias = "n")]
    n: u64,
    /// Scale; the construction stage is the first whose gaps are <= delta.
    #[arg(long)]
    delta: Rational,
    /// Restrict to a window `lo:hi`.
    #[arg(long)]
    window: Option<String>,
    #[arg(long)]
    translate: Option<Rational>,
    /// Maximum number of components for a global (unwindowed) build.
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A translate family: explicit `--translate` values or a progression.
#[derive(Args)]
struct FamilyArgs {
    /// A translate a_i (repeatable).
    #[arg(long = "translate", conflicts_with_all = ["d", "len"])]
    translates: Vec<Rational>,
    /// Common difference; the family is a_i = -i*d mod 1 for i < len.
    #[arg(long, requires = "len")]
    d: Option<Rational>,
    #[arg(long, requires = "d")]
    len: Option<u64>,
}

#[derive(Args)]
struct GoodArgs {
    #[arg(long = "N", alias = "n")]
    n: u64,
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    k: u32,
    /// The interval `lo:hi`, of length exactly 1/N^k.
    #[arg(long)]
    interval: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FindArgs {
    #[arg(long = "N", alias = "n")]
    n: u64,
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    depth: u32,
    /// Pick the block with the most surviving pieces instead of the first.
    #[arg(long)]
    best_block: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FindApArgs {
    #[arg(long = "N", alias = "n")]
    n: u64,
    #[arg(long)]
    d: Rational,
    #[arg(long)]
    len: u64,
    #[arg(long)]
    depth: u32,
    #[arg(long)]
    best_block: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    cert: PathBuf,
}

#[derive(Args)]
struct LemmaArgs {
    /// Values of N: `a..b`, `a..=b` (both inclusive), or a comma list.
    #[arg(long = "N", alias = "n", default_value = "3..10")]
    n: String,
    #[arg(long, default_value_t = 8)]
    max_stage: u32,
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,
}

#[derive(Args)]
struct CorollaryArgs {
    #[arg(long = "N", alias = "n", default_value = "3,5,8")]
    n: String,
    #[arg(long, default_value_t = 2)]
    max_k: u32,
    /// Smallest delta swept.
    #[arg(long, default_value = "1/64")]
    min_delta: Rational,
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,
}

#[derive(Args)]
struct DistArgs {
    #[arg(long = "N", alias = "n")]
    n: u64,
    #[arg(long)]
    x: Rational,
    #[arg(long, default_value_t = 32)]
    max_level: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long = "N", alias = "n")]
    n: u64,
    #[arg(long)]
    d: Rational,
    #[arg(long)]
    depth: u32,
    /// Largest progression length tried.
    #[arg(long)]
    cap: u64,
    #[arg(long)]
    best_block: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn selection(best: bool) -> BlockSelection {
    if best {
        BlockSelection::Best
    } else {
        BlockSelection::FirstFit
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(a) => commands::build(a),
        Command::Good(a) => commands::good(a),
        Command::Find(a) => commands::find(a),
        Command::FindAp(a) => commands::find_ap(a),
        Command::Verify(a) => commands::verify(a),
        Command::LemmaCheck(a) => commands::lemma_check(a),
        Command::CorollaryCheck(a) => commands::corollary_check(a),
        Command::Dist(a) => commands::dist(a),
        Command::Search(a) => commands::search(a),
    };
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
