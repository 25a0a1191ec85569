//! `cirigid`: exact checks for codimension-2 complete intersections from
//! the command line. Reports go to stdout as JSON, a summary to stderr.
//! Exit codes: 0 computed, 1 input error, 2 budget exceeded.

mod batch;
mod commands;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "cirigid", version, about = "Exact checks for codimension-2 complete intersections")]
pub struct Cli {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Work over F_p (odd prime below 2^61) instead of the rationals.
    #[arg(long, global = true)]
    pub prime: Option<u64>,
    /// Cap on S-polynomial reductions in Groebner computations.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Condition {
    Auto,
    R1,
    R2,
    R22,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Prefix,
    Weak,
    BetweenClosed,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank of a matrix file (rows of numbers).
    Rank { file: PathBuf },
    /// Minimum rank over the span of 1 to 4 quadratic forms, one per line.
    PencilRank { file: PathBuf },
    /// Classify a point of the pair in FILE (two polynomials).
    ClassifyPoint {
        pair: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Regularity check at a point: sampled refutation, or one subspace.
    CheckRegularity {
        pair: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Condition::Auto)]
        condition: Condition,
        /// Equations of one subspace (JSON rows of numbers as strings), as in a witness.
        #[arg(long)]
        subspace: Option<String>,
    },
    /// Codimension bounds for M, or for degrees d1 <= d2; optional (N, k[, j, l]).
    CodimBounds {
        #[arg(long = "M")]
        m: Option<i64>,
        #[arg(long)]
        d1: Option<i64>,
        #[arg(long)]
        d2: Option<i64>,
        #[arg(long = "N")]
        n: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        j: Option<i64>,
        #[arg(long)]
        l: Option<i64>,
    },
    /// Numerical superrigidity criterion for a fibration, or a whole grid.
    FibrationCheck {
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        d1: Option<i64>,
        #[arg(long)]
        d2: Option<i64>,
        #[arg(long)]
        l1: Option<i64>,
        #[arg(long)]
        l2: Option<i64>,
        #[arg(long)]
        grid: bool,
        #[arg(long, default_value_t = 10)]
        m_max: i64,
        #[arg(long, default_value_t = 20)]
        l_max: i64,
        #[arg(long, default_value_t = 30)]
        d_max: i64,
    },
    /// Graph validation and path counts, or a Noether-Fano instance.
    NfGraph { file: PathBuf },
    /// Path count inequality on every graph of a class up to N vertices.
    Prop52Scan {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_enum, default_value_t = ClassArg::Prefix)]
        class: ClassArg,
    },
    /// Exact minimum of the linear problem on a prefix graph.
    LpMin { file: PathBuf },
    /// Multiplicity chain bounds from (nu, mu, n) and an optional second stage.
    LocalBounds {
        #[arg(long)]
        nu: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        n: String,
        #[arg(long)]
        nu_r: Option<String>,
        #[arg(long)]
        mu_r: Option<String>,
    },
    /// Projective dimension of an ideal file; --count E adds point counts over GF(p^e), e <= E.
    Dim {
        file: PathBuf,
        #[arg(long)]
        count: Option<u32>,
    },
    /// Regularity checks for every entry of a manifest; per-entry reports go to --out.
    Batch {
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Pretty JSON to stdout; a closed pipe is not an error worth a panic.
fn emit(doc: &serde_json::Value) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(doc).expect("serializable"));
}

fn main() -> ExitCode {
    let invocation: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let name = commands::name(&cli.command);
    match commands::run(&cli) {
        Ok(out) => {
            let report = Report {
                command: name.to_string(),
                invocation,
                inputs: out.inputs,
                seed: out.seed,
                result: out.result,
                warnings: out.warnings,
            };
            emit(&serde_json::to_value(&report).expect("serializable"));
            eprintln!("{name}: {}", out.summary);
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(&report::error_document(name, &invocation, &e));
            eprintln!("{name}: error: {e}");
            ExitCode::from(report::exit_code(&e) as u8)
        }
    }
}
