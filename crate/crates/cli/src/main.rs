mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ext_real::pca::DEFAULT_FUEL;

/// Extensional realizability over a combinatory algebra.
///
/// Every command prints a JSON report. Exit status: 0 holds, 1 refuted,
/// 2 unknown, 3 malformed input.
#[derive(Parser, Debug)]
#[command(name = "ext-real", version)]
pub struct Cli {
    /// Reduction budget per evaluation.
    #[arg(long, global = true, env = "EXT_REAL_FUEL", default_value_t = DEFAULT_FUEL)]
    pub fuel: u64,
    /// Numerals enumerated for the type N.
    #[arg(long, global = true, default_value_t = 4)]
    pub enum_bound: u64,
    /// Term-size bound for realizer search and enumerated pools.
    #[arg(long, global = true, default_value_t = 5)]
    pub size_bound: usize,
    /// Seed echoed into the report for randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normalise a closed term.
    #[command(after_help = "Example:\n  ext-real eval '(K (num 1) (num 2))'")]
    Eval {
        term: String,
        /// Answer ORACLE queries from this condition.
        #[arg(long)]
        cond: Option<String>,
    },
    /// Compile lambda abstractions into combinators.
    #[command(after_help = "Example:\n  ext-real abstract -x x -x y '(x y)'")]
    Abstract {
        term: String,
        /// Variable to abstract, outermost first.
        #[arg(short = 'x', long = "var", required = true)]
        vars: Vec<String>,
    },
    /// Type equality of two codes.
    #[command(after_help = "Example:\n  ext-real tyeq '(pi (nfin 2) (K (nat-code)))' '(pi (nfin 2) (K (nat-code)))'")]
    Tyeq { sigma: String, tau: String },
    /// Whether two elements are related by a type.
    #[command(after_help = "Example:\n  ext-real elemeq '(num 1)' '(num 1)' '(nfin 2)'")]
    Elemeq { a: String, b: String, sigma: String },
    /// Enumerate the equivalence classes of a type.
    #[command(name = "per-enum", after_help = "Example:\n  ext-real per-enum '(pi (nfin 2) (K (nfin-code 2)))'")]
    PerEnum { sigma: String },
    /// The name of an element of a type, or of the whole type.
    #[command(after_help = "Example:\n  ext-real name '(nfin 3)' '(num 2)'")]
    Name { sigma: String, element: Option<String> },
    /// Check a realizer pair for a formula, or search for one.
    #[command(after_help = "Examples:\n  ext-real realize '(eq (dot 1) (dot 1))' --a '(num 0)' --b '(num 0)'\n  ext-real realize '(eq (dot 0) (dot 1))' --search")]
    Realize {
        formula: String,
        #[arg(long, requires = "b")]
        a: Option<String>,
        #[arg(long, requires = "a")]
        b: Option<String>,
        /// Search the pool, then terms up to --size-bound.
        #[arg(long, conflicts_with = "a")]
        search: bool,
        /// Candidate pairs `(a b)`, one per line.
        #[arg(long)]
        pool: Option<PathBuf>,
        /// Names for unbounded quantifiers.
        #[arg(long)]
        universe: Option<PathBuf>,
        /// Treat the universe as all that matters for the query.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Print a library realizer and optionally verify it.
    #[command(name = "mk-realizer", after_help = "Example:\n  ext-real mk-realizer id --verify")]
    MkRealizer {
        /// One of o, fun, prod, sum, id, w, ac, rdc, canon_i, canon_e.
        name: String,
        #[arg(long)]
        verify: bool,
    },
    /// Decide a forcing statement at a condition.
    #[command(after_help = "Examples:\n  ext-real force '(mem (pair (check 0) (check 1)) g)' --cond '(cond ((0 1)))'\n  ext-real force '(all x (eq x x))'")]
    Force {
        formula: String,
        /// Condition file; the pool is its closure under compatible unions.
        #[arg(long)]
        pool: Option<PathBuf>,
        /// Use every condition with domain below KEYS and values up to MAX.
        #[arg(long, value_name = "KEYS:MAX", conflicts_with = "pool", default_value = "3:2")]
        full: String,
        #[arg(long, default_value = "(cond ())")]
        cond: String,
    },
    /// Realize an arithmetic sentence through its forcing notion.
    #[command(name = "goodman-demo", after_help = "Example:\n  ext-real goodman-demo --phi '(exists y omega (= (* y y) 9))'")]
    GoodmanDemo {
        #[arg(long)]
        phi: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok((text, code)) => {
            println!("{text}");
            if let Some(path) = &cli.report {
                if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(3);
                }
            }
            ExitCode::from(code as u8)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
