//! Command-line front end. Permutations are written in one-line notation,
//! space-separated ("2 4 1 3"); a compact digit string ("2413") is accepted
//! on input for sizes up to 9. All outputs are deterministic and sorted.
//!
//! Exit codes: 0 on success (and on a wreath run that terminated), 2 when a
//! wreath run stopped at its cap with a live frontier, 3 when verification
//! found a counterexample, 64 on usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use simperm::oracle::{self, PropertyId};
use simperm::wreath;
use simperm::{
    build_poset, enumerate_simples, exceptional_perm, find_chain, outdegree_stats,
    parse_permutation, pattern_closure, stats_to_csv, Basis, Error, ExceptionalDescriptor,
    ExceptionalFamily, Permutation, PosetGraph,
};

const EXIT_OK: u8 = 0;
const EXIT_CAP_REACHED: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "simperm",
    version,
    about = "Simple permutations, their containment poset, and wreath-closed class generation",
    long_about = None,
    after_help = "Permutation format: space-separated values in one-line notation, e.g. \
\"2 7 4 8 1 6 3 5\"; a compact digit string like \"2413\" is accepted when every value \
is a single digit."
)]
struct Cli {
    /// Worker threads for level generation (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the simple permutations of one size
    Enumerate {
        n: usize,
        /// Print only how many there are
        #[arg(long)]
        count_only: bool,
    },
    /// Print one exceptional permutation
    Exceptional {
        /// Family index, 1 to 4
        #[arg(long = "type", value_name = "K")]
        family: u8,
        /// Half-size; the permutation has size 2m
        #[arg(long)]
        m: usize,
    },
    /// Export the poset of all simple permutations up to a size
    Poset {
        max_n: usize,
        #[command(flatten)]
        output: GraphOutput,
    },
    /// Export the sub-poset of simple patterns of one permutation
    Closure {
        sigma: String,
        #[command(flatten)]
        output: GraphOutput,
    },
    /// Print a descending chain between two comparable simple permutations
    Chain { sigma: String, pi: String },
    /// Export per-size out-degree statistics as CSV
    Stats {
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate the simple permutations of an avoidance class
    Wreath {
        /// File with one basis permutation per line (# comments allowed)
        #[arg(long)]
        basis: PathBuf,
        /// Largest size to generate; without it, generation must terminate
        #[arg(long)]
        cap: Option<usize>,
        /// Accept non-simple basis elements and test avoidance directly
        #[arg(long, requires = "cap")]
        general: bool,
        /// Output format
        #[arg(long = "out", value_enum, default_value_t = WreathFormat::Text)]
        out: WreathFormat,
    },
    /// Run exhaustive structural checks
    Verify {
        /// Property id (see --list)
        #[arg(long, conflicts_with_all = ["all", "list"])]
        property: Option<String>,
        /// Override the checked size range
        #[arg(long, requires = "property")]
        max_n: Option<usize>,
        /// Run the whole default suite
        #[arg(long, conflicts_with = "list")]
        all: bool,
        /// List the available property ids
        #[arg(long)]
        list: bool,
        /// Emit JSON reports
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct GraphOutput {
    #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
    format: GraphFormat,
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WreathFormat {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(err) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {err}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::CapRequired { .. } => EXIT_CAP_REACHED,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Enumerate { n, count_only } => {
            let level: Vec<Permutation> = if n >= 4 {
                enumerate_simples(n)?.remove(&n).unwrap_or_default()
            } else {
                // small sizes are cheap enough for the brute-force reference
                oracle::brute_simples(n)?
            };
            if count_only {
                println!("{}", level.len());
            } else {
                for p in level {
                    println!("{p}");
                }
            }
            Ok(EXIT_OK)
        }
        Command::Exceptional { family, m } => {
            let family = ExceptionalFamily::from_index(family)?;
            let p = exceptional_perm(ExceptionalDescriptor::new(family, m)?)?;
            println!("{p}");
            Ok(EXIT_OK)
        }
        Command::Poset { max_n, output } => {
            let graph = build_poset(max_n)?;
            emit_graph(&graph, &output)?;
            Ok(EXIT_OK)
        }
        Command::Closure { sigma, output } => {
            let sigma = parse_permutation(&sigma)?;
            let graph = pattern_closure(&sigma)?;
            emit_graph(&graph, &output)?;
            Ok(EXIT_OK)
        }
        Command::Chain { sigma, pi } => {
            let sigma = parse_permutation(&sigma)?;
            let pi = parse_permutation(&pi)?;
            let chain = find_chain(&sigma, &pi)?;
            for p in chain.permutations() {
                println!("{p}");
            }
            Ok(EXIT_OK)
        }
        Command::Stats { max_n, out } => {
            let csv = stats_to_csv(&outdegree_stats(max_n)?);
            write_out(out.as_deref(), &csv)?;
            Ok(EXIT_OK)
        }
        Command::Wreath {
            basis,
            cap,
            general,
            out,
        } => {
            let text = fs::read_to_string(&basis)
                .map_err(|e| Error::MalformedInput(format!("{}: {e}", basis.display())))?;
            let perms = wreath::parse_basis_text(&text)?;
            let result = if general {
                wreath::generate_general(&perms, cap.expect("clap enforces --cap"))?
            } else {
                wreath::generate(&Basis::new(perms)?, cap)?
            };
            match out {
                WreathFormat::Text => print!("{}", result.to_text()),
                WreathFormat::Json => println!("{}", result.to_json_string()),
            }
            Ok(if result.terminated() {
                EXIT_OK
            } else {
                EXIT_CAP_REACHED
            })
        }
        Command::Verify {
            property,
            max_n,
            all,
            list,
            json,
        } => {
            if list {
                for id in PropertyId::ALL {
                    println!("{} (default max size {})", id.slug(), id.default_max_n());
                }
                return Ok(EXIT_OK);
            }
            let reports = if all {
                oracle::run_default_suite()?
            } else if let Some(name) = property {
                let id = PropertyId::parse(&name)?;
                let max_n = max_n.unwrap_or_else(|| id.default_max_n());
                vec![oracle::run_property(id, max_n)?]
            } else {
                return Err(Error::MalformedInput(
                    "verify needs --property, --all or --list".into(),
                ));
            };
            let mut failed = false;
            for report in &reports {
                if json {
                    println!("{}", serde_json::to_string(&report.to_json()).unwrap());
                } else {
                    println!("{report}");
                }
                failed |= !report.passed();
            }
            Ok(if failed { EXIT_COUNTEREXAMPLE } else { EXIT_OK })
        }
    }
}

fn emit_graph(graph: &PosetGraph, output: &GraphOutput) -> Result<(), Error> {
    let rendered = match output.format {
        GraphFormat::Dot => graph.to_dot(),
        GraphFormat::Json => {
            let mut s = graph.to_json_string();
            s.push('\n');
            s
        }
    };
    write_out(output.out.as_deref(), &rendered)
}

fn write_out(path: Option<&std::path::Path>, content: &str) -> Result<(), Error> {
    match path {
        Some(path) => fs::write(path, content)
            .map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
