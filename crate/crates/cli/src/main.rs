use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use clashfree_cli::format::parse_permutation;
use clashfree_cli::parallel::sigma_parallel;
use clashfree_cli::random::random_permutation;
use clashfree_cli::CliError;
use clashfree_core::search::Regime;
use clashfree_core::{
    construct_multi, construct_pairwise, cycle_walk, find_multi_clashes, oracle_clashes,
    render_svg, sigma_bounds, sigma_bounds_multi, ClashWitness, ConstructionParams, OracleLimit,
    Permutation, SearchLimits, SvgOptions,
};
use serde::Serialize;

/// Clash-free permutations of Z_n and their torus rectangle packings.
///
/// Exit codes: 0 success (or clash-free), 1 clash found, 2 bad parameters
/// or input, 3 size cap exceeded, 4 internal error.
#[derive(Parser)]
#[command(name = "clashfree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a permutation reaching the lower bound for (n, k[, r]).
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// Check a permutation for (s, k, r)-clashes.
    Verify(VerifyArgs),
    /// Compute sigma exactly by exhaustive search (small n only).
    Sigma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Largest n the search accepts.
        #[arg(long, default_value_t = SearchLimits::default().max_n)]
        cap: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Print the known interval for sigma without searching.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// Draw the s x k rectangles on the n x n torus as SVG.
    Render {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: usize,
        /// Coverage threshold used by the heatmap.
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 20)]
        cell_px: u32,
        /// Shade points covered more than r times.
        #[arg(long)]
        heatmap: bool,
        #[arg(long)]
        no_grid: bool,
        /// Write to FILE instead of standard output.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Show the cycle matrix and the walk through it for (n, s).
    Matrix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Permutation text file; standard input when omitted.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// List every clash by subset enumeration instead of one per window.
    #[arg(long)]
    all: bool,
    /// Verify a random permutation of Z_N instead of reading one.
    #[arg(long, value_name = "N", requires = "seed")]
    random: Option<usize>,
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
}

fn read_input(input: &InputArgs) -> Result<Permutation, CliError> {
    let text = match &input.input {
        Some(path) => fs::read_to_string(path).map_err(|source| CliError::Io {
            context: format!("reading {}", path.display()),
            source,
        })?,
        None => {
            let mut buf = String::new();
            io::stdin()
                .read_to_string(&mut buf)
                .map_err(|source| CliError::Io {
                    context: "reading standard input".into(),
                    source,
                })?;
            buf
        }
    };
    parse_permutation(&text)
}

fn emit<T: Serialize>(value: &T) -> Result<(), CliError> {
    let line = serde_json::to_string(value).expect("output types serialize");
    let mut out = io::stdout().lock();
    writeln!(out, "{line}").map_err(|source| CliError::Io {
        context: "writing standard output".into(),
        source,
    })
}

#[derive(Serialize)]
struct ConstructOut {
    n: usize,
    k: usize,
    r: usize,
    s: usize,
    d: Option<usize>,
    ell: Option<usize>,
    trivial: bool,
    perm: Vec<usize>,
}

#[derive(Serialize)]
struct WitnessOut {
    subset: Vec<usize>,
    domain_span: usize,
    image_span: usize,
}

impl From<&ClashWitness> for WitnessOut {
    fn from(w: &ClashWitness) -> Self {
        WitnessOut {
            subset: w.subset.members().to_vec(),
            domain_span: w.domain_span,
            image_span: w.image_span,
        }
    }
}

#[derive(Serialize)]
struct VerifyOut {
    n: usize,
    s: usize,
    k: usize,
    r: usize,
    clash_free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    perm: Option<Vec<usize>>,
    witnesses: Vec<WitnessOut>,
}

#[derive(Serialize)]
struct SigmaOut {
    n: usize,
    k: usize,
    r: usize,
    value: usize,
    lower: Option<usize>,
    upper: Option<usize>,
    above_upper_feasible: Option<bool>,
    regime: &'static str,
    nodes_explored: u64,
    witness: Vec<usize>,
}

#[derive(Serialize)]
struct BoundsOut {
    n: usize,
    k: usize,
    r: usize,
    lower: usize,
    upper: usize,
}

#[derive(Serialize)]
struct MatrixOut {
    n: usize,
    s: usize,
    d: usize,
    ell: usize,
    rows: Vec<Vec<usize>>,
    moves: Vec<&'static str>,
    walk: Vec<usize>,
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::UnitK => "k_eq_1",
        Regime::KAtLeastN => "k_ge_n",
        Regime::RAtLeastN => "r_ge_n",
        Regime::RAtLeastK => "r_ge_k",
        Regime::Searched => "search",
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Construct { n, k, r } => {
            let c = if r == 1 {
                construct_pairwise(n, k)?
            } else {
                construct_multi(n, k, r)?
            };
            emit(&ConstructOut {
                n: c.n,
                k: c.k,
                r: c.r,
                s: c.s,
                d: c.params.map(|p| p.d),
                ell: c.params.map(|p| p.ell),
                trivial: c.trivial,
                perm: c.perm.into_vec(),
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => verify(args),
        Command::Sigma {
            n,
            k,
            r,
            cap,
            threads,
        } => {
            let res = sigma_parallel(n, k, r, SearchLimits { max_n: cap }, threads.max(1))?;
            emit(&SigmaOut {
                n,
                k,
                r,
                value: res.value,
                lower: res.bounds.map(|b| b.lower),
                upper: res.bounds.map(|b| b.upper),
                above_upper_feasible: res.above_upper_feasible,
                regime: regime_name(res.regime),
                nodes_explored: res.nodes_explored,
                witness: res.witness.into_vec(),
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { n, k, r } => {
            let b = if r == 1 {
                sigma_bounds(n, k)?
            } else {
                sigma_bounds_multi(n, k, r)?
            };
            emit(&BoundsOut {
                n,
                k,
                r,
                lower: b.lower,
                upper: b.upper,
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Render {
            input,
            s,
            k,
            r,
            cell_px,
            heatmap,
            no_grid,
            out,
        } => {
            let perm = read_input(&input)?;
            let opts = SvgOptions {
                cell_px,
                grid: !no_grid,
                heatmap,
                threshold: r,
            };
            let svg = render_svg(&perm, s, k, &opts)?;
            match out {
                Some(path) => fs::write(&path, svg).map_err(|source| CliError::Io {
                    context: format!("writing {}", path.display()),
                    source,
                })?,
                None => io::stdout()
                    .lock()
                    .write_all(svg.as_bytes())
                    .map_err(|source| CliError::Io {
                        context: "writing standard output".into(),
                        source,
                    })?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Matrix { n, s } => {
            let params = ConstructionParams::new(n, s)?;
            let walk = cycle_walk(&params)?;
            emit(&MatrixOut {
                n,
                s,
                d: params.d,
                ell: params.ell,
                rows: params.matrix_rows(),
                moves: walk.moves.iter().map(|m| m.symbol()).collect(),
                walk: walk.values(),
            })?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let (perm, show_perm) = match (args.random, args.seed) {
        (Some(n), Some(seed)) => (random_permutation(n, seed)?, true),
        _ => (read_input(&args.input)?, false),
    };
    let (s, k, r) = (args.s, args.k, args.r);
    let witnesses = if args.all {
        oracle_clashes(&perm, s, k, r, OracleLimit::default())?
    } else {
        find_multi_clashes(&perm, s, k, r)?
    };
    let clash_free = witnesses.is_empty();
    emit(&VerifyOut {
        n: perm.n(),
        s,
        k,
        r,
        clash_free,
        perm: show_perm.then(|| perm.as_slice().to_vec()),
        witnesses: witnesses.iter().map(WitnessOut::from).collect(),
    })?;
    Ok(if clash_free {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
