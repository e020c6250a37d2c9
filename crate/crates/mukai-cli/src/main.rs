//! `mukai` — command-line front end for the exact hyper-Kähler lattice
//! toolkit.
//!
//! Exit codes: 0 on success, 1 when a scenario assertion fails, 2 on
//! malformed input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mukai_lattice::error::Error;
use mukai_lattice::eval::eval_document;
use mukai_lattice::expr;
use mukai_lattice::lagrangian::{reducible_ext, BettiVector, LagrangianPair};
use mukai_lattice::ratio::parse_ratio;
use mukai_lattice::scenario::{check_manifold, run_og10_scenario, ScenarioConfig};
use mukai_lattice::stability::{slope_poly, SheafNumerics};

#[derive(Parser)]
#[command(name = "mukai", version, about = "exact lattice and cohomology computations for hyper-Kähler fourfolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate and describe a manifold configuration file
    Manifold {
        #[command(subcommand)]
        action: ManifoldAction,
    },
    /// Evaluate a single operation from a JSON expression file
    Eval {
        /// Path to the expression document
        file: PathBuf,
    },
    /// Run a named end-to-end scenario
    Scenario {
        #[command(subcommand)]
        which: ScenarioName,
    },
    /// Ext-dimension calculus for Lagrangian subvarieties
    Ext {
        #[command(subcommand)]
        action: ExtAction,
    },
    /// Slope polynomial of a sheaf for polarizations f + eps*l
    Slope(SlopeArgs),
}

#[derive(Subcommand)]
enum ManifoldAction {
    /// Parse a config file, validate every invariant, and describe it
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum ScenarioName {
    /// The rank-five atomic bundle scenario on the degree-2 moduli fourfold
    Og10 {
        /// Genus of the curve driving the Ext-dimension calculus
        #[arg(long)]
        genus: Option<u64>,
        /// Write the JSON report here (text always goes to stdout)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Configuration file overriding the built-in defaults
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExtAction {
    /// Ext dimensions of a reducible normal-crossing Lagrangian
    Lagrangian {
        /// Surface Betti numbers b0..b4, comma separated
        #[arg(long, value_name = "a,b,c,d,e")]
        z2_betti: String,
        /// Curve Betti numbers b0..b2, comma separated
        #[arg(long, value_name = "a,b,c")]
        w_betti: String,
        /// Pushforward ranks in degrees 0,1,2, comma separated
        #[arg(long, value_name = "a,b,c")]
        push_ranks: String,
    },
}

#[derive(Args)]
struct SlopeArgs {
    /// First Chern class, e.g. "15f" or "lambda + 2f"
    #[arg(long)]
    c1: String,
    /// Rank as "p/q"
    #[arg(long)]
    rank: String,
    /// Direction class l in h = f + eps*l, e.g. "lambda"
    #[arg(long)]
    l: String,
    /// Isotropic fibration class (defaults to "f")
    #[arg(long, default_value = "f")]
    f: String,
    /// Configuration file overriding the built-in defaults
    #[arg(long)]
    config: Option<PathBuf>,
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn load_config(path: Option<&Path>) -> Result<ScenarioConfig, Error> {
    match path {
        Some(p) => ScenarioConfig::from_json(&read_file(p)?),
        None => Ok(ScenarioConfig::default()),
    }
}

fn parse_csv(label: &str, raw: &str) -> Result<Vec<u64>, Error> {
    raw.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("{label}: '{t}' is not a non-negative integer")))
        })
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Manifold { action } => match action {
            ManifoldAction::Check { file } => {
                let cfg = ScenarioConfig::from_json(&read_file(&file)?)?;
                println!("{}", check_manifold(&cfg)?);
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Eval { file } => {
            println!("{}", eval_document(&read_file(&file)?)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Scenario { which } => match which {
            ScenarioName::Og10 { genus, out, config } => {
                let mut cfg = load_config(config.as_deref())?;
                if let Some(g) = genus {
                    cfg.genus = g;
                }
                let report = run_og10_scenario(&cfg)?;
                if let Some(path) = out {
                    std::fs::write(&path, report.to_json())
                        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
                }
                print!("{}", report.render_text());
                Ok(if report.all_passed() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
        },
        Command::Ext { action } => match action {
            ExtAction::Lagrangian {
                z2_betti,
                w_betti,
                push_ranks,
            } => {
                let ranks = parse_csv("push-ranks", &push_ranks)?;
                if ranks.len() != 3 {
                    return Err(Error::InvalidInput(
                        "push-ranks needs exactly 3 entries".into(),
                    ));
                }
                let pair = LagrangianPair::new(
                    BettiVector::new(parse_csv("z2-betti", &z2_betti)?),
                    BettiVector::new(parse_csv("w-betti", &w_betti)?),
                    [ranks[0], ranks[1], ranks[2]],
                )?;
                let dims = reducible_ext(&pair)?;
                let cells: Vec<String> = dims.dims().iter().map(u64::to_string).collect();
                println!("{}", cells.join(","));
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Slope(args) => {
            let cfg = load_config(args.config.as_deref())?;
            let m = cfg.build_manifold()?;
            let c1 = expr::parse_h2(m.ns(), &args.c1)?;
            let l = expr::parse_h2(m.ns(), &args.l)?;
            let f = expr::parse_h2(m.ns(), &args.f)?;
            let sheaf = SheafNumerics::new(parse_ratio(&args.rank)?, c1)?;
            println!("{}", slope_poly(&m, &sheaf, &f, &l)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
