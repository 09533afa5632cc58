use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mms::commands::{self, EnergiesArgs, PoleChoice, ScanArgs};
use mms::error::{exit, CliError, Result};
use mms::output::sig12;
use mms::selftest::{self, Faults};
use mms_core::spaces::{MeasureRule, SpaceSpec};

/// Cut energies, Riesz potentials and Poincare scans on metric measure graphs.
#[derive(Parser)]
#[command(name = "mms", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a benchmark space as a JSON graph file.
    Gen(GenArgs),
    /// Energy row for a separating set.
    Energies(EnergiesCli),
    /// Minimum cut energy and its optimal separating set.
    Mincut(PoleArgs),
    /// Cut constant versus function ratios over many pole pairs.
    PiScan(ScanCli),
    /// Run the embedded oracle checks.
    Selftest {
        #[arg(long, hide = true, value_enum)]
        inject_fault: Option<Fault>,
    },
    /// Per-vertex Riesz potential and measure.
    RieszDump(PoleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Fault {
    Capacity,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Path,
    Grid,
    WeightedGrid,
    Carpet,
    Dumbbell,
    PointCloud,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Unit,
    Density,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Vertices per side (grid, dumbbell), path length, or point count.
    #[arg(long, default_value_t = 16)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Measure weight exponent for weighted grids.
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long, default_value_t = 3)]
    level: u32,
    #[arg(long, default_value_t = 4)]
    neck_len: usize,
    #[arg(long, default_value_t = 1)]
    neck_width: usize,
    #[arg(long, default_value_t = 0.2)]
    epsilon: f64,
    #[arg(long, value_enum, default_value_t = Rule::Unit)]
    rule: Rule,
    /// Probability of each extra edge in random graphs.
    #[arg(long, default_value_t = 0.1)]
    extra: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PoleArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
    #[arg(long = "L", default_value_t = 2.0)]
    l: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnergiesCli {
    #[arg(long)]
    graph: PathBuf,
    /// Separating set: JSON array of ids or {"x", "y", "omega"}.
    #[arg(long)]
    omega: PathBuf,
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    y: Option<String>,
    #[arg(long = "L", default_value_t = 2.0)]
    l: f64,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanCli {
    #[arg(long)]
    graph: PathBuf,
    /// Pole x of each explicit pair (repeat, matched with --y).
    #[arg(long)]
    x: Vec<String>,
    #[arg(long)]
    y: Vec<String>,
    /// Sample this many pole pairs instead.
    #[arg(long, conflicts_with_all = ["x", "y", "diameter"])]
    random: Option<usize>,
    /// Use the pair realizing the diameter.
    #[arg(long, conflicts_with_all = ["x", "y"])]
    diameter: bool,
    #[arg(long = "L", default_value_t = 2.0)]
    l: f64,
    /// Number of test functions.
    #[arg(long, default_value_t = 12)]
    suite: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads, 0 for all cores.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Scan CSV; the summary goes next to it with a .json extension.
    #[arg(long)]
    out: PathBuf,
}

fn space_spec(a: &GenArgs) -> SpaceSpec {
    match a.kind {
        Kind::Path => SpaceSpec::Path { n: a.n },
        Kind::Grid => SpaceSpec::Grid { n: a.n, dim: a.dim, alpha: 0.0 },
        Kind::WeightedGrid => SpaceSpec::Grid { n: a.n, dim: a.dim, alpha: a.alpha },
        Kind::Carpet => SpaceSpec::Carpet { level: a.level },
        Kind::Dumbbell => SpaceSpec::Dumbbell { n: a.n, neck_len: a.neck_len, neck_width: a.neck_width },
        Kind::PointCloud => SpaceSpec::PointCloud {
            n: a.n,
            dim: a.dim,
            epsilon: a.epsilon,
            rule: match a.rule {
                Rule::Unit => MeasureRule::Unit,
                Rule::Density => MeasureRule::LocalDensity,
            },
            seed: a.seed,
        },
        Kind::Random => SpaceSpec::Random { n: a.n, extra: a.extra, seed: a.seed },
    }
}

fn pole_choice(a: &ScanCli) -> Result<PoleChoice> {
    if let Some(k) = a.random {
        return Ok(PoleChoice::Random(k));
    }
    if a.diameter {
        return Ok(PoleChoice::Diameter);
    }
    if a.x.len() != a.y.len() {
        return Err(CliError::BadParam(format!("{} --x values but {} --y values", a.x.len(), a.y.len())));
    }
    Ok(PoleChoice::Explicit(a.x.iter().cloned().zip(a.y.iter().cloned()).collect()))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen(a) => {
            let n = commands::gen(&space_spec(&a), &a.out)?;
            println!("{n} vertices written to {}", a.out.display());
        }
        Command::Energies(a) => {
            let row = commands::energies(&EnergiesArgs {
                graph: &a.graph,
                x: a.x.as_deref(),
                y: a.y.as_deref(),
                omega: &a.omega,
                l: a.l,
                p: a.p,
                out: a.out.as_deref(),
            })?;
            if a.out.is_some() {
                println!("{}", row.join(","));
            }
        }
        Command::Mincut(a) => {
            let w = commands::mincut(&a.graph, &a.x, &a.y, a.l, a.out.as_deref())?;
            println!("{}", sig12(w.value));
        }
        Command::PiScan(a) => {
            let s = commands::pi_scan(&ScanArgs {
                graph: &a.graph,
                poles: pole_choice(&a)?,
                l: a.l,
                suite_size: a.suite,
                seed: a.seed,
                threads: a.threads,
                out: &a.out,
            })?;
            println!(
                "{} pairs, min c_cut {}, max c_fn {}",
                s.n_pairs,
                sig12(s.min_c_cut),
                sig12(s.max_c_fn)
            );
        }
        Command::Selftest { inject_fault } => {
            let faults = Faults { capacity: matches!(inject_fault, Some(Fault::Capacity)) };
            let checks = selftest::run(faults);
            for c in &checks {
                println!("{} {}: {}", if c.pass { "ok  " } else { "FAIL" }, c.name, c.detail);
            }
            if let Some(c) = checks.iter().find(|c| !c.pass) {
                return Err(CliError::Selftest(format!("{}: {}", c.name, c.detail)));
            }
        }
        Command::RieszDump(a) => commands::riesz_dump(&a.graph, &a.x, &a.y, a.l, a.out.as_deref())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("MMS_LOG", "warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
