//! `prsat`: command-line access to membership, saturation and the known
//! constructions. Exit codes: 0 holds or exact, 1 fails, 2 unknown, 64 usage.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use prsat_core::cache::VerdictCache;
use prsat_core::report::RunReport;
use prsat_core::reproduce::Profile;
use prsat_core::saturation::SatKind;

use commands::Ctx;
use config::{FileConfig, FlagConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Holds = 0,
    Fails = 1,
    Unknown = 2,
    Usage = 64,
}

#[derive(Debug)]
pub struct UsageError(pub String);

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(prsat_core::Error),
}

impl From<UsageError> for CliError {
    fn from(e: UsageError) -> Self {
        CliError::Usage(e.0)
    }
}

impl From<prsat_core::Error> for CliError {
    fn from(e: prsat_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit(&self) -> Exit {
        match self {
            CliError::Core(prsat_core::Error::Budget { .. }) => Exit::Unknown,
            _ => Exit::Usage,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => e.fmt(f),
        }
    }
}

/// Graphs are graph6 strings, `@path` files (graph6 or an edge list), or
/// names such as K6, C7, P4, K2,4, 2K2, K3uK2 or K3+(K3uK1).
#[derive(Parser, Debug)]
#[command(name = "prsat", version, about = "Proper rainbow saturation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_name = "N")]
    budget_nodes: Option<u64>,
    #[arg(long, global = true, value_name = "S")]
    budget_secs: Option<f64>,
    /// Sampling trials after an exhausted exact search (0 disables sampling).
    #[arg(long, global = true, value_name = "T")]
    trials: Option<u64>,
    #[arg(long, global = true, value_name = "R")]
    seed: Option<u64>,
    /// Verdict cache file; PRSAT_CACHE is used when neither this flag nor
    /// the config file names one.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    /// Print the report as a single JSON object.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, value_name = "W")]
    threads: Option<usize>,
    /// key=value file with budget_nodes, budget_secs, trials, seed, threads, cache.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Is G in F*(H), i.e. is every proper colouring of G rainbow-H-containing?
    Member { g: String, h: String },
    /// Find a proper colouring of G with no rainbow H.
    Colour { g: String, h: String },
    /// Test G for one saturation notion: prsat, sat, ssat or wsat.
    Saturated { kind: SatKind, g: String, h: String },
    /// Least edge count of a saturated graph on n vertices.
    Number { kind: SatKind, n: usize, h: String },
    /// Build a construction, e.g. `construct k4_saturated n=7`.
    Construct {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Build a construction and check its defining property.
    VerifyConstruction {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Least n with K_n in F*(H).
    Ramsey {
        h: String,
        #[arg(long, value_name = "N")]
        nmax: usize,
    },
    /// Minimal members of F*(H) up to the given order and size.
    Minimal {
        h: String,
        #[arg(long, default_value_t = 7)]
        max_order: usize,
        #[arg(long, default_value_t = 8)]
        max_edges: usize,
    },
    /// Run the reproduction table.
    VerifyPaper {
        #[arg(long, default_value = "quick", value_parser = parse_profile)]
        profile: Profile,
    },
}

fn parse_profile(s: &str) -> Result<Profile, String> {
    s.parse().map_err(|e: prsat_core::Error| e.to_string())
}

fn run(cli: Cli) -> Result<(RunReport, Exit), CliError> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let flags = FlagConfig {
        budget_nodes: cli.budget_nodes,
        budget_secs: cli.budget_secs,
        trials: cli.trials,
        seed: cli.seed,
        threads: cli.threads,
        cache: cli.cache.clone(),
    };
    let resolved = config::resolve(&flags, &file, config::env_cache())?;
    let cache = match &resolved.cache {
        Some(p) => Some(VerdictCache::open(p).map_err(|e| CliError::Usage(format!("cache {}: {e}", p.display())))?),
        None => None,
    };
    let mut ctx = Ctx {
        cfg: resolved.search,
        cache,
    };
    let ctx = &mut ctx;
    match &cli.command {
        Command::Member { g, h } => commands::member(ctx, g, h),
        Command::Colour { g, h } => commands::colour(ctx, g, h),
        Command::Saturated { kind, g, h } => commands::saturated(ctx, *kind, g, h),
        Command::Number { kind, n, h } => commands::number(ctx, *kind, *n, h),
        Command::Construct { spec } => commands::construct(ctx, spec),
        Command::VerifyConstruction { spec } => commands::verify_construction(ctx, spec),
        Command::Ramsey { h, nmax } => commands::ramsey(ctx, h, *nmax),
        Command::Minimal {
            h,
            max_order,
            max_edges,
        } => commands::minimal(ctx, h, *max_order, *max_edges),
        Command::VerifyPaper { profile } => commands::verify_table(ctx, *profile),
    }
}

fn print_text(r: &RunReport) {
    println!("{}: {} ({})", r.command, r.verdict, r.mode);
    if let Some(v) = r.value {
        println!("value: {v}");
    }
    if let Some(w) = &r.witness {
        println!("witness: {w}");
    }
    if let Some(c) = &r.certificate {
        let parts: Vec<String> = c
            .edges
            .iter()
            .zip(&c.colours)
            .map(|((a, b), col)| format!("{a}-{b}:{col}"))
            .collect();
        println!("certificate: {}", parts.join(" "));
    }
    if r.cached {
        println!("cached: yes");
    }
    if let Some(rows) = r.details.get("rows").and_then(|v| v.as_array()) {
        for row in rows {
            let s = |k: &str| row.get(k).and_then(|v| v.as_str()).unwrap_or("");
            println!(
                "{:<13} {:>7} ms  {}\n    expected: {}\n    computed: {}",
                s("status"),
                row.get("elapsed_ms").and_then(|v| v.as_u64()).unwrap_or(0),
                s("id"),
                s("expected"),
                s("computed"),
            );
            if !s("note").is_empty() {
                println!("    note: {}", s("note"));
            }
        }
    }
    println!("elapsed: {} ms", r.elapsed_ms);
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Exit::Usage } else { Exit::Holds };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let json = cli.json;
    let timer = std::time::Instant::now();
    match run(cli) {
        Ok((mut report, exit)) => {
            report.elapsed_ms = timer.elapsed().as_millis() as u64;
            if json {
                println!("{}", report.to_json());
            } else {
                print_text(&report);
            }
            ExitCode::from(exit as u8)
        }
        Err(e) => {
            eprintln!("prsat: {e}");
            ExitCode::from(e.exit() as u8)
        }
    }
}
