//! Command-line front end for `bracketopt`.
//!
//! Exit code 2 means the input was rejected. Exit code 3 means a seeding
//! fell short of its target or a claimed value was wrong.

pub mod bench;
pub mod family;

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use bracketopt::exact::{BruteForceOptions, DEFAULT_BRUTE_CAP};
use bracketopt::families::rng;
use bracketopt::io::{instance_from_json, instance_to_json, seeding_from_json};
use bracketopt::reductions::{self, construct1, construct2, decision_target, parse_dimacs, preprocess};
use bracketopt::{evaluate, solve, Algorithm, Instance, Value};

use crate::bench::{bench_instance, BenchRow};
use crate::family::{Family, FamilyArgs};

/// Environment variable overriding the largest bracket brute force accepts.
pub const BRUTE_CAP_VAR: &str = "BRACKETOPT_BRUTE_CAP";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] bracketopt::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    /// The command ran but its check failed.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "bracketopt", version, about = "Optimal seedings for knockout tournaments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated instance as JSON.
    Generate(GenerateArgs),
    /// Find a good seeding and print it with its value.
    Solve(SolveArgs),
    /// Check the value of a seeding and print every game.
    Verify(VerifyArgs),
    /// Run solvers on a family of instances and write CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Round-dependent reduction of a (2,3)-CNF file in DIMACS format.
    #[arg(long, value_name = "FILE")]
    pub reduce1: Option<PathBuf>,
    /// Round-oblivious reduction of a (2,3)-CNF file in DIMACS format.
    #[arg(long, value_name = "FILE")]
    pub reduce2: Option<PathBuf>,
    /// Shift the second reduction by 6 so that every value is positive.
    #[arg(long, requires = "reduce2")]
    pub nonneg: bool,
    /// Reduce the formula as given, without fixing rarely used variables first.
    #[arg(long)]
    pub no_preprocess: bool,
    /// Set the target to the value reached by satisfying K clauses.
    #[arg(long, value_name = "K")]
    pub sat: Option<usize>,
    /// Where to write the player roles of a reduction.
    #[arg(long, value_name = "FILE")]
    pub layout: Option<PathBuf>,
    /// Output file (default: stdout).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

/// An algorithm name or `auto`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgorithmChoice(pub Option<Algorithm>);

impl FromStr for AlgorithmChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(AlgorithmChoice(None));
        }
        s.parse().map(|a| AlgorithmChoice(Some(a)))
    }
}

impl fmt::Display for AlgorithmChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(a) => a.fmt(f),
            None => f.write_str("auto"),
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    /// brute, dp, greedy2, agree, fpt, matching or auto.
    #[arg(long, default_value = "auto")]
    pub algorithm: AlgorithmChoice,
    /// Exit with status 3 if the value found is below V; overrides the
    /// instance's own target.
    #[arg(long, value_name = "V", allow_negative_numbers = true)]
    pub target: Option<Value>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub instance: PathBuf,
    /// `{"order": [...]}`; a solve result works too.
    pub seeding: PathBuf,
    #[arg(allow_negative_numbers = true)]
    pub claimed: Value,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Number of instances.
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    /// With --tight, spread the scale evenly from SCALE up to this value.
    #[arg(long, value_name = "MAX")]
    pub scale_to: Option<Value>,
    /// Comma-separated algorithms, each run on every instance.
    #[arg(long, value_delimiter = ',', default_value = "auto")]
    pub algorithms: Vec<AlgorithmChoice>,
    /// Leave the wall_ms column empty so that output is reproducible.
    #[arg(long)]
    pub no_timing: bool,
    /// Output CSV file (default: stdout).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn load_instance(path: &Path) -> Result<Instance, CliError> {
    instance_from_json(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Brute force options with the cap taken from the environment.
pub fn brute_options() -> Result<BruteForceOptions, CliError> {
    let cap = match std::env::var(BRUTE_CAP_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{BRUTE_CAP_VAR}={s} is not a player count")))?,
        Err(_) => DEFAULT_BRUTE_CAP,
    };
    Ok(BruteForceOptions {
        cap,
        ..BruteForceOptions::default()
    })
}

fn generate(args: &GenerateArgs) -> Result<(), CliError> {
    let family = args.family.family()?;
    let sources = family.is_some() as usize + args.reduce1.is_some() as usize + args.reduce2.is_some() as usize;
    if sources != 1 {
        return Err(CliError::Usage(
            "choose exactly one of the family flags, --tight, --reduce1 and --reduce2".into(),
        ));
    }
    if let Some(family) = family {
        if args.sat.is_some() || args.layout.is_some() || args.no_preprocess {
            return Err(CliError::Usage("--sat, --layout and --no-preprocess apply to reductions".into()));
        }
        let (lo, hi) = args.family.range(family);
        let inst = family.generate(lo, hi, &mut rng(args.family.rng_seed))?;
        return write_output(args.out.as_deref(), &instance_to_json(&inst));
    }
    let (path, second) = match (&args.reduce1, &args.reduce2) {
        (Some(p), None) => (p, false),
        (None, Some(p)) => (p, true),
        _ => unreachable!("exactly one source"),
    };
    let formula = parse_dimacs(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let pre = if args.no_preprocess {
        None
    } else {
        Some(preprocess(&formula))
    };
    let reduced = pre.as_ref().map_or(&formula, |p| &p.formula);
    let (inst, layout) = if second {
        construct2(reduced, args.nonneg)?
    } else {
        construct1(reduced)
    };
    let offset = pre.as_ref().map_or(0, |p| p.sat_offset);
    let inst = match args.sat {
        Some(k) => {
            let target = decision_target(&layout, k.saturating_sub(offset), args.nonneg);
            inst.with_target(Some(target))
        }
        None => inst,
    };
    if let Some(lp) = &args.layout {
        write_output(Some(lp), &layout_json(&layout, pre.as_ref(), args.nonneg))?;
    }
    write_output(args.out.as_deref(), &instance_to_json(&inst))
}

/// Layout document with the preprocessing bookkeeping needed to map an
/// assignment back to the original formula.
fn layout_json(
    layout: &reductions::ReductionLayout,
    pre: Option<&reductions::Preprocessed>,
    nonneg: bool,
) -> String {
    let mut doc: serde_json::Value =
        serde_json::from_str(&layout.to_json()).expect("layout documents are valid JSON");
    doc["nonneg"] = nonneg.into();
    if let Some(p) = pre {
        doc["sat_offset"] = p.sat_offset.into();
        doc["var_map"] = serde_json::json!(p.var_map);
        doc["fixed"] = serde_json::json!(p.fixed);
    }
    let mut s = serde_json::to_string_pretty(&doc).expect("layout documents serialize");
    s.push('\n');
    s
}

fn solve_cmd(args: &SolveArgs) -> Result<(), CliError> {
    let inst = load_instance(&args.instance)?;
    let res = solve(&inst, args.algorithm.0, brute_options()?)?;
    write_output(None, &format!("{}\n", res.to_json()))?;
    match args.target.or(inst.target()) {
        Some(t) if res.value < t => Err(CliError::Failed(format!(
            "{} found value {}, below the target {t}",
            res.algorithm, res.value
        ))),
        _ => Ok(()),
    }
}

fn verify(args: &VerifyArgs) -> Result<(), CliError> {
    let inst = load_instance(&args.instance)?;
    let seeding = seeding_from_json(&read(&args.seeding)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", args.seeding.display())))?;
    let report = evaluate(&inst, &seeding)?;
    let mut text = String::new();
    for g in &report.games {
        text.push_str(&format!(
            "round {}: {} beats {}, value {}\n",
            g.round, g.winner, g.loser, g.value
        ));
    }
    text.push_str(&format!("total {}\n", report.total));
    write_output(None, &text)?;
    if report.total != args.claimed {
        return Err(CliError::Failed(format!(
            "seeding is worth {}, not the claimed {}",
            report.total, args.claimed
        )));
    }
    Ok(())
}

fn bench(args: &BenchArgs) -> Result<(), CliError> {
    let family = args
        .family
        .family()?
        .ok_or_else(|| CliError::Usage("bench needs an instance family".into()))?;
    if args.scale_to.is_some() && !matches!(family, Family::Tight(..)) {
        return Err(CliError::Usage("--scale-to needs --tight".into()));
    }
    let brute = brute_options()?;
    let (lo, hi) = args.family.range(family);
    let mut r = rng(args.family.rng_seed);
    let mut rows: Vec<BenchRow> = Vec::new();
    for i in 0..args.count {
        let family = match (family, args.scale_to) {
            (Family::Tight(n, from), Some(to)) => {
                let steps = (args.count.max(2) - 1) as Value;
                Family::Tight(n, from + (to - from) * i as Value / steps)
            }
            (f, _) => f,
        };
        let inst = family.generate(lo, hi, &mut r)?;
        let id = format!("{}-{i:03}", family.name());
        rows.extend(bench_instance(&id, &inst, &args.algorithms, brute, !args.no_timing)?);
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for row in &rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record([
            "instance_id", "n", "kind", "algorithm", "value", "optimum", "ratio_num", "ratio_den",
            "wall_ms",
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    write_output(args.out.as_deref(), &String::from_utf8(bytes).expect("CSV is UTF-8"))
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Generate(a) => generate(a),
        Command::Solve(a) => solve_cmd(a),
        Command::Verify(a) => verify(a),
        Command::Bench(a) => bench(a),
    }
}

/// Runs the process command line; errors become exit codes. Argument errors
/// exit with 2 through clap.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bracketopt: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
