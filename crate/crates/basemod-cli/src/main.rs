//! `basemod` — base-family modulus of matroids from the command line.
//!
//! Three subcommands: `analyze` emits a deterministic JSON report (optionally
//! with CSV side tables), `verify` runs the invariant suite one line per
//! check, and `random` prints a seeded pseudorandom instance for fuzzing.
//!
//! Exit codes: 0 success, 2 bad input (parse or domain), 3 resource cap
//! exceeded, 4 internal cross-check failure.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use basemod::matroid::Caps;
use basemod::parse::{self, Format};
use basemod::suite::Status;
use basemod::{random, suite, Error, Rat, Result};
use clap::{Args, Parser, Subcommand};

mod report;

#[derive(Parser)]
#[command(
    name = "basemod",
    version,
    about = "Base-family modulus of matroids: optimal densities, principal partitions, and blocking duality"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a matroid and print a JSON report to stdout.
    Analyze(AnalyzeArgs),
    /// Run the invariant suite against a matroid, one line per check.
    Verify(VerifyArgs),
    /// Print a deterministic pseudorandom instance for the given seed.
    Random(RandomArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input file, or `-` for stdin.
    input: String,

    /// Input format: graph, linear, uniform, or bases.
    #[arg(long, default_value = "graph")]
    format: Format,

    /// Enumeration caps, e.g. `subsets=1048576,bases=1000000`.
    #[arg(long, value_parser = parse_caps, default_value = "")]
    caps: Caps,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Comma-separated exponents for the p-modulus table, each > 1 (e.g. `2,3,3/2`).
    #[arg(long, default_value = "2")]
    p: String,

    /// Directory for CSV exports (eta_star.csv, rho_star.csv, theta_family.csv).
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Args)]
struct RandomArgs {
    /// PRNG seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Instance family: graphic or linear.
    #[arg(long, default_value = "graphic", value_parser = ["graphic", "linear"])]
    family: String,

    /// Edge count (graphic) or column count (linear).
    #[arg(long, default_value_t = 6)]
    size: usize,
}

/// `subsets=N,bases=N` with both parts optional; empty string keeps defaults.
fn parse_caps(s: &str) -> std::result::Result<Caps, String> {
    let mut caps = Caps::default();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let Some((key, value)) = part.split_once('=') else {
            return Err(format!("bad caps entry {part:?}; expected key=value"));
        };
        let n: u64 = value
            .trim()
            .parse()
            .map_err(|_| format!("bad caps value {value:?}"))?;
        match key.trim() {
            "subsets" => caps.max_subsets = n,
            "bases" => caps.max_bases = n as usize,
            other => return Err(format!("unknown cap {other:?}; expected subsets or bases")),
        }
    }
    Ok(caps)
}

/// Comma-separated rational exponents, each required to exceed 1.
fn parse_p_list(s: &str) -> Result<Vec<Rat>> {
    let mut ps = Vec::new();
    for tok in s.split(',').filter(|t| !t.trim().is_empty()) {
        let p = parse::parse_rat(tok.trim())
            .ok_or_else(|| Error::Domain(format!("bad exponent {tok:?}")))?;
        if p <= basemod::rint(1) {
            return Err(Error::Domain(format!("exponent {tok} is not > 1")));
        }
        if !ps.contains(&p) {
            ps.push(p);
        }
    }
    if ps.is_empty() {
        return Err(Error::Domain("empty exponent list".into()));
    }
    Ok(ps)
}

/// Write to stdout in one shot; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(Error::Domain(format!("writing stdout: {e}"))),
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Domain(format!("reading stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Domain(format!("reading {path}: {e}")))
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Graph => "graph",
        Format::Linear => "linear",
        Format::Uniform => "uniform",
        Format::Bases => "bases",
    }
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<()> {
    let text = read_input(&a.input.input)?;
    let m = parse::parse(a.input.format, &text)?;
    let ps = parse_p_list(&a.p)?;
    let analysis = report::analyze(
        &m,
        format_name(a.input.format),
        &a.input.input,
        &ps,
        &a.input.caps,
    )?;
    if let Some(dir) = &a.csv {
        report::write_csv(dir, &analysis)?;
    }
    let rendered = serde_json::to_string_pretty(&analysis.json)
        .map_err(|e| Error::Internal(format!("serializing report: {e}")))?;
    emit(&format!("{rendered}\n"))
}

fn cmd_verify(v: VerifyArgs) -> Result<()> {
    let text = read_input(&v.input.input)?;
    let m = parse::parse(v.input.format, &text)?;
    let rep = suite::run(&m, &v.input.caps)?;
    let lines: String = rep.checks.iter().map(|c| c.line() + "\n").collect();
    emit(&lines)?;
    let failed: Vec<&str> = rep
        .checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.name)
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::Internal(format!("failed checks: {}", failed.join(", "))))
    }
}

fn cmd_random(r: RandomArgs) -> Result<()> {
    let rendered = match r.family.as_str() {
        "graphic" => parse::render_graph(&random::random_graph(r.seed, r.size)?),
        "linear" => parse::render_linear(&random::random_matrix(r.seed, r.size)?),
        other => return Err(Error::Domain(format!("unknown family {other:?}"))),
    };
    emit(&rendered)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Verify(v) => cmd_verify(v),
        Command::Random(r) => cmd_random(r),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
