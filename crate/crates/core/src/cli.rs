//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input, 2 verification failure,
//! 64 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Gvf, MultiIndex, SystemSpec};
use crate::normalizer;
use crate::oracle::{self, Assignment};
use crate::parallel;
use crate::report::{self, Emit};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Highest phase degree at which the classical and level-graded normal
/// forms are compared for non-homogeneous systems.
const CLASSICAL_WINDOW: usize = 5;

#[derive(Debug, Parser)]
#[command(name = "levelnf", version, about = "Parameter-graded Poincare-Dulac normal forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normalize a system up to a level (or phase order) and print its terms.
    Normalize(NormalizeArgs),
    /// Compute single normal-form coefficients.
    Coeff(CoeffArgs),
    /// Check a normalization against the classical oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("target").required(true).args(["level", "order"])))]
struct NormalizeArgs {
    #[arg(long)]
    input: PathBuf,
    /// Target level (parameter degree).
    #[arg(long)]
    level: Option<usize>,
    /// Target phase order; same as `--level <order - 1>`.
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, default_value = "both")]
    emit: Emit,
}

#[derive(Debug, Args)]
struct CoeffArgs {
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated multi-index; may be repeated.
    #[arg(long, required = true)]
    mu: Vec<String>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    level: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    trials: usize,
}

/// A failed command: exit code plus message for stderr.
struct Failure(i32, String);

type CmdResult = Result<(), Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(EXIT_INVALID, msg.into())
}

fn load(path: &Path) -> Result<SystemSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    SystemSpec::parse(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn io_fail(e: std::io::Error) -> Failure {
    invalid(format!("write failed: {e}"))
}

fn parse_mu(spec: &SystemSpec, text: &str) -> Result<MultiIndex, Failure> {
    let entries = text
        .split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| invalid(format!("--mu `{text}`: expected comma-separated nonnegative integers")))?;
    if entries.len() != spec.ell() {
        return Err(invalid(format!(
            "--mu `{text}`: expected {} entries, found {}",
            spec.ell(),
            entries.len()
        )));
    }
    let mu = MultiIndex::new(entries);
    if mu.is_zero() {
        return Err(invalid(format!("--mu `{text}`: the zero index has no normal-form coefficient")));
    }
    if !spec.is_resonant(&mu) {
        return Err(invalid(format!(
            "--mu `{text}`: not resonant (weight {})",
            spec.resonance_weight(&mu)
        )));
    }
    Ok(mu)
}

fn normal_form_alpha(spec: &SystemSpec, m: usize, threads: usize) -> Result<Gvf, Failure> {
    if threads <= 1 {
        return normalizer::normalize(spec, m)
            .map(|r| r.alpha)
            .map_err(|e| invalid(e.to_string()));
    }
    let targets = parallel::resonant_targets(spec, m);
    let results = parallel::normalize_targets(spec, &targets, threads);
    parallel::assemble(spec, &results).map_err(|e| invalid(e.to_string()))
}

fn cmd_normalize(a: &NormalizeArgs, out: &mut dyn Write) -> CmdResult {
    let m = match (a.level, a.order) {
        (Some(l), _) => l,
        (None, Some(r)) if r >= 2 => r - 1,
        (None, Some(r)) => {
            return Err(Failure(EXIT_USAGE, format!("--order {r}: order must be at least 2")))
        }
        (None, None) => unreachable!("clap enforces the target group"),
    };
    if m == 0 {
        return Err(Failure(EXIT_USAGE, "--level 0: level must be at least 1".into()));
    }
    if a.threads == 0 {
        return Err(Failure(EXIT_USAGE, "--threads 0: need at least one thread".into()));
    }
    let spec = load(&a.input)?;
    let alpha = normal_form_alpha(&spec, m, a.threads)?;
    let text = report::render(&spec, &alpha, m, a.emit).map_err(|e| invalid(e.to_string()))?;
    match &a.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| invalid(format!("--output {}: {e}", path.display()))),
        None => out.write_all(text.as_bytes()).map_err(io_fail),
    }
}

fn cmd_coeff(a: &CoeffArgs, out: &mut dyn Write) -> CmdResult {
    if a.threads == 0 {
        return Err(Failure(EXIT_USAGE, "--threads 0: need at least one thread".into()));
    }
    let spec = load(&a.input)?;
    let targets = a
        .mu
        .iter()
        .map(|t| parse_mu(&spec, t))
        .collect::<Result<Vec<_>, _>>()?;
    let results = parallel::normalize_targets(&spec, &targets, a.threads);
    for k in &targets {
        match &results[k] {
            Ok(c) => writeln!(out, "{c}").map_err(io_fail)?,
            Err(e) => return Err(invalid(format!("--mu {k}: {e}"))),
        }
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    if a.level == 0 {
        return Err(Failure(EXIT_USAGE, "--level 0: level must be at least 1".into()));
    }
    let spec = load(&a.input)?;
    let m = a.level;
    let result = normalizer::normalize(&spec, m).map_err(|e| invalid(e.to_string()))?;
    let mut ok = true;

    let impure: Vec<_> = result
        .alpha
        .iter()
        .filter(|(mu, _)| !mu.is_zero() && !spec.is_resonant(mu))
        .map(|(mu, _)| mu.clone())
        .collect();
    if impure.is_empty() {
        writeln!(out, "resonance: pass").map_err(io_fail)?;
    } else {
        ok = false;
        writeln!(out, "resonance: FAIL at {}", impure[0]).map_err(io_fail)?;
    }

    let window = if spec.is_homogeneous() {
        m + 1
    } else {
        (m + 1).min(CLASSICAL_WINDOW)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let oracle_err = |e: crate::Error| Failure(EXIT_VERIFY, format!("oracle error: {e}"));
    for trial in 1..=a.trials {
        let sigma = Assignment::random(&spec, &mut rng);
        let conj = oracle::conjugacy_check(&spec, &result, &sigma, m).map_err(oracle_err)?;
        writeln!(out, "trial {trial} conjugacy: {conj}").map_err(io_fail)?;
        ok &= conj.passed();
        let classical =
            oracle::classical_agreement(&spec, &result, &sigma, window).map_err(oracle_err)?;
        writeln!(out, "trial {trial} classical: {classical}").map_err(io_fail)?;
        ok &= classical.passed();
    }
    if ok {
        writeln!(out, "verify: pass").map_err(io_fail)?;
        Ok(())
    } else {
        Err(Failure(EXIT_VERIFY, "verification failed".into()))
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let res = match &cli.command {
        Command::Normalize(a) => cmd_normalize(a, out),
        Command::Coeff(a) => cmd_coeff(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    };
    match res {
        Ok(()) => EXIT_OK,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
