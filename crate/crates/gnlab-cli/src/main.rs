//! `gnlab` — drive weighted interpolation-inequality checks from JSON
//! run configurations.
//!
//! Exit status: 0 when every check returned the expected verdict (`holds`
//! everywhere, except the counterexample command which expects `fails`);
//! 1 when any check came back with an unexpected verdict, was rejected by
//! a mathematical hypothesis, or the run failed mid-computation; 2 when
//! the configuration itself was rejected before anything ran.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gnlab_cli::config::{CommandKind, RunConfig};
use gnlab_cli::{output, runner};

#[derive(Parser)]
#[command(
    name = "gnlab",
    version,
    about = "Numerical laboratory for strongly nonlinear weighted interpolation inequalities",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive the constants ledger and curve samples for one weight
    Weights(RunArgs),
    /// Run a battery of inequality checks
    Verify(RunArgs),
    /// Tabulate derived constants over a (weight, p) grid
    Sweep(RunArgs),
    /// One-dimensional weighted Hardy check with a sharpness ladder
    Hardy(RunArgs),
    /// Harmonic-shell configuration on which the bound must fail
    Counterexample(RunArgs),
    /// Solve the membrane-deflection problem and verify its bound
    Mems(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to the JSON run configuration
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Output directory (default: the config's `output`, else ./gnlab-out)
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Worker-pool width for batteries
    #[arg(long, value_name = "N", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    jobs: u64,
    /// Seed echoed into report.json; runs are deterministic and do not
    /// consume it, the flag reserves the interface
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("GNLAB_LOG", "error")).init();
    let cli = Cli::parse();
    let (kind, args) = match cli.command {
        Command::Weights(a) => (CommandKind::Weights, a),
        Command::Verify(a) => (CommandKind::Verify, a),
        Command::Sweep(a) => (CommandKind::Sweep, a),
        Command::Hardy(a) => (CommandKind::Hardy, a),
        Command::Counterexample(a) => (CommandKind::Counterexample, a),
        Command::Mems(a) => (CommandKind::Mems, a),
    };
    match run(kind, &args) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("gnlab: {err}");
            let code = if matches!(err, gnlab_core::Error::Config { .. }) {
                2
            } else {
                1
            };
            ExitCode::from(code)
        }
    }
}

fn run(kind: CommandKind, args: &RunArgs) -> gnlab_core::Result<u8> {
    let cfg = RunConfig::from_path(&args.config)?;
    cfg.validate(kind)?;
    let jobs = usize::try_from(args.jobs).expect("range-checked by clap");
    if let Some(seed) = args.seed {
        log::info!("seed {seed} recorded; execution is deterministic and does not consume it");
    }
    log::info!("running `{}` with {jobs} worker(s)", kind.name());
    let started = std::time::Instant::now();
    let out = runner::execute(&cfg, jobs)?;
    log::info!("computation finished in {:.3?}", started.elapsed());

    let out_dir = args
        .out
        .clone()
        .or_else(|| cfg.output.clone())
        .unwrap_or_else(|| PathBuf::from("gnlab-out"));
    let meta = output::RunMeta {
        command: kind.name(),
        jobs,
        seed: args.seed,
    };
    output::write_all(&out_dir, &meta, &out)?;

    let mut holds = 0usize;
    let mut fails = 0usize;
    let mut inconclusive = 0usize;
    for report in &out.reports {
        match report.verdict.name() {
            "holds" => holds += 1,
            "fails" => fails += 1,
            _ => inconclusive += 1,
        }
    }
    let rejected_note = if out.rejected.is_empty() {
        String::new()
    } else {
        format!(", {} rejected", out.rejected.len())
    };
    println!(
        "{}: {} check(s) — {} holds, {} fails, {} inconclusive{}; wrote {}",
        kind.name(),
        out.reports.len(),
        holds,
        fails,
        inconclusive,
        rejected_note,
        out_dir.display()
    );
    Ok(runner::verdict_exit(&out))
}
