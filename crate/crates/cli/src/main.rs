use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lightcone_core::Error;

mod commands;
mod config;
mod svg;

use commands::Verdict;
use config::Config;

const OUT_ENV: &str = "LIGHTCONE_LAB_OUT";

#[derive(Parser)]
#[command(name = "lightcone-lab", version, about = "Lieb-Robinson diagnostics for a disordered XY chain with ZZ defects")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides every seed in the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; defaults to the available cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output directory; falls back to $LIGHTCONE_LAB_OUT, then ./lightcone-out.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Algebraic identities and norm constants.
    VerifyIdentities,
    /// Commutator curves over several Δ, checked against the single-bond bounds.
    ScanDelta,
    /// Arrival time of the commutator front against distance.
    Lightcone,
    /// Fit K and ξ of the Δ = 0 localized dynamics.
    FitAnderson,
    /// Nested-region induction table for one bond at a time.
    AppendixInduction,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Realization { source, .. } => exit_code(source),
        Error::Convergence { .. } | Error::Fit(_) => 4,
        Error::Io(_) => 1,
        _ => 2,
    }
}

fn run(cli: &Cli) -> Result<Verdict, (u8, String)> {
    let path = cli.config.as_ref().ok_or((2, "--config is required".to_string()))?;
    let mut cfg = Config::load(path).map_err(|e| (2, e.to_string()))?;
    if let Some(seed) = cli.seed {
        cfg.run.seed = seed;
        cfg.identities.seed = seed;
    }
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global().map_err(|e| (1, e.to_string()))?;
    }
    let out = cli
        .out
        .clone()
        .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("lightcone-out"));
    std::fs::create_dir_all(&out).map_err(|e| (1, format!("{}: {e}", out.display())))?;
    std::fs::write(out.join("config.toml"), cfg.to_toml()).map_err(|e| (1, e.to_string()))?;
    dispatch(cli.command, &cfg, &out).map_err(|e| (exit_code(&e), e.to_string()))
}

fn dispatch(command: Command, cfg: &Config, out: &Path) -> lightcone_core::Result<Verdict> {
    match command {
        Command::VerifyIdentities => commands::verify_identities(cfg, out),
        Command::ScanDelta => commands::scan_delta(cfg, out),
        Command::Lightcone => commands::lightcone(cfg, out),
        Command::FitAnderson => commands::fit_anderson(cfg, out),
        Command::AppendixInduction => commands::appendix_induction(cfg, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Failed(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
