use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fracbeam::presets::Preset;
use fracbeam_cli::{commands, resolve, Options, OUT_ENV};

#[derive(Parser)]
#[command(name = "fracbeam", version, about = "Heat rod coupled to a fractionally damped piezoelectric beam")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides FRACBEAM_OUT and the config file).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Named preset: zero, standard-a03, standard-a05, standard-a07, heat-only, beam-only.
    #[arg(long)]
    preset: Option<Preset>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate in time; writes trace.csv and summary.json.
    Simulate(Common),
    /// Dense eigenvalues of the discrete generator; writes spectrum.json.
    Spectrum(Common),
    /// Resolvent norm along the imaginary axis; writes resolvent.json.
    Resolvent(Common),
    /// Simulate and fit the energy decay exponent; writes decayfit.json.
    DecayFit(Common),
    /// Diffusive representation against the convolution oracle; writes verify.json.
    VerifyFractional(Common),
    /// Simulate several presets concurrently, one subdirectory each.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Comma-separated presets (default: the three standard ones).
        #[arg(long, value_delimiter = ',')]
        presets: Vec<Preset>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Simulate(c)
        | Command::Spectrum(c)
        | Command::Resolvent(c)
        | Command::DecayFit(c)
        | Command::VerifyFractional(c) => c,
        Command::Sweep { common, .. } => common,
    };
    let opts = Options {
        config: common.config.clone(),
        out: common.out.clone(),
        preset: common.preset,
        seed: common.seed,
    };
    let env_out = std::env::var_os(OUT_ENV).map(PathBuf::from);
    let result = resolve(&opts, env_out).and_then(|(cfg, ctx)| match &cli.command {
        Command::Simulate(_) => commands::cmd_simulate(&cfg, &ctx),
        Command::Spectrum(_) => commands::cmd_spectrum(&cfg, &ctx),
        Command::Resolvent(_) => commands::cmd_resolvent(&cfg, &ctx),
        Command::DecayFit(_) => commands::cmd_decay_fit(&cfg, &ctx),
        Command::VerifyFractional(_) => commands::cmd_verify_fractional(&cfg, &ctx),
        Command::Sweep { presets, .. } => {
            let list = if presets.is_empty() { &Preset::STANDARD[..] } else { &presets[..] };
            commands::cmd_sweep(&cfg, list, &ctx)
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
