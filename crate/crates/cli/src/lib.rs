//! Command-line front end for `fracbeam`: configuration, run orchestration
//! and artifact writing.

pub mod commands;
pub mod config;
pub mod error;

use std::path::{Path, PathBuf};

use fracbeam::presets::Preset;

pub use commands::Context;
pub use config::RunConfig;
pub use error::{CliError, CliResult};

/// Environment variable naming the output directory.
pub const OUT_ENV: &str = "FRACBEAM_OUT";

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub preset: Option<Preset>,
    pub seed: Option<u64>,
}

/// Builds the effective configuration and output context.
///
/// Without `--config` the preset (default `standard-a05`) supplies every
/// setting. With both, the preset replaces material, fractional parameters
/// and initial condition. The output directory is `--out`, then
/// `$FRACBEAM_OUT`, then `output_dir` from the file, then `fracbeam-out`.
pub fn resolve(opts: &Options, env_out: Option<PathBuf>) -> CliResult<(RunConfig, Context)> {
    let (mut cfg, base_dir) = match &opts.config {
        Some(path) => {
            let cfg = RunConfig::load(path)?;
            let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
            (cfg, dir)
        }
        None => (
            RunConfig::from_preset(opts.preset.unwrap_or(Preset::StandardA05)),
            PathBuf::from("."),
        ),
    };
    if let (Some(p), Some(_)) = (opts.preset, &opts.config) {
        cfg.apply_preset(p);
    }
    if let Some(seed) = opts.seed {
        cfg.seed = seed;
    }
    cfg.validate()?;
    let out_dir = opts
        .out
        .clone()
        .or(env_out)
        .or_else(|| cfg.output_dir.as_ref().map(|d| base_dir.join(d)))
        .unwrap_or_else(|| PathBuf::from("fracbeam-out"));
    Ok((cfg, Context { out_dir, base_dir }))
}
