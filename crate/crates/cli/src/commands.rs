use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use fracbeam::assembly::assemble_generator;
use fracbeam::fracdiff::{
    closed_form_integrals, compare_representation, quadrature_integrals,
    FractionalParams, XiQuadrature,
};
use fracbeam::json;
use fracbeam::presets::Preset;
use fracbeam::scalar::gamma;
use fracbeam::spectral::{
    decay_window, fit_decay, resolvent_profile, spectrum, verify_stationary_kernel, DecayFit,
    KernelReport, ProfileOptions, ResolventProfile, SpectrumReport,
};
use fracbeam::timestep::{simulate, EnergyTrace};
use serde::Serialize;

use crate::config::{RunConfig, Setup, Signal};
use crate::error::{CliError, CliResult};

/// Where artifacts go and where relative input paths are resolved.
#[derive(Debug, Clone)]
pub struct Context {
    pub out_dir: PathBuf,
    pub base_dir: PathBuf,
}

#[derive(Serialize)]
struct Report<'a, B: Serialize> {
    command: &'static str,
    config: &'a RunConfig,
    #[serde(flatten)]
    body: B,
}

fn write_file(path: &Path, contents: &[u8]) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn write_report<B: Serialize>(
    ctx: &Context,
    file: &str,
    command: &'static str,
    cfg: &RunConfig,
    body: B,
) -> CliResult<()> {
    let text = json::to_string(&Report {
        command,
        config: cfg,
        body,
    })?;
    write_file(&ctx.out_dir.join(file), text.as_bytes())
}

/// Wall-clock time goes to a sidecar so the main artifacts stay reproducible.
fn write_timing(ctx: &Context, command: &'static str, start: Instant) -> CliResult<()> {
    #[derive(Serialize)]
    struct Timing {
        command: &'static str,
        wall_seconds: f64,
    }
    let text = json::to_string(&Timing {
        command,
        wall_seconds: start.elapsed().as_secs_f64(),
    })?;
    write_file(&ctx.out_dir.join("timing.json"), text.as_bytes())
}

fn prepare(ctx: &Context) -> CliResult<()> {
    fs::create_dir_all(&ctx.out_dir).map_err(|source| CliError::Write {
        path: ctx.out_dir.clone(),
        source,
    })
}

fn write_trace(ctx: &Context, trace: &EnergyTrace<f64>) -> CliResult<()> {
    let path = ctx.out_dir.join("trace.csv");
    let file = fs::File::create(&path).map_err(|source| CliError::Write {
        path: path.clone(),
        source,
    })?;
    trace
        .write_csv(BufWriter::new(file))
        .map_err(|source| CliError::Write { path, source })
}

#[derive(Debug, Clone, Serialize)]
pub struct TransmissionMax {
    pub r_dirichlet: f64,
    pub r_stress: f64,
    pub r_charge: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimulationSummary {
    pub status: &'static str,
    pub samples: usize,
    pub final_time: f64,
    pub initial_energy: f64,
    pub final_energy: f64,
    pub max_relative_increase: f64,
    pub dissipation_residual_min: f64,
    pub dissipation_residual_max: f64,
    pub transmission_max: TransmissionMax,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn summarize(trace: &EnergyTrace<f64>, error: Option<String>) -> SimulationSummary {
    let totals = trace.totals();
    let residuals = trace.dissipation_residuals.get(1..).unwrap_or(&[]);
    let fold = |f: fn(f64, f64) -> f64, init: f64| residuals.iter().copied().fold(init, f);
    let tmax = |get: fn(&fracbeam::domain::TransmissionResiduals<f64>) -> f64| {
        trace.transmission.iter().map(|r| get(r).abs()).fold(0.0, f64::max)
    };
    SimulationSummary {
        status: if error.is_none() { "ok" } else { "failed" },
        samples: trace.len(),
        final_time: trace.times.last().copied().unwrap_or(0.0),
        initial_energy: totals.first().copied().unwrap_or(0.0),
        final_energy: totals.last().copied().unwrap_or(0.0),
        max_relative_increase: trace.max_relative_increase(),
        dissipation_residual_min: if residuals.is_empty() { 0.0 } else { fold(f64::min, f64::INFINITY) },
        dissipation_residual_max: fold(f64::max, 0.0),
        transmission_max: TransmissionMax {
            r_dirichlet: tmax(|r| r.r_dirichlet),
            r_stress: tmax(|r| r.r_stress),
            r_charge: tmax(|r| r.r_charge),
        },
        error,
    }
}

/// Runs the configured simulation. On failure the partial trace and an error
/// record are still written.
fn run_simulation(cfg: &RunConfig, ctx: &Context) -> CliResult<(Setup, EnergyTrace<f64>)> {
    let setup = cfg.setup()?;
    let u0 = cfg.initial_state(&setup, &ctx.base_dir)?;
    let a = assemble_generator(&setup.mp, &setup.fp, &setup.grid)?;
    match simulate(&cfg.sim, &setup.mp, &setup.fp, &setup.grid, &a, &u0) {
        Ok(trace) => {
            write_trace(ctx, &trace)?;
            write_report(ctx, "summary.json", "simulate", cfg, summarize(&trace, None))?;
            Ok((setup, trace))
        }
        Err(fail) => {
            write_trace(ctx, &fail.trace)?;
            let summary = summarize(&fail.trace, Some(fail.error.to_string()));
            write_report(ctx, "summary.json", "simulate", cfg, summary)?;
            Err(CliError::Simulation {
                time: fail.trace.times.last().copied().unwrap_or(0.0),
                source: fail.error,
            })
        }
    }
}

pub fn cmd_simulate(cfg: &RunConfig, ctx: &Context) -> CliResult<()> {
    let start = Instant::now();
    prepare(ctx)?;
    let result = run_simulation(cfg, ctx).map(|_| ());
    write_timing(ctx, "simulate", start)?;
    result
}

#[derive(Serialize)]
struct SpectrumBody<'a> {
    #[serde(flatten)]
    spectrum: &'a SpectrumReport<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kernel: Option<KernelReport<f64>>,
}

pub fn compute_spectrum(setup: &Setup) -> CliResult<SpectrumReport<f64>> {
    let a = assemble_generator(&setup.mp, &setup.fp, &setup.grid)?;
    Ok(spectrum(&a, &setup.mp, &setup.fp, &setup.grid)?)
}

pub fn cmd_spectrum(cfg: &RunConfig, ctx: &Context) -> CliResult<()> {
    let start = Instant::now();
    prepare(ctx)?;
    let setup = cfg.setup()?;
    let spec = compute_spectrum(&setup)?;
    let kernel = if setup.fp.eta() == 0.0 {
        Some(verify_stationary_kernel(
            &setup.mp,
            &setup.fp,
            cfg.grid.n_heat,
            cfg.grid.n_beam,
            &cfg.spectral.kernel_ks,
            cfg.spectral.kernel_xi_range,
        )?)
    } else {
        None
    };
    write_report(
        ctx,
        "spectrum.json",
        "spectrum",
        cfg,
        SpectrumBody {
            spectrum: &spec,
            kernel,
        },
    )?;
    write_timing(ctx, "spectrum", start)
}

pub fn compute_resolvent(cfg: &RunConfig, setup: &Setup) -> CliResult<ResolventProfile<f64>> {
    let a = assemble_generator(&setup.mp, &setup.fp, &setup.grid)?;
    let spec = compute_spectrum(setup)?;
    let opts = ProfileOptions {
        lambda_min: cfg.spectral.lambda_min,
        lambda_max: cfg.spectral.lambda_max,
        count: cfg.spectral.count,
        seed: cfg.seed,
    };
    Ok(resolvent_profile(
        &a,
        &spec,
        &setup.mp,
        &setup.fp,
        &setup.grid,
        &opts,
    )?)
}

pub fn cmd_resolvent(cfg: &RunConfig, ctx: &Context) -> CliResult<()> {
    let start = Instant::now();
    prepare(ctx)?;
    let setup = cfg.setup()?;
    let profile = compute_resolvent(cfg, &setup)?;
    write_report(ctx, "resolvent.json", "resolvent", cfg, &profile)?;
    write_timing(ctx, "resolvent", start)
}

#[derive(Debug, Clone, Serialize)]
pub struct DecayReport {
    #[serde(flatten)]
    pub fit: DecayFit<f64>,
    /// −2/(1 − α).
    pub bound_exponent: f64,
    /// Slope of ln(E·t^{2/(1−α)}) on the window.
    pub compensated_slope: f64,
}

pub fn decay_report(cfg: &RunConfig, fp: &FractionalParams<f64>, trace: &EnergyTrace<f64>) -> CliResult<DecayReport> {
    let window = match cfg.decay.window {
        Some(w) => w,
        None => {
            let e0 = trace.totals().first().copied().unwrap_or(0.0);
            decay_window(trace, cfg.decay.drop, cfg.decay.floor * e0).ok_or_else(|| {
                CliError::Solver(fracbeam::Error::Fit(
                    "the energy never enters the decay window; increase sim.t_end".into(),
                ))
            })?
        }
    };
    let fit = fit_decay(trace, window)?;
    let bound = 2.0 / (1.0 - fp.alpha());
    Ok(DecayReport {
        compensated_slope: fit.exponent + bound,
        bound_exponent: -bound,
        fit,
    })
}

pub fn cmd_decay_fit(cfg: &RunConfig, ctx: &Context) -> CliResult<()> {
    let start = Instant::now();
    prepare(ctx)?;
    let result = run_simulation(cfg, ctx).and_then(|(setup, trace)| {
        let report = decay_report(cfg, &setup.fp, &trace)?;
        write_report(ctx, "decayfit.json", "decay-fit", cfg, report)
    });
    write_timing(ctx, "decay-fit", start)?;
    result
}

#[derive(Debug, Clone, Serialize)]
pub struct RepresentationCheck {
    pub signal: Signal,
    pub k: usize,
    pub t_end: f64,
    pub dt: f64,
    pub relative_l2_error: f64,
    pub max_abs_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyticCheck {
    /// Max |oracle − t^{1−α}/Γ(2−α)| over the samples with t > 0.
    pub max_abs_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormRow {
    pub lambda: f64,
    pub j2_closed: f64,
    pub j2_quadrature: f64,
    pub j3_closed: f64,
    pub j3_quadrature: f64,
    pub j2_relative_error: f64,
    pub j3_relative_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub representation: RepresentationCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linear_analytic: Option<AnalyticCheck>,
    pub c_closed: f64,
    pub c_quadrature: f64,
    pub closed_form: Vec<ClosedFormRow>,
}

pub fn verify_report(cfg: &RunConfig) -> CliResult<VerifyReport> {
    let setup = cfg.setup()?;
    let fp = setup.fp;
    let v = &cfg.verify;
    let rule = XiQuadrature::balanced(&fp, v.k)?;
    let signal = v.signal;
    let rep = compare_representation(|t| signal.eval(t), &fp, &rule, v.t_end, v.dt)?;

    let linear_analytic = if fp.eta() == 0.0 && signal == Signal::Linear {
        let alpha = fp.alpha();
        let g = gamma(2.0 - alpha);
        let max_abs_error = rep
            .times
            .iter()
            .zip(&rep.oracle)
            .skip(1)
            .map(|(&t, &o)| (o - t.powf(1.0 - alpha) / g).abs())
            .fold(0.0, f64::max);
        Some(AnalyticCheck { max_abs_error })
    } else {
        None
    };

    // The integral suite uses a fine rule independent of the comparison.
    let fine = XiQuadrature::balanced(&fp, 400)?;
    let mut closed_form = Vec::new();
    let c_closed = closed_form_integrals(&fp, 1.0)?.values.c;
    let c_quadrature = quadrature_integrals(&fine, &fp, 1.0)?.c;
    for &lambda in &v.lambdas {
        if lambda.abs() + fp.eta() == 0.0 {
            continue;
        }
        let reference = closed_form_integrals(&fp, lambda)?.values;
        let q = quadrature_integrals(&fine, &fp, lambda)?;
        closed_form.push(ClosedFormRow {
            lambda,
            j2_closed: reference.j2,
            j2_quadrature: q.j2,
            j3_closed: reference.j3,
            j3_quadrature: q.j3,
            j2_relative_error: ((q.j2 - reference.j2) / reference.j2).abs(),
            j3_relative_error: ((q.j3 - reference.j3) / reference.j3).abs(),
        });
    }
    Ok(VerifyReport {
        representation: RepresentationCheck {
            signal,
            k: v.k,
            t_end: v.t_end,
            dt: v.dt,
            relative_l2_error: rep.relative_l2_error,
            max_abs_error: rep.max_abs_error,
        },
        linear_analytic,
        c_closed,
        c_quadrature,
        closed_form,
    })
}

pub fn cmd_verify_fractional(cfg: &RunConfig, ctx: &Context) -> CliResult<()> {
    let start = Instant::now();
    prepare(ctx)?;
    let report = verify_report(cfg)?;
    write_report(ctx, "verify.json", "verify-fractional", cfg, report)?;
    write_timing(ctx, "verify-fractional", start)
}

/// Simulates each preset on the base configuration in its own subdirectory,
/// one thread per preset. Returns the first error after all runs finish.
pub fn cmd_sweep(base: &RunConfig, presets: &[Preset], ctx: &Context) -> CliResult<()> {
    prepare(ctx)?;
    let results: Vec<CliResult<()>> = std::thread::scope(|s| {
        let handles: Vec<_> = presets
            .iter()
            .map(|&p| {
                let mut cfg = base.clone();
                cfg.apply_preset(p);
                let sub = Context {
                    out_dir: ctx.out_dir.join(p.name()),
                    base_dir: ctx.base_dir.clone(),
                };
                s.spawn(move || cmd_simulate(&cfg, &sub))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    results.into_iter().collect()
}
