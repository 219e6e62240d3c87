//! Run configuration: a TOML file with one table per concern.
//!
//! ```toml
//! seed = 0
//!
//! [material]
//! rho = 1.0
//! chi = 2.0
//! gamma = 1.0
//! beta = 1.0
//! mu_mag = 1.0
//! kappa = 1.0
//! ell1 = 1.0
//! ell2 = 1.0
//!
//! [fractional]
//! alpha = 0.5
//! eta = 1.0
//!
//! [grid]
//! n_heat = 32
//! n_beam = 32
//! k = 24
//! xi_rule = "balanced"     # or "geometric" with xi_min and xi_max
//!
//! [sim]
//! dt = 0.01
//! t_end = 20.0
//! scheme = "crank_nicolson"  # or "backward_euler"
//! trace_stride = 10
//! initial_condition = { preset = "standard-a05" }  # or { file = "u0.json" }
//! ```
//!
//! `[spectral]`, `[decay]` and `[verify]` are optional; see the field docs.

use std::fs;
use std::path::{Path, PathBuf};

use fracbeam::domain::{Grid, MaterialParams, StateVector};
use fracbeam::fracdiff::{FractionalParams, XiQuadrature};
use fracbeam::presets::Preset;
use fracbeam::timestep::{InitialCondition, Scheme, SimConfig};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: u64,
    /// Used when neither `--out` nor `FRACBEAM_OUT` is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    pub material: MaterialParams<f64>,
    pub fractional: FractionalSection,
    pub grid: GridSection,
    pub sim: SimConfig<f64>,
    #[serde(default)]
    pub spectral: SpectralSection,
    #[serde(default)]
    pub decay: DecaySection,
    #[serde(default)]
    pub verify: VerifySection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FractionalSection {
    pub alpha: f64,
    pub eta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XiRule {
    Balanced,
    Geometric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub n_heat: usize,
    pub n_beam: usize,
    /// Number of ξ nodes; 0 removes the memory variables.
    pub k: usize,
    pub xi_rule: XiRule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi_max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpectralSection {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub count: usize,
    /// ξ-node counts for the stationary-kernel study (run when η = 0).
    pub kernel_ks: Vec<usize>,
    pub kernel_xi_range: [f64; 2],
}

impl Default for SpectralSection {
    fn default() -> Self {
        Self {
            lambda_min: 0.1,
            lambda_max: 1e3,
            count: 60,
            kernel_ks: vec![4, 8, 16, 32],
            kernel_xi_range: [1e-3, 1e2],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DecaySection {
    /// Window starts once E has dropped by this factor.
    pub drop: f64,
    /// Window ends before E falls under `floor * E(0)`.
    pub floor: f64,
    /// Explicit [t0, t1]; overrides `drop` and `floor`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<[f64; 2]>,
}

impl Default for DecaySection {
    fn default() -> Self {
        Self {
            drop: 10.0,
            floor: 1e-8,
            window: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Signal {
    Sin,
    Linear,
}

impl Signal {
    pub fn eval(self, t: f64) -> f64 {
        match self {
            Signal::Sin => t.sin(),
            Signal::Linear => t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifySection {
    pub signal: Signal,
    pub t_end: f64,
    pub dt: f64,
    /// Nodes of the balanced ξ-rule used for the comparison.
    pub k: usize,
    /// |λ| values for the closed-form integral suite.
    pub lambdas: Vec<f64>,
}

impl Default for VerifySection {
    fn default() -> Self {
        Self {
            signal: Signal::Sin,
            t_end: 10.0,
            dt: 1e-3,
            k: 256,
            lambdas: vec![0.0, 0.1, 1.0, 10.0, 100.0, 1e3, 1e4],
        }
    }
}

/// Material, fractional parameters and grid built from a validated config.
#[derive(Debug, Clone)]
pub struct Setup {
    pub mp: MaterialParams<f64>,
    pub fp: FractionalParams<f64>,
    pub grid: Grid<f64>,
}

impl RunConfig {
    /// Defaults for a preset: 32 + 32 cells, 24 balanced ξ nodes,
    /// Crank–Nicolson with dt = 0.01 up to t = 20.
    pub fn from_preset(preset: Preset) -> Self {
        Self {
            seed: 0,
            output_dir: None,
            material: preset.material(),
            fractional: FractionalSection {
                alpha: preset.alpha(),
                eta: preset.eta(),
            },
            grid: GridSection {
                n_heat: 32,
                n_beam: 32,
                k: 24,
                xi_rule: XiRule::Balanced,
                xi_min: None,
                xi_max: None,
            },
            sim: SimConfig {
                dt: 0.01,
                t_end: 20.0,
                scheme: Scheme::CrankNicolson,
                trace_stride: 10,
                initial_condition: InitialCondition::Preset(preset),
            },
            spectral: SpectralSection::default(),
            decay: DecaySection::default(),
            verify: VerifySection::default(),
        }
    }

    /// Replaces material, fractional parameters and initial condition.
    pub fn apply_preset(&mut self, preset: Preset) {
        self.material = preset.material();
        self.fractional = FractionalSection {
            alpha: preset.alpha(),
            eta: preset.eta(),
        };
        self.sim.initial_condition = InitialCondition::Preset(preset);
    }

    pub fn parse_toml(text: &str, path: &Path) -> CliResult<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            source: Box::new(e),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse_toml(&text, path)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is representable in TOML")
    }

    /// Checks every invariant; messages name the table and the violated condition.
    pub fn validate(&self) -> CliResult<()> {
        self.setup().map(|_| ())?;
        let bad = |section: &str, msg: String| Err(CliError::Invalid(format!("[{section}] {msg}")));
        self.sim
            .validate()
            .or_else(|e| bad("sim", e.to_string()))?;
        let s = &self.spectral;
        if !(s.lambda_min > 0.0 && s.lambda_max > s.lambda_min) || s.count < 2 {
            return bad(
                "spectral",
                "0 < lambda_min < lambda_max and count >= 2 violated".into(),
            );
        }
        if !(s.kernel_xi_range[0] > 0.0 && s.kernel_xi_range[1] > s.kernel_xi_range[0]) {
            return bad("spectral", "0 < kernel_xi_range[0] < kernel_xi_range[1] violated".into());
        }
        let d = &self.decay;
        if !(d.drop > 1.0) || !(d.floor > 0.0 && d.floor < 1.0) {
            return bad("decay", "drop > 1 and 0 < floor < 1 violated".into());
        }
        if let Some([t0, t1]) = d.window {
            if !(t0 > 0.0 && t1 > t0) {
                return bad("decay", format!("0 < t0 < t1 violated (window = [{t0}, {t1}])"));
            }
        }
        let v = &self.verify;
        if !(v.dt > 0.0 && v.t_end >= v.dt) || v.k < 2 {
            return bad("verify", "dt > 0, t_end >= dt and k >= 2 violated".into());
        }
        if v.lambdas.iter().any(|l| !l.is_finite()) {
            return bad("verify", "lambdas must be finite".into());
        }
        Ok(())
    }

    pub fn setup(&self) -> CliResult<Setup> {
        let tag = |section: &'static str| move |e: fracbeam::Error| CliError::Invalid(format!("[{section}] {e}"));
        self.material.validate().map_err(tag("material"))?;
        let fp = FractionalParams::new(self.fractional.alpha, self.fractional.eta)
            .map_err(tag("fractional"))?;
        let g = &self.grid;
        let rule = match (g.xi_rule, g.k) {
            (_, 0) => XiQuadrature::empty(),
            (XiRule::Balanced, k) => XiQuadrature::balanced(&fp, k).map_err(tag("grid"))?,
            (XiRule::Geometric, k) => {
                let (Some(lo), Some(hi)) = (g.xi_min, g.xi_max) else {
                    return Err(CliError::Invalid(
                        "[grid] xi_rule = \"geometric\" needs xi_min and xi_max".into(),
                    ));
                };
                XiQuadrature::geometric(k, lo, hi).map_err(tag("grid"))?
            }
        };
        let grid = Grid::new(&self.material, g.n_heat, g.n_beam, rule).map_err(tag("grid"))?;
        Ok(Setup {
            mp: self.material,
            fp,
            grid,
        })
    }

    /// Initial state; relative file paths are taken from `base_dir`.
    pub fn initial_state(&self, setup: &Setup, base_dir: &Path) -> CliResult<StateVector<f64>> {
        match &self.sim.initial_condition {
            InitialCondition::Preset(p) => Ok(p.initial_state(&setup.grid, &setup.mp)),
            InitialCondition::File(path) => {
                let path = base_dir.join(path);
                load_state(&path, &setup.grid)
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    z: Vec<f64>,
    v: Vec<f64>,
    v_dot: Vec<f64>,
    p: Vec<f64>,
    p_dot: Vec<f64>,
}

/// Reads `{"z": [...], "v": [...], "v_dot": [...], "p": [...], "p_dot": [...]}`
/// with interior heat values and beam values at nodes 0..=n_beam.
pub fn load_state(path: &Path, grid: &Grid<f64>) -> CliResult<StateVector<f64>> {
    let fail = |reason: String| CliError::InitialState {
        path: path.to_path_buf(),
        reason,
    };
    let text = fs::read_to_string(path).map_err(|e| fail(e.to_string()))?;
    let f: StateFile = serde_json::from_str(&text).map_err(|e| fail(e.to_string()))?;
    let layout = grid.layout();
    let mut u = StateVector::zeros(layout);
    u.z = f.z;
    u.v = f.v;
    u.v_dot = f.v_dot;
    u.p = f.p;
    u.p_dot = f.p_dot;
    u.check(layout).map_err(|e| fail(e.to_string()))?;
    if !u.is_finite() {
        return Err(fail("non-finite entries".into()));
    }
    Ok(u)
}
