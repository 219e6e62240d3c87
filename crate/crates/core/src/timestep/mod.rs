//! Implicit θ-scheme integration of U̇ = A_h U with energy bookkeeping.

mod trace;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

pub use trace::{format_sig12, EnergyTrace};

use crate::assembly::{dissipation_rate, GeneratorMatrix};
use crate::domain::{energy, transmission_residuals, Grid, MaterialParams, StateVector};
use crate::error::{check_len, invalid, Error, Result};
use crate::fracdiff::FractionalParams;
use crate::linalg::{CsrMatrix, SparseLu};
use crate::presets::Preset;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    BackwardEuler,
    CrankNicolson,
}

impl Scheme {
    fn theta<T: Real>(self) -> T {
        match self {
            Scheme::BackwardEuler => T::one(),
            Scheme::CrankNicolson => T::lit(0.5),
        }
    }
}

/// Where the initial state comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialCondition {
    /// The initial profile of a named preset.
    Preset(Preset),
    /// A JSON file with arrays `z`, `v`, `v_dot`, `p`, `p_dot`.
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig<T> {
    pub dt: T,
    pub t_end: T,
    pub scheme: Scheme,
    pub trace_stride: usize,
    pub initial_condition: InitialCondition,
}

impl<T: Real> SimConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > T::zero()) || !self.dt.is_finite() {
            return Err(invalid("dt", format!("dt > 0 violated (dt = {})", self.dt)));
        }
        if !(self.t_end >= self.dt) || !self.t_end.is_finite() {
            return Err(invalid("t_end", format!("t_end >= dt violated (t_end = {})", self.t_end)));
        }
        if self.trace_stride == 0 {
            return Err(invalid("trace_stride", "trace_stride >= 1 violated"));
        }
        Ok(())
    }

    /// Number of steps: t_end/dt rounded to the nearest integer.
    pub fn step_count(&self) -> usize {
        (self.t_end / self.dt).round().to_usize().unwrap_or(1).max(1)
    }
}

/// Factorization of I − θ dt A_h reused for every step.
#[derive(Debug, Clone)]
pub struct Stepper<T> {
    lhs: SparseLu<T>,
    rhs: Option<CsrMatrix<T>>,
    dt: T,
}

impl<T: Real> Stepper<T> {
    pub fn new(a: &GeneratorMatrix<T>, scheme: Scheme, dt: T) -> Result<Self> {
        if !(dt > T::zero()) {
            return Err(invalid("dt", format!("dt > 0 violated (dt = {dt})")));
        }
        let theta: T = scheme.theta();
        let m = a.matrix().shifted(T::one(), -theta * dt);
        let lhs = SparseLu::factor(&m, a.layout().phi())?;
        let rhs = match scheme {
            Scheme::BackwardEuler => None,
            Scheme::CrankNicolson => Some(a.matrix().shifted(T::one(), (T::one() - theta) * dt)),
        };
        Ok(Self { lhs, rhs, dt })
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn advance(&self, u: &[T]) -> Result<Vec<T>> {
        check_len("step", self.lhs.dimension(), u.len())?;
        let b = match &self.rhs {
            Some(r) => r.matvec(u)?,
            None => u.to_vec(),
        };
        self.lhs.solve(&b)
    }
}

/// One step of the scheme (factorizes on every call; see [`Stepper`]).
pub fn step<T: Real>(
    state: &StateVector<T>,
    a: &GeneratorMatrix<T>,
    scheme: Scheme,
    dt: T,
) -> Result<StateVector<T>> {
    state.check(a.layout())?;
    let out = Stepper::new(a, scheme, dt)?.advance(&state.to_flat())?;
    let next = StateVector::from_flat(a.layout(), &out)?;
    if !next.is_finite() {
        return Err(Error::NonFinite { time: dt.as_f64() });
    }
    Ok(next)
}

/// A run that stopped early, with everything recorded before the failure.
#[derive(Debug, Clone)]
pub struct SimulationFailure<T> {
    pub trace: EnergyTrace<T>,
    pub error: Error,
}

/// Integrates from `u0` (which must have φ = 0) and records the energy trace.
///
/// The residual stored with each sample is
/// |(E_n − E_{n−1})/dt − (D(U_{n−1}) + D(U_n))/2| for the step ending there,
/// where D is [`dissipation_rate`]; it is 0 for the initial sample.
pub fn simulate<T: Real>(
    cfg: &SimConfig<T>,
    mp: &MaterialParams<T>,
    fp: &FractionalParams<T>,
    grid: &Grid<T>,
    a: &GeneratorMatrix<T>,
    u0: &StateVector<T>,
) -> std::result::Result<EnergyTrace<T>, SimulationFailure<T>> {
    let mut trace = EnergyTrace::default();
    let fail = |trace: EnergyTrace<T>, error: Error| SimulationFailure { trace, error };
    let setup = (|| {
        cfg.validate()?;
        u0.check(grid.layout())?;
        if a.layout() != grid.layout() {
            return Err(invalid("grid", "generator and grid disagree"));
        }
        if u0.phi.iter().any(|&x| x != T::zero()) {
            return Err(invalid("initial_condition", "memory variables must start at 0"));
        }
        Stepper::new(a, cfg.scheme, cfg.dt)
    })();
    let stepper = match setup {
        Ok(s) => s,
        Err(e) => return Err(fail(trace, e)),
    };

    let record = |trace: &mut EnergyTrace<T>, t: T, u: &StateVector<T>, residual: T| -> Result<()> {
        trace.push(
            t,
            energy(u, mp, grid, fp)?,
            dissipation_rate(u, mp, fp, grid)?,
            residual,
            transmission_residuals(u, mp, grid)?,
        );
        Ok(())
    };

    let n_steps = cfg.step_count();
    let mut u = u0.to_flat();
    let mut state = u0.clone();
    let mut e_prev = match energy(&state, mp, grid, fp) {
        Ok(e) if e.total.is_finite() => e.total,
        Ok(_) => return Err(fail(trace, Error::NonFinite { time: 0.0 })),
        Err(e) => return Err(fail(trace, e)),
    };
    let mut d_prev = match dissipation_rate(&state, mp, fp, grid) {
        Ok(d) => d,
        Err(e) => return Err(fail(trace, e)),
    };
    if let Err(e) = record(&mut trace, T::zero(), &state, T::zero()) {
        return Err(fail(trace, e));
    }
    for n in 1..=n_steps {
        let t = T::from_usize(n).unwrap() * cfg.dt;
        let next = match stepper.advance(&u) {
            Ok(x) => x,
            Err(e) => return Err(fail(trace, e)),
        };
        if next.iter().any(|x| !x.is_finite()) {
            return Err(fail(trace, Error::NonFinite { time: t.as_f64() }));
        }
        u = next;
        state = match StateVector::from_flat(grid.layout(), &u) {
            Ok(s) => s,
            Err(e) => return Err(fail(trace, e)),
        };
        let (e_now, d_now) = match (energy(&state, mp, grid, fp), dissipation_rate(&state, mp, fp, grid)) {
            (Ok(e), Ok(d)) => (e.total, d),
            (Err(e), _) | (_, Err(e)) => return Err(fail(trace, e)),
        };
        if !e_now.is_finite() || !d_now.is_finite() {
            return Err(fail(trace, Error::NonFinite { time: t.as_f64() }));
        }
        let residual = ((e_now - e_prev) / cfg.dt - T::lit(0.5) * (d_prev + d_now)).abs();
        if n % cfg.trace_stride == 0 || n == n_steps {
            if let Err(e) = record(&mut trace, t, &state, residual) {
                return Err(fail(trace, e));
            }
        }
        e_prev = e_now;
        d_prev = d_now;
    }
    Ok(trace)
}

#[cfg(test)]
mod tests;
