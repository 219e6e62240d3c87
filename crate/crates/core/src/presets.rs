//! Named, fully specified initial configurations.
//!
//! Every preset uses [`MaterialParams::unit`] (ρ = μ = β = γ = κ = 1, χ = 2,
//! so χ₁ = 1, and ℓ₁ = ℓ₂ = 1) and η = 1. Initial velocities and memory
//! variables are zero.
//!
//! | name           | α   | z(x)               | v(x), p(x)                          |
//! |----------------|-----|--------------------|-------------------------------------|
//! | `zero`         | 0.5 | 0                  | 0                                   |
//! | `standard-a03` | 0.3 | sin(π(x+ℓ₁)/ℓ₁)    | compatible modes (below)            |
//! | `standard-a05` | 0.5 | as above           | as above                            |
//! | `standard-a07` | 0.7 | as above           | as above                            |
//! | `heat-only`    | 0.5 | sin(π(x+ℓ₁)/ℓ₁)    | 0                                   |
//! | `beam-only`    | 0.5 | 0                  | v = c(x), p = γc(x) + c(x)/2        |
//!
//! with c(x) = cos(πx/(2ℓ₂)). The standard profile is
//! v = c(x) + s·sin(πx/ℓ₂), s = −κℓ₂/(ℓ₁χ₁), and p = γv + c(x)/2, which
//! satisfies all three interface conditions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::domain::{Grid, MaterialParams, StateVector};
use crate::error::{invalid, Error, Result};
use crate::fracdiff::FractionalParams;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    Zero,
    StandardA03,
    StandardA05,
    StandardA07,
    HeatOnly,
    BeamOnly,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::Zero,
        Preset::StandardA03,
        Preset::StandardA05,
        Preset::StandardA07,
        Preset::HeatOnly,
        Preset::BeamOnly,
    ];

    pub const STANDARD: [Preset; 3] = [Preset::StandardA03, Preset::StandardA05, Preset::StandardA07];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Zero => "zero",
            Preset::StandardA03 => "standard-a03",
            Preset::StandardA05 => "standard-a05",
            Preset::StandardA07 => "standard-a07",
            Preset::HeatOnly => "heat-only",
            Preset::BeamOnly => "beam-only",
        }
    }

    pub fn alpha(self) -> f64 {
        match self {
            Preset::StandardA03 => 0.3,
            Preset::StandardA07 => 0.7,
            _ => 0.5,
        }
    }

    pub fn eta(self) -> f64 {
        1.0
    }

    pub fn material<T: Real>(self) -> MaterialParams<T> {
        MaterialParams::unit()
    }

    pub fn fractional<T: Real>(self) -> Result<FractionalParams<T>> {
        FractionalParams::new(T::lit(self.alpha()), T::lit(self.eta()))
    }

    /// The preset's initial state sampled on `grid` with material `mp`.
    pub fn initial_state<T: Real>(self, grid: &Grid<T>, mp: &MaterialParams<T>) -> StateVector<T> {
        let pi = T::PI();
        let (l1, l2) = (mp.ell1, mp.ell2);
        let zero = |_: T| T::zero();
        let heat = |x: T| (pi * (x + l1) / l1).sin();
        let c = move |x: T| (pi * x / (T::lit(2.0) * l2)).cos();
        let s = -mp.kappa * l2 / (l1 * mp.chi1());
        let v_std = move |x: T| c(x) + s * (pi * x / l2).sin();
        let g = mp.gamma;
        let half = T::lit(0.5);
        match self {
            Preset::Zero => StateVector::zeros(grid.layout()),
            Preset::StandardA03 | Preset::StandardA05 | Preset::StandardA07 => {
                StateVector::from_profiles(grid, heat, v_std, zero, move |x| g * v_std(x) + half * c(x), zero)
            }
            Preset::HeatOnly => StateVector::from_profiles(grid, heat, zero, zero, zero, zero),
            Preset::BeamOnly => {
                StateVector::from_profiles(grid, zero, c, zero, move |x| g * c(x) + half * c(x), zero)
            }
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .iter()
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Preset::ALL.iter().map(|p| p.name()).collect();
                invalid("preset", format!("unknown preset `{s}` (expected one of {})", names.join(", ")))
            })
    }
}
