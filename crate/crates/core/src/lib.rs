//! Simulation and spectral diagnostics for a heat rod coupled through a
//! transmission interface to a magnetizable piezoelectric beam with
//! exponentially weighted fractional damping, realized through its diffusive
//! (augmented) representation.
//!
//! The numerical core is generic over [`Real`] (`f32`, `f64`); the `*F64`
//! aliases below fix the usual double-precision instantiation.

pub mod assembly;
pub mod domain;
pub mod error;
pub mod fracdiff;
pub mod json;
pub mod linalg;
pub mod presets;
pub mod scalar;
pub mod spectral;
pub mod timestep;

pub use error::{Error, Result};
pub use scalar::{Field, Real};

pub type FractionalParamsF64 = fracdiff::FractionalParams<f64>;
pub type XiQuadratureF64 = fracdiff::XiQuadrature<f64>;
pub type MaterialParamsF64 = domain::MaterialParams<f64>;
pub type GridF64 = domain::Grid<f64>;
pub type StateVectorF64 = domain::StateVector<f64>;
pub type EnergyBreakdownF64 = domain::EnergyBreakdown<f64>;
pub type GeneratorMatrixF64 = assembly::GeneratorMatrix<f64>;
pub type SimConfigF64 = timestep::SimConfig<f64>;
pub type EnergyTraceF64 = timestep::EnergyTrace<f64>;
pub type SpectrumReportF64 = spectral::SpectrumReport<f64>;
pub type ResolventProfileF64 = spectral::ResolventProfile<f64>;
pub type DecayFitF64 = spectral::DecayFit<f64>;
