//! Material constants, grids, the discrete state and its energy.
//!
//! Grid conventions:
//! - heat rod (-ℓ₁, 0): `n_heat` interior nodes x_i = -ℓ₁ + (i+1)h₁ with
//!   h₁ = ℓ₁/(n_heat+1); z(-ℓ₁) = 0 and z(0) = V(0) are not unknowns.
//! - beam [0, ℓ₂): `n_beam + 1` nodes x_j = j h₂ with h₂ = ℓ₂/(n_beam+1),
//!   including the interface node j = 0; v(ℓ₂) = p(ℓ₂) = 0 are not unknowns.
//! - L² norms use the trapezoid rule on each subgrid. The interface node is
//!   an end node of both, so V(0) = z(0) carries the half weights h₂/2 (beam)
//!   and h₁/2 (rod).

mod energy;
mod grid;
mod params;
mod state;

pub use energy::{
    energy, energy_gram, norm_equivalence_constants, norm_h, norm_standard,
    transmission_residuals, EnergyBreakdown, TransmissionResiduals,
};
pub use grid::{BlockLayout, Coupling, Grid};
pub use params::MaterialParams;
pub use state::StateVector;

pub(crate) use energy::{heat_slopes as heat_slopes_of, velocity_masses};
