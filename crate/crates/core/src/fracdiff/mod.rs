//! Exponentially weighted Caputo operators and their diffusive realization.
//!
//! Quadrature rules store positive nodes only, with doubled weights, so that
//! `Σ w_k g(ξ_k)` approximates `∫_ℝ g(ξ) dξ` for an even integrand `g`.

mod integrals;
mod integrate;
mod kernels;
mod oracle;
mod params;
mod quadrature;
mod verify;

pub use integrals::{closed_form_integrals, quadrature_integrals, IntegralSet, ReferenceIntegrals};
pub use integrate::{integrate, integrate_half_line, AdaptiveOptions, Integral};
pub use kernels::{diffusive_node_energy, fractional_output, phi_step, PhiPropagator};
pub use oracle::{caputo_oracle, caputo_weights};
pub use params::{mu_weight, FractionalParams};
pub use quadrature::{build_xi_quadrature, tail_truncation, XiQuadrature};
pub use verify::{compare_representation, RepresentationReport};
