//! Eigenvalues, H-norm resolvent estimates and decay-rate fits.
//!
//! Everything is measured in the energy inner product: with G = WᵀW the
//! Gram matrix of ‖·‖_H, the operator A_h is studied through B = W A_h W⁻¹,
//! whose Euclidean geometry is the H geometry of A_h.

mod decay;
mod eigen;
mod factor;
mod kernel;
mod resolvent;

pub use decay::{decay_window, fit_decay, fit_power_law, DecayFit};
pub use eigen::{dense_eigenvalues, spectrum, SpectrumReport, DENSE_LIMIT};
pub use factor::GramFactor;
pub use kernel::{verify_stationary_kernel, KernelEntry, KernelReport};
pub use resolvent::{resolvent_norm, resolvent_profile, ProfileOptions, ResolventEstimator, ResolventProfile};
