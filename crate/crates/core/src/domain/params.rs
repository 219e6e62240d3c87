use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Physical constants of the heat rod and the piezoelectric beam.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialParams<T> {
    pub rho: T,
    pub chi: T,
    pub gamma: T,
    pub beta: T,
    pub mu_mag: T,
    pub kappa: T,
    pub ell1: T,
    pub ell2: T,
}

impl<T: Real> MaterialParams<T> {
    /// ρ = 1, χ = 2, γ = 1, β = 1, μ = 1, κ = 1, ℓ₁ = ℓ₂ = 1, so χ₁ = 1.
    pub fn unit() -> Self {
        let one = T::one();
        Self {
            rho: one,
            chi: T::lit(2.0),
            gamma: one,
            beta: one,
            mu_mag: one,
            kappa: one,
            ell1: one,
            ell2: one,
        }
    }

    /// χ₁ = χ − γ²β.
    pub fn chi1(&self) -> T {
        self.chi - self.gamma * self.gamma * self.beta
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("rho", self.rho),
            ("chi", self.chi),
            ("beta", self.beta),
            ("mu_mag", self.mu_mag),
            ("kappa", self.kappa),
            ("ell1", self.ell1),
            ("ell2", self.ell2),
        ];
        for (name, v) in positive {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(invalid(name, format!("must be positive and finite (got {v})")));
            }
        }
        if !self.gamma.is_finite() {
            return Err(invalid("gamma", "must be finite"));
        }
        let chi1 = self.chi1();
        if !(chi1 > T::zero()) {
            return Err(invalid(
                "chi",
                format!("chi1 = chi - gamma^2 beta > 0 violated (chi1 = {chi1})"),
            ));
        }
        Ok(())
    }

    /// Largest wave speed of the (v, p) system.
    pub fn max_wave_speed(&self) -> T {
        self.wave_speeds().1
    }

    /// Smallest wave speed of the (v, p) system.
    pub fn min_wave_speed(&self) -> T {
        self.wave_speeds().0
    }

    fn wave_speeds(&self) -> (T, T) {
        // Eigenvalues of M^{-1}S with M = diag(ρ, μ), S = [[χ, -γβ], [-γβ, β]].
        let a = self.chi / self.rho;
        let d = self.beta / self.mu_mag;
        let bc = (self.gamma * self.beta).powi(2) / (self.rho * self.mu_mag);
        let half = T::lit(0.5);
        let disc = ((a - d) * (a - d) * T::lit(0.25) + bc).sqrt();
        let mid = half * (a + d);
        ((mid - disc).max(T::zero()).sqrt(), (mid + disc).sqrt())
    }
}
