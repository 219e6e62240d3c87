use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

/// Order and exponential weight of the fractional damping.
///
/// `coeff_c` is always recomputed from `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FractionalParams<T> {
    alpha: T,
    eta: T,
    coeff_c: T,
}

impl<T: Real> FractionalParams<T> {
    pub fn new(alpha: T, eta: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha < T::one()) {
            return Err(invalid("alpha", format!("0 < alpha < 1 violated (alpha = {alpha})")));
        }
        if !(eta >= T::zero()) || !eta.is_finite() {
            return Err(invalid("eta", format!("eta >= 0 violated (eta = {eta})")));
        }
        let coeff_c = (alpha * T::PI()).sin() / T::PI();
        Ok(Self { alpha, eta, coeff_c })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn eta(&self) -> T {
        self.eta
    }

    /// sin(απ)/π.
    pub fn coeff_c(&self) -> T {
        self.coeff_c
    }

    pub fn mu(&self, xi: T) -> Result<T> {
        mu_weight(xi, self.alpha)
    }

    /// Exponent of the weight near ξ = 0 in the output integrand |ξ|^{2α-1}.
    pub(crate) fn low_rate(&self) -> T {
        (T::lit(2.0) * self.alpha).min(T::one())
    }

    /// Decay exponent of the tail |ξ|^{2α-3}, i.e. 2 - 2α.
    pub(crate) fn high_rate(&self) -> T {
        T::lit(2.0) - T::lit(2.0) * self.alpha
    }
}

/// |ξ|^{(2α-1)/2}.
pub fn mu_weight<T: Real>(xi: T, alpha: T) -> Result<T> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(invalid("alpha", format!("0 < alpha < 1 violated (alpha = {alpha})")));
    }
    let expo = (T::lit(2.0) * alpha - T::one()) / T::lit(2.0);
    if xi == T::zero() && expo < T::zero() {
        return Err(Error::SingularWeight {
            alpha: alpha.as_f64(),
        });
    }
    Ok(xi.abs().powf(expo))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_weight_examples() {
        assert_eq!(mu_weight(1.0_f64, 0.3).unwrap(), 1.0);
        assert_eq!(mu_weight(5.0_f64, 0.5).unwrap(), 1.0);
        let v = mu_weight(4.0_f64, 0.75).unwrap();
        assert!((v - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(mu_weight(-4.0_f64, 0.75).unwrap(), v);
    }

    #[test]
    fn mu_weight_singular_at_zero() {
        assert!(matches!(
            mu_weight(0.0_f64, 0.3),
            Err(Error::SingularWeight { .. })
        ));
        assert_eq!(mu_weight(0.0_f64, 0.7).unwrap(), 0.0);
    }

    #[test]
    fn params_validation() {
        assert!(FractionalParams::new(1.5_f64, 0.0).is_err());
        assert!(FractionalParams::new(0.0_f64, 0.0).is_err());
        assert!(FractionalParams::new(0.5_f64, -1.0).is_err());
        let fp = FractionalParams::new(0.5_f64, 1.0).unwrap();
        assert!((fp.coeff_c() - 1.0 / std::f64::consts::PI).abs() < 1e-16);
    }
}
