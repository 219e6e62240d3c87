use serde::Serialize;

use super::kernels::{fractional_output, PhiPropagator};
use super::oracle::caputo_oracle;
use super::params::FractionalParams;
use super::quadrature::XiQuadrature;
use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Diffusive output against the convolution oracle for one input signal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepresentationReport<T> {
    pub times: Vec<T>,
    pub diffusive: Vec<T>,
    pub oracle: Vec<T>,
    /// ‖diffusive − oracle‖ / ‖oracle‖ in discrete L²(0, T).
    pub relative_l2_error: T,
    pub max_abs_error: T,
}

/// Drives the diffusive variables (φ(0) = 0) with the cellwise slopes of f
/// and compares the output against [`caputo_oracle`] on the same samples.
///
/// Both sides see the same piecewise-linear f, so the difference measures the
/// ξ-quadrature of the kernel alone.
pub fn compare_representation<T: Real, F: Fn(T) -> T>(
    f: F,
    fp: &FractionalParams<T>,
    rule: &XiQuadrature<T>,
    t_end: T,
    dt: T,
) -> Result<RepresentationReport<T>> {
    if !(dt > T::zero() && t_end >= dt) {
        return Err(invalid("dt", "need 0 < dt <= t_end"));
    }
    let steps = (t_end / dt).round().to_usize().unwrap_or(0);
    let times: Vec<T> = (0..=steps).map(|i| T::from_usize(i).unwrap() * dt).collect();
    let values: Vec<T> = times.iter().map(|&t| f(t)).collect();
    let oracle = caputo_oracle(&times, &values, fp)?;

    let prop = PhiPropagator::new(fp, rule, dt)?;
    let mut phi = vec![T::zero(); rule.count()];
    let mut diffusive = Vec::with_capacity(times.len());
    diffusive.push(fractional_output(&phi, fp, rule)?);
    for pair in values.windows(2) {
        prop.advance(&mut phi, (pair[1] - pair[0]) / dt)?;
        diffusive.push(fractional_output(&phi, fp, rule)?);
    }

    let mut num = T::zero();
    let mut den = T::zero();
    let mut max_abs = T::zero();
    for (&d, &o) in diffusive.iter().zip(&oracle) {
        let e = d - o;
        num = num + e * e;
        den = den + o * o;
        max_abs = max_abs.max(e.abs());
    }
    let relative_l2_error = if den > T::zero() {
        (num / den).sqrt()
    } else {
        num.sqrt()
    };
    Ok(RepresentationReport {
        times,
        diffusive,
        oracle,
        relative_l2_error,
        max_abs_error: max_abs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_shrinks_with_nodes() {
        let fp = FractionalParams::new(0.5, 1.0).unwrap();
        let mut last = f64::INFINITY;
        for &k in &[16, 32, 64] {
            let rule = XiQuadrature::balanced(&fp, k).unwrap();
            let r = compare_representation(|t: f64| t.sin(), &fp, &rule, 2.0, 1e-2).unwrap();
            assert!(r.relative_l2_error < last);
            last = r.relative_l2_error;
        }
        assert!(last < 1e-3, "{last}");
    }

    #[test]
    fn zero_signal() {
        let fp = FractionalParams::new(0.3, 0.0).unwrap();
        let rule = XiQuadrature::balanced(&fp, 8).unwrap();
        let r = compare_representation(|_t: f64| 0.0, &fp, &rule, 1.0, 0.1).unwrap();
        assert_eq!(r.relative_l2_error, 0.0);
        assert_eq!(r.times.len(), 11);
    }
}
