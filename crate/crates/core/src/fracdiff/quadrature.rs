//! Rules for ∫_ℝ g(ξ) dξ with even g.
//!
//! Every rule here is the midpoint rule in s = ln ξ. Integrands that behave
//! like powers of ξ at 0 and at ∞ become exponentially decaying in s, and the
//! trapezoid/midpoint rule converges exponentially in the node count for such
//! functions; truncation of the s-range is the only other error source.

use serde::Serialize;

use super::integrals::{closed_form_integrals, quadrature_integrals};
use super::params::FractionalParams;
use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct XiQuadrature<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
    truncation: T,
}

impl<T: Real> XiQuadrature<T> {
    /// The rule with no nodes (undamped model).
    pub fn empty() -> Self {
        Self {
            nodes: Vec::new(),
            weights: Vec::new(),
            truncation: T::zero(),
        }
    }

    /// K midpoint nodes equispaced in ln ξ on [xi_min, xi_max].
    pub fn geometric(count: usize, xi_min: T, xi_max: T) -> Result<Self> {
        if count == 0 {
            return Ok(Self::empty());
        }
        if !(xi_min > T::zero() && xi_max > xi_min) || !xi_max.is_finite() {
            return Err(invalid(
                "xi_range",
                format!("need 0 < xi_min < xi_max (got {xi_min}, {xi_max})"),
            ));
        }
        let lo = xi_min.ln();
        let h = (xi_max.ln() - lo) / T::from_usize(count).unwrap();
        Ok(Self::from_log_grid(count, lo, h, xi_max))
    }

    /// K-node rule whose s-range and spacing balance the discretization error
    /// against both truncation tails for the given α.
    pub fn balanced(fp: &FractionalParams<T>, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(invalid("K", format!("need K >= 2 (got {count})")));
        }
        let a_lo = fp.low_rate();
        let a_hi = fp.high_rate();
        let c = T::one() / a_lo + T::one() / a_hi;
        let k = T::from_usize(count).unwrap();
        let pi = T::PI();
        let h = pi * (c / (T::lit(2.0) * k)).sqrt();
        let l = pi * pi / (T::lit(2.0) * h);
        let lo = -l / a_lo;
        let hi = l / a_hi;
        let h = (hi - lo) / k;
        Ok(Self::from_log_grid(count, lo, h, hi.exp()))
    }

    fn from_log_grid(count: usize, lo: T, h: T, truncation: T) -> Self {
        let two = T::lit(2.0);
        let half = T::lit(0.5);
        let mut nodes = Vec::with_capacity(count);
        let mut weights = Vec::with_capacity(count);
        for j in 0..count {
            let s = lo + (T::from_usize(j).unwrap() + half) * h;
            let xi = s.exp();
            nodes.push(xi);
            weights.push(two * h * xi);
        }
        Self {
            nodes,
            weights,
            truncation,
        }
    }

    /// Builds a rule from explicit positive nodes and (doubled) weights.
    pub fn from_parts(nodes: Vec<T>, weights: Vec<T>, truncation: T) -> Result<Self> {
        if nodes.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                context: "xi quadrature weights",
                expected: nodes.len(),
                got: weights.len(),
            });
        }
        if nodes.iter().any(|&x| !(x > T::zero()) || !x.is_finite()) {
            return Err(invalid("nodes", "xi nodes must be positive and finite"));
        }
        if weights.iter().any(|&w| !(w > T::zero()) || !w.is_finite()) {
            return Err(invalid("weights", "weights must be strictly positive"));
        }
        Ok(Self {
            nodes,
            weights,
            truncation,
        })
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    /// Weights for the positive nodes, already doubled for the mirror half.
    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Ξ, the upper edge of the truncated ξ range.
    pub fn truncation(&self) -> T {
        self.truncation
    }

    /// Σ w_k g(ξ_k) ≈ ∫_ℝ g for even g.
    pub fn integrate_even<F: Fn(T) -> T>(&self, g: F) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * g(x))
            .sum()
    }

    /// The same rule written with ±ξ_k and halved weights.
    pub fn symmetric(&self) -> (Vec<T>, Vec<T>) {
        let half = T::lit(0.5);
        let mut nodes = Vec::with_capacity(2 * self.count());
        let mut weights = Vec::with_capacity(2 * self.count());
        for (&x, &w) in self.nodes.iter().zip(&self.weights).rev() {
            nodes.push(-x);
            weights.push(half * w);
        }
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            nodes.push(x);
            weights.push(half * w);
        }
        (nodes, weights)
    }
}

/// Ξ such that the tail ∫_Ξ^∞ ξ^{2α-3} dξ = Ξ^{2α-2}/(2-2α) equals `tol`.
pub fn tail_truncation<T: Real>(alpha: T, tol: T) -> T {
    let a = T::lit(2.0) - T::lit(2.0) * alpha;
    (a * tol).powf(-T::one() / a)
}

/// Geometric K-node rule on [ξ_min, Ξ], with ξ_min picked from `tol`,
/// certified against reference values of C, D, J₂(1, η) and J₃(1, η).
///
/// Returns [`Error::QuadratureTolerance`] with the achieved relative error if
/// the certification fails.
pub fn build_xi_quadrature<T: Real>(
    fp: &FractionalParams<T>,
    count: usize,
    xi_max: T,
    tol: T,
) -> Result<XiQuadrature<T>> {
    if count < 2 {
        return Err(invalid("K", format!("need K >= 2 (got {count})")));
    }
    if !(xi_max > T::one()) {
        return Err(invalid("Xi", format!("need Xi > 1 (got {xi_max})")));
    }
    if !(tol > T::zero()) {
        return Err(invalid("tol", "tolerance must be positive"));
    }
    let a_lo = fp.low_rate();
    let xi_min = (a_lo * tol).powf(T::one() / a_lo).min(T::one() / xi_max);
    let rule = XiQuadrature::geometric(count, xi_min, xi_max)?;
    let reference = closed_form_integrals(fp, T::one())?.values;
    let got = quadrature_integrals(&rule, fp, T::one())?;
    let achieved = [
        (got.c, reference.c),
        (got.d, reference.d),
        (got.j2, reference.j2),
        (got.j3, reference.j3),
    ]
    .iter()
    .map(|&(q, r)| ((q - r) / r).abs())
    .fold(T::zero(), T::max);
    if achieved <= tol {
        Ok(rule)
    } else {
        Err(Error::QuadratureTolerance {
            achieved: achieved.as_f64(),
            target: tol.as_f64(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn geometric_rule_shape() {
        let r = XiQuadrature::geometric(10, 1e-2_f64, 1e2).unwrap();
        assert_eq!(r.count(), 10);
        assert!(r.weights().iter().all(|&w| w > 0.0));
        assert!(r.nodes().windows(2).all(|p| p[1] > p[0]));
        assert!(r.nodes()[0] > 1e-2 && r.nodes()[9] < 1e2);
        // Nodes are symmetric in ln ξ about 0.
        assert!((r.nodes()[0] * r.nodes()[9] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_form_matches_doubled() {
        let fp = FractionalParams::new(0.4_f64, 0.5).unwrap();
        let r = XiQuadrature::balanced(&fp, 40).unwrap();
        let g = |x: f64| x.abs().powf(2.0 * 0.4 - 1.0) / (x * x + 1.5);
        let (n, w) = r.symmetric();
        let full: f64 = n.iter().zip(&w).map(|(&x, &w)| w * g(x)).sum();
        let doubled = r.integrate_even(g);
        assert!(((full - doubled) / doubled).abs() < 1e-12);
    }

    #[test]
    fn balanced_rule_hits_pi() {
        let fp = FractionalParams::new(0.5_f64, 0.0).unwrap();
        let r = XiQuadrature::balanced(&fp, 128).unwrap();
        let c = r.integrate_even(|x| 1.0 / (x * x + 1.0));
        assert!((c - PI).abs() / PI < 1e-6, "{c}");
    }

    #[test]
    fn tail_truncation_matches_bound() {
        let xi = tail_truncation(0.3_f64, 1e-6);
        let tail = xi.powf(2.0 * 0.3 - 2.0) / (2.0 - 2.0 * 0.3);
        assert!((tail - 1e-6).abs() < 1e-18);
    }

    #[test]
    fn certified_rule_reports_shortfall() {
        let fp = FractionalParams::new(0.5_f64, 0.0).unwrap();
        match build_xi_quadrature(&fp, 4, 10.0, 1e-6) {
            Err(Error::QuadratureTolerance { achieved, target }) => {
                assert!(achieved > target);
            }
            other => panic!("expected tolerance failure, got {other:?}"),
        }
        let xi = tail_truncation(0.5, 1e-7);
        assert!(build_xi_quadrature(&fp, 160, xi, 1e-6).is_ok());
    }
}
