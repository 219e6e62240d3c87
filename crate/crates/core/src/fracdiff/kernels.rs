use super::params::FractionalParams;
use super::quadrature::XiQuadrature;
use crate::error::{check_len, invalid, Result};
use crate::scalar::Real;

/// Exact one-step propagator of φ' = -(ξ²+η)φ + μ(ξ)V with V frozen over the
/// step, with all per-node factors precomputed.
#[derive(Debug, Clone)]
pub struct PhiPropagator<T> {
    decay: Vec<T>,
    gain: Vec<T>,
}

impl<T: Real> PhiPropagator<T> {
    pub fn new(fp: &FractionalParams<T>, rule: &XiQuadrature<T>, dt: T) -> Result<Self> {
        if !(dt > T::zero()) {
            return Err(invalid("dt", format!("dt must be positive (got {dt})")));
        }
        let mut decay = Vec::with_capacity(rule.count());
        let mut gain = Vec::with_capacity(rule.count());
        for &xi in rule.nodes() {
            let a = xi * xi + fp.eta();
            let mu = fp.mu(xi)?;
            // 1 - e^{-a dt} without cancellation for small a dt.
            let one_minus = -(-a * dt).exp_m1();
            decay.push((-a * dt).exp());
            gain.push(one_minus * mu / a);
        }
        Ok(Self { decay, gain })
    }

    pub fn advance(&self, phi: &mut [T], v_input: T) -> Result<()> {
        check_len("phi_step", self.decay.len(), phi.len())?;
        for ((p, &e), &g) in phi.iter_mut().zip(&self.decay).zip(&self.gain) {
            *p = e * *p + g * v_input;
        }
        Ok(())
    }
}

/// One exponential-integrator step of the diffusive variables at one point.
pub fn phi_step<T: Real>(
    phi: &[T],
    v_input: T,
    fp: &FractionalParams<T>,
    rule: &XiQuadrature<T>,
    dt: T,
) -> Result<Vec<T>> {
    let prop = PhiPropagator::new(fp, rule, dt)?;
    let mut out = phi.to_vec();
    prop.advance(&mut out, v_input)?;
    Ok(out)
}

/// 𝔠 Σ_k w_k μ(ξ_k) φ_k.
pub fn fractional_output<T: Real>(
    phi: &[T],
    fp: &FractionalParams<T>,
    rule: &XiQuadrature<T>,
) -> Result<T> {
    check_len("fractional_output", rule.count(), phi.len())?;
    let mut acc = T::zero();
    for ((&p, &xi), &w) in phi.iter().zip(rule.nodes()).zip(rule.weights()) {
        acc = acc + w * fp.mu(xi)? * p;
    }
    Ok(fp.coeff_c() * acc)
}

/// Σ_k w_k (ξ_k²+η) φ_k².
pub fn diffusive_node_energy<T: Real>(
    phi: &[T],
    fp: &FractionalParams<T>,
    rule: &XiQuadrature<T>,
) -> Result<T> {
    check_len("diffusive_node_energy", rule.count(), phi.len())?;
    Ok(phi
        .iter()
        .zip(rule.nodes())
        .zip(rule.weights())
        .map(|((&p, &xi), &w)| w * (xi * xi + fp.eta()) * p * p)
        .sum())
}
