use serde::Serialize;

use super::integrate::{integrate_half_line, AdaptiveOptions};
use super::params::FractionalParams;
use super::quadrature::XiQuadrature;
use crate::error::{invalid, Result};
use crate::scalar::Real;

/// C(α,η), D(α,η), J₁(λ,η,α), J₂(λ,η), J₃(λ,η).
///
/// J₂ and J₃ are square roots of the underlying integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralSet<T> {
    pub c: T,
    pub d: T,
    pub j1: T,
    pub j2: T,
    pub j3: T,
}

/// Reference values together with the constant c₁ in J₁ = c₁(|λ|+η)^{α/2-5/4}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferenceIntegrals<T> {
    pub values: IntegralSet<T>,
    pub c1: T,
}

fn shift<T: Real>(fp: &FractionalParams<T>, lambda: T) -> Result<T> {
    let a = lambda.abs() + fp.eta();
    if a > T::zero() {
        Ok(a)
    } else {
        Err(invalid("lambda", "J-integrals need |lambda| + eta > 0"))
    }
}

/// Reference values: J₂ and J₃ in closed form, C, D, J₁ and c₁ by adaptive
/// integration.
pub fn closed_form_integrals<T: Real>(
    fp: &FractionalParams<T>,
    lambda: T,
) -> Result<ReferenceIntegrals<T>> {
    let a = shift(fp, lambda)?;
    let alpha = fp.alpha();
    let b = fp.eta() + T::one();
    let two = T::lit(2.0);
    let opts = AdaptiveOptions {
        rel_tol: if T::is_double() { 1e-13 } else { 1e-6 },
        ..AdaptiveOptions::default()
    };
    let p = two * alpha - T::one();
    let c = integrate_half_line(|x: T| x.powf(p) / (x * x + b), opts)?.value * two;
    let d = integrate_half_line(
        |x: T| {
            let q = x * x + b;
            x.powf(p) / (q * q)
        },
        opts,
    )?
    .value
        * two;
    let e1 = alpha + T::lit(0.5);
    let j1 = integrate_half_line(
        |x: T| {
            let q = x * x + a;
            x.powf(e1) / (q * q)
        },
        opts,
    )?
    .value
        * two;
    let e2 = alpha / two - T::lit(0.25);
    let c1 = integrate_half_line(
        |u: T| {
            let q = T::one() + u;
            u.powf(e2) / (q * q)
        },
        opts,
    )?
    .value;
    let j2 = (T::FRAC_PI_2()).sqrt() * a.powf(T::lit(-0.75));
    let j3 = T::PI().sqrt() / T::lit(4.0) * a.powf(T::lit(-1.25));
    Ok(ReferenceIntegrals {
        values: IntegralSet { c, d, j1, j2, j3 },
        c1,
    })
}

/// The same five quantities evaluated with a ξ-rule.
pub fn quadrature_integrals<T: Real>(
    rule: &XiQuadrature<T>,
    fp: &FractionalParams<T>,
    lambda: T,
) -> Result<IntegralSet<T>> {
    let a = shift(fp, lambda)?;
    let b = fp.eta() + T::one();
    let two = T::lit(2.0);
    let p = two * fp.alpha() - T::one();
    let e1 = fp.alpha() + T::lit(0.5);
    let c = rule.integrate_even(|x| x.powf(p) / (x * x + b));
    let d = rule.integrate_even(|x| {
        let q = x * x + b;
        x.powf(p) / (q * q)
    });
    let j1 = rule.integrate_even(|x| {
        let q = x * x + a;
        x.powf(e1) / (q * q)
    });
    let j2 = rule
        .integrate_even(|x| {
            let q = x * x + a;
            T::one() / (q * q)
        })
        .sqrt();
    let j3 = rule
        .integrate_even(|x| {
            let q = x * x + a;
            let q2 = q * q;
            x * x / (q2 * q2)
        })
        .sqrt();
    Ok(IntegralSet { c, d, j1, j2, j3 })
}
