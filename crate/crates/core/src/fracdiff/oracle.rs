//! Product-integration (L1) approximation of the weighted Caputo derivative
//! (1/Γ(1-α)) ∫_0^t e^{-η(t-s)} (t-s)^{-α} f'(s) ds on a uniform grid.
//!
//! f is interpolated piecewise linearly, so f' is constant on every cell and
//! the kernel is integrated over each cell without approximation error beyond
//! the Gauss–Legendre evaluation of smooth cell integrals.

use std::sync::OnceLock;

use super::params::FractionalParams;
use crate::error::{check_len, invalid, Error, Result};
use crate::scalar::{gamma, Real};

const GL_POINTS: usize = 16;

/// Gauss–Legendre nodes and weights on [-1, 1].
fn gauss_legendre() -> &'static [(f64, f64); GL_POINTS] {
    static RULE: OnceLock<[(f64, f64); GL_POINTS]> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_POINTS;
        let mut out = [(0.0, 0.0); GL_POINTS];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            out[i] = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        out
    })
}

fn gl_integral<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T) -> T {
    let half = T::lit(0.5);
    let c = half * (a + b);
    let r = half * (b - a);
    gauss_legendre()
        .iter()
        .map(|&(x, w)| T::lit(w) * f(c + r * T::lit(x)))
        .sum::<T>()
        * r
}

/// ∫_0^h e^{-ητ} τ^{-α} dτ.
fn first_cell<T: Real>(alpha: T, eta: T, h: T) -> T {
    let one = T::one();
    let series = |h: T| {
        // Σ_n (-η)^n/n! h^{n+1-α}/(n+1-α), terms alternate and shrink for ηh ≤ 1.
        let mut term = h.powf(one - alpha);
        let mut acc = term / (one - alpha);
        for n in 1..200 {
            let nf = T::from_usize(n).unwrap();
            term = term * (-eta * h) / nf;
            let add = term / (nf + one - alpha);
            acc = acc + add;
            if add.abs() <= T::epsilon() * acc.abs() {
                break;
            }
        }
        acc
    };
    if eta * h <= one {
        return series(h);
    }
    // Singular part by series, smooth remainder by composite Gauss–Legendre.
    let split = one / eta;
    let mut acc = series(split);
    let mut a = split;
    while a < h {
        let b = (a * T::lit(2.0)).min(h);
        acc = acc + gl_integral(|t: T| (-eta * t).exp() * t.powf(-alpha), a, b);
        a = b;
    }
    acc
}

/// W_m = (1/Γ(1-α)) ∫_{m dt}^{(m+1)dt} e^{-ητ} τ^{-α} dτ for m = 0..count.
pub fn caputo_weights<T: Real>(fp: &FractionalParams<T>, dt: T, count: usize) -> Vec<T> {
    let alpha = fp.alpha();
    let eta = fp.eta();
    let one = T::one();
    let mut w = Vec::with_capacity(count);
    if eta == T::zero() {
        let scale = dt.powf(one - alpha) / gamma(T::lit(2.0) - alpha);
        let mut prev = T::zero();
        for m in 0..count {
            let next = T::from_usize(m + 1).unwrap().powf(one - alpha);
            w.push(scale * (next - prev));
            prev = next;
        }
        return w;
    }
    let inv_gamma = one / gamma(one - alpha);
    for m in 0..count {
        let cell = if m == 0 {
            first_cell(alpha, eta, dt)
        } else {
            let a = T::from_usize(m).unwrap() * dt;
            gl_integral(|t: T| (-eta * t).exp() * t.powf(-alpha), a, a + dt)
        };
        w.push(cell * inv_gamma);
    }
    w
}

/// Weighted Caputo derivative of the sampled f at every sample time.
///
/// The grid must be uniform; the first output is 0.
pub fn caputo_oracle<T: Real>(
    times: &[T],
    values: &[T],
    fp: &FractionalParams<T>,
) -> Result<Vec<T>> {
    check_len("caputo_oracle samples", times.len(), values.len())?;
    if times.len() < 2 {
        return Err(invalid("samples", "need at least 2 samples"));
    }
    let n = times.len();
    let dt = (times[n - 1] - times[0]) / T::from_usize(n - 1).unwrap();
    if !(dt > T::zero()) {
        return Err(Error::NonUniformGrid { index: 1 });
    }
    let slack = T::lit(1e-6).max(T::lit(100.0) * T::epsilon()) * dt;
    for i in 1..n {
        let step = times[i] - times[i - 1];
        if (step - dt).abs() > slack {
            return Err(Error::NonUniformGrid { index: i });
        }
    }
    let w = caputo_weights(fp, dt, n - 1);
    let slopes: Vec<T> = values.windows(2).map(|p| (p[1] - p[0]) / dt).collect();
    let mut out = Vec::with_capacity(n);
    out.push(T::zero());
    for k in 1..n {
        // D_k = Σ_{j<k} slope_j W_{k-1-j}
        let acc: T = slopes[..k]
            .iter()
            .zip(w[..k].iter().rev())
            .map(|(&s, &wm)| s * wm)
            .sum();
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::gamma::{gamma as g64, gamma_li};

    fn grid(dt: f64, n: usize) -> Vec<f64> {
        (0..=n).map(|i| i as f64 * dt).collect()
    }

    #[test]
    fn gauss_legendre_exact_on_polynomials() {
        let v = gl_integral(|x: f64| x.powi(31) + x.powi(30), 0.0, 1.0);
        assert!((v - (1.0 / 32.0 + 1.0 / 31.0)).abs() < 1e-14);
    }

    #[test]
    fn constant_gives_zero() {
        let fp = FractionalParams::new(0.4, 1.0).unwrap();
        let t = grid(0.01, 50);
        let f = vec![3.0; t.len()];
        assert!(caputo_oracle(&t, &f, &fp).unwrap().iter().all(|&d| d == 0.0));
    }

    #[test]
    fn linear_without_weight() {
        for &alpha in &[0.3, 0.5, 0.7] {
            let fp = FractionalParams::new(alpha, 0.0).unwrap();
            let t = grid(0.01, 500);
            let d = caputo_oracle(&t, &t, &fp).unwrap();
            for (ti, di) in t.iter().zip(&d).skip(1) {
                let exact = ti.powf(1.0 - alpha) / g64(2.0 - alpha);
                assert!((di - exact).abs() < 1e-12, "{alpha} {ti} {di} {exact}");
            }
        }
    }

    #[test]
    fn linear_with_weight() {
        for &(alpha, eta) in &[(0.3, 1.0), (0.7, 0.5), (0.5, 40.0)] {
            let fp = FractionalParams::new(alpha, eta).unwrap();
            let t = grid(0.05, 100);
            let d = caputo_oracle(&t, &t, &fp).unwrap();
            for (ti, di) in t.iter().zip(&d).skip(1) {
                let exact: f64 =
                    gamma_li(1.0 - alpha, eta * ti) / (g64(1.0 - alpha) * eta.powf(1.0 - alpha));
                assert!((di - exact).abs() < 1e-11, "{alpha} {eta} {ti} {di} {exact}");
            }
        }
    }

    #[test]
    fn rejects_non_uniform() {
        let fp = FractionalParams::new(0.5, 0.0).unwrap();
        let t = vec![0.0, 0.1, 0.25, 0.3];
        assert!(matches!(
            caputo_oracle(&t, &t, &fp),
            Err(Error::NonUniformGrid { .. })
        ));
        assert!(caputo_oracle(&[0.0], &[0.0], &fp).is_err());
    }
}
