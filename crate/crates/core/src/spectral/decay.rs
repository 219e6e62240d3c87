use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;
use crate::timestep::EnergyTrace;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayFit<T> {
    /// Slope of ln E against ln t.
    pub exponent: T,
    pub intercept: T,
    pub r_squared: T,
    pub window: [T; 2],
    pub points: usize,
}

/// Least-squares fit y ≈ c·x^s on positive data; returns (s, ln c, R²).
pub fn fit_power_law<T: Real>(xs: &[T], ys: &[T]) -> Result<(T, T, T)> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch {
            context: "power-law fit".into(),
            expected: xs.len(),
            got: ys.len(),
        });
    }
    if xs.len() < 3 {
        return Err(Error::Fit(format!("need at least 3 points, got {}", xs.len())));
    }
    if xs.iter().chain(ys).any(|&v| !(v > T::zero()) || !v.is_finite()) {
        return Err(Error::Fit("power-law fit needs positive finite data".into()));
    }
    let lx: Vec<T> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<T> = ys.iter().map(|y| y.ln()).collect();
    let n = T::from_usize(xs.len()).unwrap();
    let mx = lx.iter().copied().sum::<T>() / n;
    let my = ly.iter().copied().sum::<T>() / n;
    let sxx: T = lx.iter().map(|&x| (x - mx) * (x - mx)).sum();
    let sxy: T = lx.iter().zip(&ly).map(|(&x, &y)| (x - mx) * (y - my)).sum();
    let syy: T = ly.iter().map(|&y| (y - my) * (y - my)).sum();
    if sxx <= T::zero() {
        return Err(Error::Fit("abscissae are all equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy > T::zero() {
        sxy * sxy / (sxx * syy)
    } else {
        T::one()
    };
    Ok((slope, intercept, r2))
}

/// Fits E(t) ≈ C·t^p over the samples with t in `window`.
pub fn fit_decay<T: Real>(trace: &EnergyTrace<T>, window: [T; 2]) -> Result<DecayFit<T>> {
    let [t0, t1] = window;
    if !(t0 > T::zero()) || !(t1 > t0) {
        return Err(invalid("window", "need 0 < t0 < t1"));
    }
    match (trace.times.first(), trace.times.last()) {
        (Some(&a), Some(&b)) if t0 >= a && t1 <= b => {}
        _ => return Err(invalid("window", "outside the trace")),
    }
    let (ts, es): (Vec<T>, Vec<T>) = trace
        .times
        .iter()
        .zip(trace.totals())
        .filter(|(&t, _)| t >= t0 && t <= t1)
        .map(|(&t, e)| (t, e))
        .unzip();
    if es.iter().any(|&e| !(e > T::zero())) {
        return Err(Error::Fit("non-positive energy in the window".into()));
    }
    let (exponent, intercept, r_squared) = fit_power_law(&ts, &es)?;
    Ok(DecayFit {
        exponent,
        intercept,
        r_squared,
        window,
        points: ts.len(),
    })
}

/// Interval after E has dropped by `drop` and before it falls under `floor`.
///
/// Returns `None` when the trace never enters that range with t > 0.
pub fn decay_window<T: Real>(trace: &EnergyTrace<T>, drop: T, floor: T) -> Option<[T; 2]> {
    let totals = trace.totals();
    let e0 = *totals.first()?;
    if !(e0 > T::zero()) {
        return None;
    }
    let start = trace
        .times
        .iter()
        .zip(&totals)
        .position(|(&t, &e)| t > T::zero() && e <= e0 / drop)?;
    let mut end = start;
    for (i, &e) in totals.iter().enumerate().skip(start) {
        if e < floor {
            break;
        }
        end = i;
    }
    (end > start).then(|| [trace.times[start], trace.times[end]])
}
