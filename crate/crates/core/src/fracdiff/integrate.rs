//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::scalar::Real;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            abs_tol: 0.0,
            rel_tol: 1e-12,
            max_intervals: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    pub error: T,
}

struct Piece<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Piece<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Real> Eq for Piece<T> {}
impl<T: Real> PartialOrd for Piece<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Piece<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.as_f64().total_cmp(&other.error.as_f64())
    }
}

fn kronrod<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> Piece<T> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let radius = half * (b - a);
    let fc = f(center);
    let mut kron = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = radius * T::lit(XGK[j]);
        let pair = f(center - dx) + f(center + dx);
        kron = kron + pair * T::lit(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + pair * T::lit(WG[j / 2]);
        }
    }
    let value = kron * radius;
    let error = ((kron - gauss) * radius).abs();
    Piece { a, b, value, error }
}

/// ∫_a^b f, adaptive bisection of the interval with the largest error estimate.
pub fn integrate<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    opts: AdaptiveOptions,
) -> Result<Integral<T>> {
    let rel_tol = T::lit(opts.rel_tol).max(T::lit(50.0) * T::epsilon());
    let abs_tol = T::lit(opts.abs_tol);
    let first = kronrod(&f, a, b);
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    loop {
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::IntegrationNonConvergence {
                estimate: value.as_f64(),
                error_bound: error.as_f64(),
            });
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(Integral { value, error });
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::IntegrationNonConvergence {
                estimate: value.as_f64(),
                error_bound: error.as_f64(),
            });
        }
        let worst = heap.pop().expect("heap never empty");
        let mid = T::lit(0.5) * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval can no longer be split; accept what we have.
            heap.push(worst);
            let bound = T::lit(10.0) * T::epsilon() * value.abs();
            if error <= bound.max(abs_tol) {
                return Ok(Integral { value, error });
            }
            return Err(Error::IntegrationNonConvergence {
                estimate: value.as_f64(),
                error_bound: error.as_f64(),
            });
        }
        let left = kronrod(&f, worst.a, mid);
        let right = kronrod(&f, mid, worst.b);
        value = value - worst.value + left.value + right.value;
        error = error - worst.error + left.error + right.error;
        heap.push(left);
        heap.push(right);
        // Resum to shed accumulated cancellation in the running totals.
        if heap.len() % 64 == 0 {
            value = heap.iter().map(|p| p.value).sum();
            error = heap.iter().map(|p| p.error).sum();
        }
    }
}

/// ∫_0^∞ f, via ξ = e^s and s = t/(1-t²) on t ∈ (-1, 1).
///
/// Suited to integrands that behave like powers of ξ at both ends.
pub fn integrate_half_line<T: Real, F: Fn(T) -> T>(f: F, opts: AdaptiveOptions) -> Result<Integral<T>> {
    let limit = T::max_value().ln() * T::lit(0.9);
    let g = |t: T| {
        let one_minus = T::one() - t * t;
        let s = t / one_minus;
        if s.abs() > limit {
            return T::zero();
        }
        let xi = s.exp();
        let jac = (T::one() + t * t) / (one_minus * one_minus);
        let val = f(xi) * xi * jac;
        if val.is_finite() {
            val
        } else {
            T::zero()
        }
    };
    integrate(g, -T::one(), T::one(), opts)
}
