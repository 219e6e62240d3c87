use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::decay::fit_power_law;
use super::eigen::SpectrumReport;
use super::factor::GramFactor;
use crate::assembly::GeneratorMatrix;
use crate::domain::{Grid, MaterialParams};
use crate::error::{invalid, Error, Result};
use crate::fracdiff::FractionalParams;
use crate::linalg::{CsrMatrix, SparseLu};
use crate::scalar::Real;

const LANCZOS_MAX: usize = 80;
const LANCZOS_TOL: f64 = 1e-10;

/// Evaluates ‖(iλ − A_h)⁻¹‖_H for many λ on one discretization.
///
/// The norm is the largest singular value of W(iλ − A_h)⁻¹W⁻¹, obtained by
/// Lanczos on its Gram operator with full reorthogonalization; each product
/// costs one solve with (iλ − A_h) and one with its adjoint.
pub struct ResolventEstimator<'a, T> {
    a: &'a GeneratorMatrix<T>,
    complex_a: CsrMatrix<Complex<T>>,
    complex_at: CsrMatrix<Complex<T>>,
    w: GramFactor<T>,
    seed: u64,
}

impl<'a, T: Real> ResolventEstimator<'a, T> {
    pub fn new(
        a: &'a GeneratorMatrix<T>,
        mp: &MaterialParams<T>,
        fp: &FractionalParams<T>,
        grid: &Grid<T>,
        seed: u64,
    ) -> Result<Self> {
        let w = GramFactor::new(mp, fp, grid)?;
        if w.dimension() != a.dimension() {
            return Err(invalid("grid", "generator and grid disagree"));
        }
        let complex_a = a.matrix().map(|v| Complex::new(v, T::zero()));
        let complex_at = complex_a.transpose();
        Ok(Self {
            a,
            complex_a,
            complex_at,
            w,
            seed,
        })
    }

    pub fn norm(&self, lambda: T) -> Result<T> {
        let n = self.a.dimension();
        let phi = self.a.layout().phi();
        let il = Complex::new(T::zero(), lambda);
        let minus = Complex::new(-T::one(), T::zero());
        // iλ − A and its adjoint −iλ − Aᵀ.
        let fwd = SparseLu::factor(&self.complex_a.shifted(il, minus), phi.clone())?;
        let adj = SparseLu::factor(&self.complex_at.shifted(-il, minus), phi)?;
        let gram_op = |q: &[Complex<T>]| -> Result<Vec<Complex<T>>> {
            let x = fwd.solve(&self.w.apply_inverse(q))?;
            let z = self.w.apply(&x);
            let u = adj.solve(&self.w.apply_transpose(&z))?;
            Ok(self.w.apply_inverse_transpose(&u))
        };

        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut q: Vec<Complex<T>> = (0..n)
            .map(|_| Complex::new(T::lit(rng.gen_range(-1.0..1.0)), T::lit(rng.gen_range(-1.0..1.0))))
            .collect();
        let qn = norm2(&q);
        q.iter_mut().for_each(|x| *x = *x / qn);

        let mut basis: Vec<Vec<Complex<T>>> = Vec::new();
        let mut alphas: Vec<T> = Vec::new();
        let mut betas: Vec<T> = Vec::new();
        let mut theta_prev = T::zero();
        let steps = LANCZOS_MAX.min(n);
        for j in 0..steps {
            let mut w = gram_op(&q)?;
            let alpha = dot(&q, &w).re;
            for (wi, qi) in w.iter_mut().zip(&q) {
                *wi = *wi - *qi * alpha;
            }
            if let (Some(prev), Some(&b)) = (basis.last(), betas.last()) {
                for (wi, pi) in w.iter_mut().zip(prev) {
                    *wi = *wi - *pi * b;
                }
            }
            basis.push(q.clone());
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(b, &w);
                    for (wi, bi) in w.iter_mut().zip(b) {
                        *wi = *wi - *bi * c;
                    }
                }
            }
            alphas.push(alpha);
            let beta = norm2(&w);
            let theta = tridiagonal_max_eigenvalue(&alphas, &betas);
            if !theta.is_finite() {
                return Err(Error::SingularMatrix { column: 0 });
            }
            let converged = j > 0 && (theta - theta_prev).abs() <= T::lit(LANCZOS_TOL) * theta;
            if converged || beta <= T::lit(1e-13) * theta || j + 1 == steps {
                return Ok(theta.sqrt());
            }
            theta_prev = theta;
            betas.push(beta);
            q = w.iter().map(|&x| x / beta).collect();
        }
        unreachable!("Lanczos loop always returns")
    }
}

fn dot<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| acc + x.conj() * y)
}

fn norm2<T: Real>(a: &[Complex<T>]) -> T {
    a.iter().map(|x| x.norm_sqr()).sum::<T>().sqrt()
}

/// Largest eigenvalue of the symmetric tridiagonal matrix with diagonal
/// `alphas` and off-diagonal `betas`, by Sturm-sequence bisection.
fn tridiagonal_max_eigenvalue<T: Real>(alphas: &[T], betas: &[T]) -> T {
    let n = alphas.len();
    let off = |i: usize| if i < betas.len() { betas[i].abs() } else { T::zero() };
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for i in 0..n {
        let r = off(i) + if i > 0 { off(i - 1) } else { T::zero() };
        lo = lo.min(alphas[i] - r);
        hi = hi.max(alphas[i] + r);
    }
    let tiny = T::epsilon() * (hi.abs() + T::one());
    // Number of eigenvalues below x.
    let count_below = |x: T| {
        let mut c = 0;
        let mut d = T::one();
        for i in 0..n {
            let b2 = if i > 0 { off(i - 1) * off(i - 1) } else { T::zero() };
            d = alphas[i] - x - if i > 0 { b2 / d } else { T::zero() };
            if d == T::zero() {
                d = tiny;
            }
            if d < T::zero() {
                c += 1;
            }
        }
        c
    };
    for _ in 0..200 {
        let mid = T::lit(0.5) * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// ‖(iλ − A_h)⁻¹‖ in the H-norm.
pub fn resolvent_norm<T: Real>(
    a: &GeneratorMatrix<T>,
    lambda: T,
    mp: &MaterialParams<T>,
    fp: &FractionalParams<T>,
    grid: &Grid<T>,
) -> Result<T> {
    ResolventEstimator::new(a, mp, fp, grid, 0)?.norm(lambda)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileOptions {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub count: usize,
    pub seed: u64,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        Self {
            lambda_min: 0.1,
            lambda_max: 1e3,
            count: 60,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResolventProfile<T> {
    /// Logarithmic sample grid.
    pub lambdas: Vec<T>,
    pub norms: Vec<T>,
    pub norm_at_zero: T,
    /// Im λ_k of the oscillatory eigenvalues inside the window.
    pub peak_lambdas: Vec<T>,
    /// Resolvent norm at each peak frequency.
    pub peak_norms: Vec<T>,
    /// [smallest oscillation frequency, c_min / h_beam].
    pub window: [T; 2],
    /// Log-log slope of the peak norms over the window.
    pub fitted_slope: T,
    pub r_squared: T,
}

/// Samples the resolvent norm on a log grid and fits the growth exponent of
/// its resonance peaks.
///
/// Between eigenfrequencies the norm dips by orders of magnitude, so the
/// slope is fitted on the norms at Im λ_k. The window stops at c_min/h, the
/// frequency where the slower wave family reaches one radian per cell.
pub fn resolvent_profile<T: Real>(
    a: &GeneratorMatrix<T>,
    spec: &SpectrumReport<T>,
    mp: &MaterialParams<T>,
    fp: &FractionalParams<T>,
    grid: &Grid<T>,
    opts: &ProfileOptions,
) -> Result<ResolventProfile<T>> {
    if !(opts.lambda_min > 0.0 && opts.lambda_max > opts.lambda_min) || opts.count < 2 {
        return Err(invalid("lambdas", "need 0 < lambda_min < lambda_max and count >= 2"));
    }
    let est = ResolventEstimator::new(a, mp, fp, grid, opts.seed)?;
    let ratio = (opts.lambda_max / opts.lambda_min).ln();
    let lambdas: Vec<T> = (0..opts.count)
        .map(|i| T::lit(opts.lambda_min * (ratio * i as f64 / (opts.count - 1) as f64).exp()))
        .collect();
    let norms = lambdas.iter().map(|&l| est.norm(l)).collect::<Result<Vec<T>>>()?;
    let norm_at_zero = est.norm(T::zero())?;

    let freqs = spec.oscillation_frequencies();
    let lo = *freqs
        .first()
        .ok_or_else(|| Error::Fit("no oscillatory eigenvalues".into()))?;
    let hi = mp.min_wave_speed() / grid.h_beam;
    let peak_lambdas: Vec<T> = freqs.into_iter().filter(|&f| f >= lo && f <= hi).collect();
    let peak_norms = peak_lambdas.iter().map(|&l| est.norm(l)).collect::<Result<Vec<T>>>()?;
    let (fitted_slope, _, r_squared) = fit_power_law(&peak_lambdas, &peak_norms)?;
    Ok(ResolventProfile {
        lambdas,
        norms,
        norm_at_zero,
        peak_lambdas,
        peak_norms,
        window: [lo, hi],
        fitted_slope,
        r_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_bisection() {
        // [[2,1,0],[1,2,1],[0,1,2]]: eigenvalues 2 - √2, 2, 2 + √2.
        let t = tridiagonal_max_eigenvalue(&[2.0_f64, 2.0, 2.0], &[1.0, 1.0]);
        assert!((t - (2.0 + 2f64.sqrt())).abs() < 1e-12);
        assert_eq!(tridiagonal_max_eigenvalue(&[3.0_f64], &[]), 3.0);
    }
}
