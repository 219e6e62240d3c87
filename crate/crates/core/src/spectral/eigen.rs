use num_complex::Complex;
use serde::Serialize;

use super::factor::GramFactor;
use crate::assembly::GeneratorMatrix;
use crate::domain::{Grid, MaterialParams};
use crate::error::{check_len, Error, Result};
use crate::fracdiff::FractionalParams;
use crate::scalar::Real;

/// Largest dimension accepted for dense eigensolutions.
pub const DENSE_LIMIT: usize = 4000;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "T: Real + Serialize")]
pub struct SpectrumReport<T: Real> {
    pub dimension: usize,
    /// Sorted by imaginary part, then real part; serialized as [re, im].
    #[serde(serialize_with = "as_pairs")]
    pub eigenvalues: Vec<Complex<T>>,
    pub max_real_part: T,
    pub min_abs_real_part: T,
    pub min_abs_eigenvalue: T,
}

impl<T: Real> SpectrumReport<T> {
    pub fn from_eigenvalues(mut eigenvalues: Vec<Complex<T>>) -> Self {
        eigenvalues.sort_by(|a, b| {
            a.im.as_f64()
                .total_cmp(&b.im.as_f64())
                .then(a.re.as_f64().total_cmp(&b.re.as_f64()))
        });
        let fold = |f: fn(&Complex<T>) -> T, init: T, pick: fn(T, T) -> T| {
            eigenvalues.iter().map(f).fold(init, pick)
        };
        Self {
            dimension: eigenvalues.len(),
            max_real_part: fold(|z| z.re, T::neg_infinity(), T::max),
            min_abs_real_part: fold(|z| z.re.abs(), T::infinity(), T::min),
            min_abs_eigenvalue: fold(|z| z.norm(), T::infinity(), T::min),
            eigenvalues,
        }
    }

    /// Imaginary parts of the oscillatory eigenvalues (Im λ > |Re λ|), ascending.
    pub fn oscillation_frequencies(&self) -> Vec<T> {
        let mut f: Vec<T> = self
            .eigenvalues
            .iter()
            .filter(|z| z.im > z.re.abs())
            .map(|z| z.im)
            .collect();
        f.sort_by(|a, b| a.as_f64().total_cmp(&b.as_f64()));
        f
    }
}

fn as_pairs<T: Real + Serialize, S: serde::Serializer>(
    v: &[Complex<T>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|z| [z.re, z.im]))
}

/// Eigenvalues of a dense square matrix given row by row.
pub fn dense_eigenvalues<T: Real>(rows: &[Vec<T>]) -> Result<Vec<Complex<T>>> {
    let n = rows.len();
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge {
            dimension: n,
            limit: DENSE_LIMIT,
        });
    }
    for r in rows {
        check_len("dense eigen (square)", n, r.len())?;
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let m = faer::Mat::<f64>::from_fn(n, n, |i, j| rows[i][j].as_f64());
    if !(0..n).all(|i| (0..n).all(|j| m.read(i, j).is_finite())) {
        return Err(Error::Eigen("matrix has non-finite entries".into()));
    }
    let ev = m.eigenvalues::<faer::complex_native::c64>();
    if ev.len() != n || ev.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Eigen("eigenvalue iteration did not converge".into()));
    }
    Ok(ev
        .into_iter()
        .map(|z| Complex::new(T::lit(z.re), T::lit(z.im)))
        .collect())
}

/// All eigenvalues of A_h, computed from W A_h W⁻¹.
pub fn spectrum<T: Real>(
    a: &GeneratorMatrix<T>,
    mp: &MaterialParams<T>,
    fp: &FractionalParams<T>,
    grid: &Grid<T>,
) -> Result<SpectrumReport<T>> {
    let n = a.dimension();
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge {
            dimension: n,
            limit: DENSE_LIMIT,
        });
    }
    check_len("spectrum grid", n, grid.layout().dimension())?;
    let w = GramFactor::new(mp, fp, grid)?;
    let mut rows = vec![vec![T::zero(); n]; n];
    let mut e = vec![T::zero(); n];
    for j in 0..n {
        e[j] = T::one();
        let col = w.apply(&a.matrix().matvec(&w.apply_inverse(&e))?);
        e[j] = T::zero();
        for (i, v) in col.into_iter().enumerate() {
            rows[i][j] = v;
        }
    }
    Ok(SpectrumReport::from_eigenvalues(dense_eigenvalues(&rows)?))
}
