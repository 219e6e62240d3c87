use serde::Serialize;

use super::eigen::spectrum;
use crate::assembly::assemble_generator;
use crate::domain::{Grid, MaterialParams};
use crate::error::{invalid, Result};
use crate::fracdiff::{FractionalParams, XiQuadrature};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelEntry<T> {
    pub k: usize,
    pub smallest_node: T,
    pub min_abs_eigenvalue: T,
    pub max_real_part: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelReport<T> {
    pub eta: T,
    pub applicable: bool,
    pub note: String,
    pub entries: Vec<KernelEntry<T>>,
    /// min |λ| strictly decreases from one entry to the next.
    pub monotone_decreasing: bool,
}

/// Tracks min |λ(A_h)| while the ξ-rule on [xi_min, xi_max] is refined.
///
/// Each K uses the geometric midpoint rule on the same range, so the smallest
/// node moves toward `xi_min` as K grows. With η = 0 the φ modes near ξ = 0
/// relax at rate ≈ ξ², and min |λ| follows them toward zero.
pub fn verify_stationary_kernel<T: Real>(
    mp: &MaterialParams<T>,
    fp: &FractionalParams<T>,
    n_heat: usize,
    n_beam: usize,
    ks: &[usize],
    xi_range: [T; 2],
) -> Result<KernelReport<T>> {
    if !(xi_range[0] > T::zero() && xi_range[1] > xi_range[0]) {
        return Err(invalid("xi_range", "need 0 < xi_min < xi_max"));
    }
    if ks.is_empty() || ks.iter().all(|&k| k == 0) {
        return Ok(KernelReport {
            eta: fp.eta(),
            applicable: false,
            note: "K = 0: no diffusive variables, the stationary kernel study does not apply".into(),
            entries: Vec::new(),
            monotone_decreasing: false,
        });
    }
    let mut entries = Vec::with_capacity(ks.len());
    for &k in ks.iter().filter(|&&k| k > 0) {
        let rule = XiQuadrature::geometric(k, xi_range[0], xi_range[1])?;
        let smallest_node = rule.nodes().iter().copied().fold(T::infinity(), T::min);
        let grid = Grid::new(mp, n_heat, n_beam, rule)?;
        let a = assemble_generator(mp, fp, &grid)?;
        let s = spectrum(&a, mp, fp, &grid)?;
        entries.push(KernelEntry {
            k,
            smallest_node,
            min_abs_eigenvalue: s.min_abs_eigenvalue,
            max_real_part: s.max_real_part,
        });
    }
    let monotone_decreasing = entries
        .windows(2)
        .all(|w| w[1].min_abs_eigenvalue < w[0].min_abs_eigenvalue);
    let note = if fp.eta() == T::zero() {
        "eta = 0: min |lambda| is expected to shrink as the rule resolves xi -> 0"
    } else {
        "eta > 0: min |lambda| is expected to stay bounded away from 0"
    };
    Ok(KernelReport {
        eta: fp.eta(),
        applicable: true,
        note: note.into(),
        entries,
        monotone_decreasing,
    })
}
