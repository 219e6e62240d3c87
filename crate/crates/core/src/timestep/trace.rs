use std::io::{self, Write};

use serde::Serialize;

use crate::domain::{EnergyBreakdown, TransmissionResiduals};
use crate::scalar::Real;

/// Energy samples of a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyTrace<T> {
    pub times: Vec<T>,
    pub breakdowns: Vec<EnergyBreakdown<T>>,
    pub dissipation_rates: Vec<T>,
    pub dissipation_residuals: Vec<T>,
    pub transmission: Vec<TransmissionResiduals<T>>,
}

impl<T> Default for EnergyTrace<T> {
    fn default() -> Self {
        Self {
            times: Vec::new(),
            breakdowns: Vec::new(),
            dissipation_rates: Vec::new(),
            dissipation_residuals: Vec::new(),
            transmission: Vec::new(),
        }
    }
}

/// 12 significant digits in scientific notation.
pub fn format_sig12(x: f64) -> String {
    format!("{x:.11e}")
}

impl<T: Real> EnergyTrace<T> {
    pub const CSV_HEADER: &'static str =
        "t,E_total,TE,MechKE,MagKE,PE,ElectroMechE,DiffE,dissipation_residual";

    pub(crate) fn push(
        &mut self,
        t: T,
        e: EnergyBreakdown<T>,
        rate: T,
        residual: T,
        tr: TransmissionResiduals<T>,
    ) {
        self.times.push(t);
        self.breakdowns.push(e);
        self.dissipation_rates.push(rate);
        self.dissipation_residuals.push(residual);
        self.transmission.push(tr);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn totals(&self) -> Vec<T> {
        self.breakdowns.iter().map(|b| b.total).collect()
    }

    /// Largest increase E_{m+1} − E_m between consecutive samples, relative
    /// to E at the first sample (0 when E is non-increasing).
    pub fn max_relative_increase(&self) -> T {
        let e = self.totals();
        let scale = e.first().copied().unwrap_or(T::zero());
        let worst = e
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(T::zero(), T::max);
        if scale > T::zero() {
            worst / scale
        } else {
            worst
        }
    }

    /// Largest dissipation residual over the samples after the first.
    pub fn max_residual(&self) -> T {
        self.dissipation_residuals
            .iter()
            .skip(1)
            .copied()
            .fold(T::zero(), T::max)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", Self::CSV_HEADER)?;
        for ((t, b), r) in self
            .times
            .iter()
            .zip(&self.breakdowns)
            .zip(&self.dissipation_residuals)
        {
            let cols = [
                *t,
                b.total,
                b.te,
                b.mech_ke,
                b.mag_ke,
                b.pe,
                b.electromech_e,
                b.diff_e,
                *r,
            ];
            let row: Vec<String> = cols.iter().map(|x| format_sig12(x.as_f64())).collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}
