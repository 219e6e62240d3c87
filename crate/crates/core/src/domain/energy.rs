use serde::Serialize;

use super::grid::{beam_slopes, heat_profile, Coupling, Grid};
use super::params::MaterialParams;
use super::state::StateVector;
use crate::error::Result;
use crate::fracdiff::FractionalParams;
use crate::linalg::CsrMatrix;
use crate::scalar::Real;

/// Squared-norm components of the energy; `total` is half their sum.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct EnergyBreakdown<T> {
    /// ‖z‖²
    pub te: T,
    /// ρ‖V‖²
    pub mech_ke: T,
    /// μ‖P‖²
    pub mag_ke: T,
    /// χ₁‖v_x‖²
    pub pe: T,
    /// β‖γv_x − p_x‖²
    pub electromech_e: T,
    /// 𝔠‖φ‖²
    pub diff_e: T,
    pub total: T,
}

impl<T: Real> EnergyBreakdown<T> {
    pub fn zero() -> Self {
        let z = T::zero();
        Self {
            te: z,
            mech_ke: z,
            mag_ke: z,
            pe: z,
            electromech_e: z,
            diff_e: z,
            total: z,
        }
    }
}

/// Interface mismatches at x = 0, from one-sided second-order differences.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct TransmissionResiduals<T> {
    /// z(0) − V(0)
    pub r_dirichlet: T,
    /// χv_x(0) − γβp_x(0) − κz_x(0)
    pub r_stress: T,
    /// βp_x(0) − γβv_x(0)
    pub r_charge: T,
}

impl<T: Real> TransmissionResiduals<T> {
    pub fn max_abs(&self) -> T {
        self.r_dirichlet
            .abs()
            .max(self.r_stress.abs())
            .max(self.r_charge.abs())
    }
}

pub(crate) fn interface_value<T: Real>(state: &StateVector<T>, grid: &Grid<T>) -> T {
    match grid.coupling {
        Coupling::Transmission => state.v_dot[0],
        Coupling::Detached => T::zero(),
    }
}

fn weighted_sq<T: Real>(w: &[T], x: &[T]) -> T {
    w.iter().zip(x).map(|(&w, &x)| w * x * x).sum()
}

fn sq_sum<T: Real>(x: &[T]) -> T {
    x.iter().map(|&x| x * x).sum()
}

/// Σ_j ω_j Σ_k w_k φ_jk².
fn phi_sq<T: Real>(state: &StateVector<T>, grid: &Grid<T>, omega: &[T]) -> T {
    let k = grid.xi_rule.count();
    if k == 0 {
        return T::zero();
    }
    let w = grid.xi_rule.weights();
    state
        .phi
        .chunks(k)
        .zip(omega)
        .map(|(row, &om)| om * weighted_sq(w, row))
        .sum()
}

/// Trapezoid ‖z‖² on [-ℓ₁, 0], the x = 0 node carrying z(0) = V(0).
fn heat_sq<T: Real>(state: &StateVector<T>, grid: &Grid<T>) -> T {
    let z0 = interface_value(state, grid);
    grid.h_heat * (sq_sum(&state.z) + T::lit(0.5) * z0 * z0)
}

/// Mass of each velocity unknown in ⟨·,·⟩_H: ρω_j, plus the heat half cell
/// h₁/2 at the interface node when the rod is attached.
pub(crate) fn velocity_masses<T: Real>(mp: &MaterialParams<T>, grid: &Grid<T>) -> Vec<T> {
    let mut m: Vec<T> = grid.beam_weights().iter().map(|&w| mp.rho * w).collect();
    if grid.coupling == Coupling::Transmission {
        m[0] = m[0] + T::lit(0.5) * grid.h_heat;
    }
    m
}

pub fn energy<T: Real>(
    state: &StateVector<T>,
    mp: &MaterialParams<T>,
    grid: &Grid<T>,
    fp: &FractionalParams<T>,
) -> Result<EnergyBreakdown<T>> {
    state.check(grid.layout())?;
    let omega = grid.beam_weights();
    let h2 = grid.h_beam;
    let dv = beam_slopes(&state.v, h2);
    let dp = beam_slopes(&state.p, h2);
    let te = heat_sq(state, grid);
    // The interface half cell of the rod is counted in TE, not here.
    let mech_ke = mp.rho * weighted_sq(&omega, &state.v_dot);
    let mag_ke = mp.mu_mag * weighted_sq(&omega, &state.p_dot);
    let pe = mp.chi1() * h2 * sq_sum(&dv);
    let electromech_e = mp.beta
        * h2
        * dv
            .iter()
            .zip(&dp)
            .map(|(&a, &b)| (mp.gamma * a - b).powi(2))
            .sum::<T>();
    let diff_e = fp.coeff_c() * phi_sq(state, grid, &omega);
    let total = T::lit(0.5) * (te + mech_ke + mag_ke + pe + electromech_e + diff_e);
    Ok(EnergyBreakdown {
        te,
        mech_ke,
        mag_ke,
        pe,
        electromech_e,
        diff_e,
        total,
    })
}

/// ‖U‖_H, with ‖U‖_H² = 2E(U).
pub fn norm_h<T: Real>(
    state: &StateVector<T>,
    mp: &MaterialParams<T>,
    grid: &Grid<T>,
    fp: &FractionalParams<T>,
) -> Result<T> {
    Ok((T::lit(2.0) * energy(state, mp, grid, fp)?.total).sqrt())
}

/// ‖U‖_S: unit coefficients and ‖p_x‖² in place of the coupled term.
pub fn norm_standard<T: Real>(state: &StateVector<T>, grid: &Grid<T>) -> Result<T> {
    state.check(grid.layout())?;
    let omega = grid.beam_weights();
    let h2 = grid.h_beam;
    let sq = heat_sq(state, grid)
        + weighted_sq(&omega, &state.v_dot)
        + weighted_sq(&omega, &state.p_dot)
        + h2 * sq_sum(&beam_slopes(&state.v, h2))
        + h2 * sq_sum(&beam_slopes(&state.p, h2))
        + phi_sq(state, grid, &omega);
    Ok(sq.sqrt())
}

/// (C₁, C₂) with C₁‖U‖_S ≤ ‖U‖_H ≤ C₂‖U‖_S, in the form stated for the
/// continuous norms.
///
/// C₁ omits the 1/χ₁ needed to control ‖v_x‖², so the lower bound can fail
/// when χ₁ is small; see the crate README.
pub fn norm_equivalence_constants<T: Real>(
    mp: &MaterialParams<T>,
    fp: &FractionalParams<T>,
) -> (T, T) {
    let one = T::one();
    let two = T::lit(2.0);
    let c = fp.coeff_c();
    let chi1 = mp.chi1();
    let g2 = mp.gamma * mp.gamma;
    let c2 = one
        .max(mp.rho)
        .max(mp.mu_mag)
        .max(c)
        .max(chi1 + two * mp.beta * g2.max(one));
    let m = one
        .max(one / mp.rho)
        .max(one / mp.mu_mag)
        .max(one / c)
        .max(two * (one / mp.beta).max(g2 / chi1));
    (one / m, c2)
}

/// Residuals of the three interface conditions.
pub fn transmission_residuals<T: Real>(
    state: &StateVector<T>,
    mp: &MaterialParams<T>,
    grid: &Grid<T>,
) -> Result<TransmissionResiduals<T>> {
    state.check(grid.layout())?;
    let n = grid.n_heat;
    let z0 = interface_value(state, grid);
    let three = T::lit(3.0);
    let four = T::lit(4.0);
    let two = T::lit(2.0);
    let zx = (three * z0 - four * state.z[n - 1] + state.z[n - 2]) / (two * grid.h_heat);
    let vx = (-three * state.v[0] + four * state.v[1] - state.v[2]) / (two * grid.h_beam);
    let px = (-three * state.p[0] + four * state.p[1] - state.p[2]) / (two * grid.h_beam);
    let gb = mp.gamma * mp.beta;
    Ok(TransmissionResiduals {
        r_dirichlet: match grid.coupling {
            // The heat stencil reads V(0) as z(0), so this is zero by construction.
            Coupling::Transmission => z0 - state.v_dot[0],
            Coupling::Detached => T::zero(),
        },
        r_stress: mp.chi * vx - gb * px - mp.kappa * zx,
        r_charge: mp.beta * px - gb * vx,
    })
}

/// Sparse symmetric G with UᵀGU = 2E(U) = ‖U‖_H².
pub fn energy_gram<T: Real>(
    mp: &MaterialParams<T>,
    fp: &FractionalParams<T>,
    grid: &Grid<T>,
) -> CsrMatrix<T> {
    let layout = grid.layout();
    let omega = grid.beam_weights();
    let mut t = Vec::new();
    for i in layout.z() {
        t.push((i, i, grid.h_heat));
    }
    let inv_h = T::one() / grid.h_beam;
    let gb = mp.gamma * mp.beta;
    let coeff = [[mp.chi, -gb], [-gb, mp.beta]];
    let starts = [layout.v().start, layout.p().start];
    let nn = layout.n_nodes;
    for c in 0..nn {
        for a in 0..2 {
            for b in 0..2 {
                let k = coeff[a][b] * inv_h;
                let (ra, rb) = (starts[a] + c, starts[b] + c);
                t.push((ra, rb, k));
                if c + 1 < nn {
                    t.push((ra + 1, rb + 1, k));
                    t.push((ra, rb + 1, -k));
                    t.push((ra + 1, rb, -k));
                }
            }
        }
    }
    let masses = velocity_masses(mp, grid);
    for j in 0..nn {
        t.push((layout.v_dot().start + j, layout.v_dot().start + j, masses[j]));
        t.push((layout.p_dot().start + j, layout.p_dot().start + j, mp.mu_mag * omega[j]));
        for (k, &w) in grid.xi_rule.weights().iter().enumerate() {
            let r = layout.phi_index(j, k);
            t.push((r, r, fp.coeff_c() * omega[j] * w));
        }
    }
    let n = layout.dimension();
    CsrMatrix::from_triplets(n, n, &t)
}

pub(crate) fn heat_slopes<T: Real>(state: &StateVector<T>, grid: &Grid<T>) -> Vec<T> {
    let prof = heat_profile(&state.z, interface_value(state, grid));
    prof.windows(2).map(|w| (w[1] - w[0]) / grid.h_heat).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fracdiff::XiQuadrature;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(n: usize) -> (MaterialParams<f64>, FractionalParams<f64>, Grid<f64>) {
        let mp = MaterialParams::unit();
        let fp = FractionalParams::new(0.5, 1.0).unwrap();
        let rule = XiQuadrature::geometric(6, 0.1, 10.0).unwrap();
        let grid = Grid::new(&mp, n, n, rule).unwrap();
        (mp, fp, grid)
    }

    #[test]
    fn zero_state() {
        let (mp, fp, grid) = setup(8);
        let u = StateVector::zeros(grid.layout());
        assert_eq!(energy(&u, &mp, &grid, &fp).unwrap(), EnergyBreakdown::zero());
        assert_eq!(norm_standard(&u, &grid).unwrap(), 0.0);
        let r = transmission_residuals(&u, &mp, &grid).unwrap();
        assert_eq!(r.max_abs(), 0.0);
    }

    #[test]
    fn linear_displacement() {
        let (mut mp, fp, grid) = setup(10);
        mp.gamma = 0.7;
        mp.chi = 3.0;
        let u = StateVector::from_profiles(&grid, |_| 0.0, |x| 1.0 - x, |_| 0.0, |_| 0.0, |_| 0.0);
        let e = energy(&u, &mp, &grid, &fp).unwrap();
        assert!((e.pe - mp.chi1()).abs() < 1e-13);
        assert!((e.electromech_e - mp.beta * mp.gamma * mp.gamma).abs() < 1e-13);
        assert_eq!(e.te + e.mech_ke + e.mag_ke + e.diff_e, 0.0);
    }

    #[test]
    fn heat_sine_mode() {
        let (mp, fp, grid) = setup(40);
        let pi = std::f64::consts::PI;
        let u = StateVector::from_profiles(&grid, |x| (pi * (x + 1.0)).sin(), |_| 0.0, |_| 0.0, |_| 0.0, |_| 0.0);
        let e = energy(&u, &mp, &grid, &fp).unwrap();
        assert!((e.te - 0.5).abs() < 1e-12);
    }

    #[test]
    fn gram_reproduces_energy() {
        let (mp, fp, grid) = setup(7);
        let g = energy_gram(&mp, &fp, &grid);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let u = StateVector::random(grid.layout(), &mut rng);
            let x = u.to_flat();
            let gx = g.matvec(&x).unwrap();
            let q: f64 = x.iter().zip(&gx).map(|(a, b)| a * b).sum();
            let e = energy(&u, &mp, &grid, &fp).unwrap().total;
            assert!((q - 2.0 * e).abs() < 1e-12 * q);
        }
        assert_eq!(g.transpose(), g);
    }

    #[test]
    fn energy_is_quadratic() {
        let (mp, fp, grid) = setup(9);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = StateVector::random(grid.layout(), &mut rng);
        let e1 = energy(&u, &mp, &grid, &fp).unwrap().total;
        let e3 = energy(&u.scaled(-3.0), &mp, &grid, &fp).unwrap().total;
        assert!((e3 - 9.0 * e1).abs() < 1e-13 * e3);
    }

    #[test]
    fn unit_constants() {
        let mp = MaterialParams {
            chi: 2.0,
            ..MaterialParams::unit()
        };
        let fp = FractionalParams::new(0.5, 0.0).unwrap();
        // 𝔠 = 1/π < 1, so the C₂ maximum comes from χ₁ + 2β max(γ², 1) = 3.
        let (c1, c2) = norm_equivalence_constants(&mp, &fp);
        assert_eq!(c2, 3.0);
        assert!((c1 - 1.0 / std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn charge_residual_vanishes_for_matched_slopes() {
        let (mp, _, grid) = setup(12);
        let s = 0.4;
        let u = StateVector::from_profiles(
            &grid,
            |_| 0.0,
            |x| s * x,
            |_| 0.0,
            |x| mp.gamma * s * x,
            |_| 0.0,
        );
        let r = transmission_residuals(&u, &mp, &grid).unwrap();
        assert!(r.r_charge.abs() < 1e-13);
        assert_eq!(r.r_dirichlet, 0.0);
    }
}
