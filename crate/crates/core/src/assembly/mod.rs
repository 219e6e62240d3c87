//! Semi-discrete generator of the coupled system.
//!
//! Interior second derivatives are centered differences written in flux form
//! (differences of cell stresses). Since z(0) = V(0), the interface node
//! owns a half cell of each subdomain, and its row is the balance
//! (ρh₂/2 + h₁/2)V̇₀ = σ₀ − κ(V₀ − z_last)/h₁ − 𝔠(h₂/2)Σ w_k μ_k φ_0k.
//! With the trapezoid energy this makes Re⟨A_h U, U⟩_H equal the discrete
//! dissipation exactly.

use std::io::{self, Write};

use serde::Serialize;

use crate::domain::{velocity_masses, BlockLayout, Coupling, Grid, MaterialParams, StateVector};
use crate::error::{check_len, Result};
use crate::fracdiff::FractionalParams;
use crate::linalg::CsrMatrix;
use crate::scalar::Real;

pub use crate::domain::energy_gram;

/// Assembled A_h with its block map.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMatrix<T> {
    matrix: CsrMatrix<T>,
    layout: BlockLayout,
}

/// Block names and ranges, for reports and exports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockMapEntry {
    pub name: &'static str,
    pub start: usize,
    pub len: usize,
}

impl<T: Real> GeneratorMatrix<T> {
    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn layout(&self) -> BlockLayout {
        self.layout
    }

    pub fn matrix(&self) -> &CsrMatrix<T> {
        &self.matrix
    }

    pub fn block_map(&self) -> Vec<BlockMapEntry> {
        self.layout
            .blocks()
            .into_iter()
            .map(|(name, r)| BlockMapEntry {
                name,
                start: r.start,
                len: r.len(),
            })
            .collect()
    }

    /// Writes the matrix as text: a header with the dimension, block map and
    /// entry count, then one `row col value` line per nonzero (0-based).
    pub fn write_triplets<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "# fracbeam generator matrix, 0-based (row col value)")?;
        writeln!(out, "dimension {}", self.dimension())?;
        for b in self.block_map() {
            writeln!(out, "block {} {} {}", b.name, b.start, b.len)?;
        }
        writeln!(out, "nnz {}", self.matrix.nnz())?;
        for (i, j, v) in self.matrix.triplets() {
            writeln!(out, "{i} {j} {:.16e}", v.as_f64())?;
        }
        Ok(())
    }
}

pub fn assemble_generator<T: Real>(
    mp: &MaterialParams<T>,
    fp: &FractionalParams<T>,
    grid: &Grid<T>,
) -> Result<GeneratorMatrix<T>> {
    mp.validate()?;
    let layout = grid.layout();
    let nn = layout.n_nodes;
    let nh = layout.n_heat;
    let coupled = grid.coupling == Coupling::Transmission;
    let (z0, v0, vd0, p0, pd0) = (
        layout.z().start,
        layout.v().start,
        layout.v_dot().start,
        layout.p().start,
        layout.p_dot().start,
    );
    let h1 = grid.h_heat;
    let h2 = grid.h_beam;
    let omega = grid.beam_weights();
    let mut t: Vec<(usize, usize, T)> = Vec::new();

    // Heat rod: ż_i = κ(z_{i-1} − 2z_i + z_{i+1})/h₁², z(-ℓ₁) = 0, z(0) = V₀.
    let ch = mp.kappa / (h1 * h1);
    for i in 0..nh {
        let r = z0 + i;
        t.push((r, r, -T::lit(2.0) * ch));
        if i > 0 {
            t.push((r, r - 1, ch));
        }
        if i + 1 < nh {
            t.push((r, r + 1, ch));
        } else if coupled {
            t.push((r, vd0, ch));
        }
    }

    // Cell stresses σ_c = (χΔv − γβΔp)/h₂ and τ_c = (βΔp − γβΔv)/h₂, with
    // Δu = u_{c+1} − u_c and u = 0 beyond the last node.
    let gb = mp.gamma * mp.beta;
    let sigma = [mp.chi / h2, -gb / h2];
    let tau = [-gb / h2, mp.beta / h2];
    let push_cell = |t: &mut Vec<(usize, usize, T)>, row: usize, c: usize, sign: T, coef: [T; 2], scale: T| {
        for (f, &k) in [v0, p0].iter().zip(&coef) {
            let k = sign * k * scale;
            if c + 1 < nn {
                t.push((row, f + c + 1, k));
            }
            t.push((row, f + c, -k));
        }
    };
    let c = fp.coeff_c();
    let rule = &grid.xi_rule;
    let masses = velocity_masses(mp, grid);
    for j in 0..nn {
        t.push((v0 + j, vd0 + j, T::one()));
        t.push((p0 + j, pd0 + j, T::one()));

        let sv = T::one() / masses[j];
        let sp = T::one() / (mp.mu_mag * omega[j]);
        push_cell(&mut t, vd0 + j, j, T::one(), sigma, sv);
        push_cell(&mut t, pd0 + j, j, T::one(), tau, sp);
        if j > 0 {
            push_cell(&mut t, vd0 + j, j - 1, -T::one(), sigma, sv);
            push_cell(&mut t, pd0 + j, j - 1, -T::one(), tau, sp);
        } else if coupled {
            // Heat flux q = κ(V₀ − z_last)/h₁ leaves the beam's half cell.
            let q = mp.kappa / h1 * sv;
            t.push((vd0, vd0, -q));
            t.push((vd0, z0 + nh - 1, q));
        }

        for (k, (&xi, &w)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
            let mu = fp.mu(xi)?;
            let phi = layout.phi_index(j, k);
            t.push((vd0 + j, phi, -c * omega[j] * w * mu * sv));
            t.push((phi, phi, -(xi * xi + fp.eta())));
            t.push((phi, vd0 + j, mu));
        }
    }
    let n = layout.dimension();
    Ok(GeneratorMatrix {
        matrix: CsrMatrix::from_triplets(n, n, &t),
        layout,
    })
}

/// A_h U.
pub fn apply_generator<T: Real>(a: &GeneratorMatrix<T>, state: &StateVector<T>) -> Result<StateVector<T>> {
    state.check(a.layout)?;
    let y = a.matrix.matvec(&state.to_flat())?;
    StateVector::from_flat(a.layout, &y)
}

/// −κ‖z_x‖² − 𝔠 Σ_j ω_j Σ_k w_k (ξ_k² + η) φ_jk².
pub fn dissipation_rate<T: Real>(
    state: &StateVector<T>,
    mp: &MaterialParams<T>,
    fp: &FractionalParams<T>,
    grid: &Grid<T>,
) -> Result<T> {
    let layout = grid.layout();
    state.check(layout)?;
    let zx = crate::domain::heat_slopes_of(state, grid);
    let heat: T = zx.iter().map(|&s| s * s).sum::<T>() * grid.h_heat;
    let k = grid.xi_rule.count();
    let mut diff = T::zero();
    if k > 0 {
        let omega = grid.beam_weights();
        for (row, &om) in state.phi.chunks(k).zip(&omega) {
            diff = diff + om * crate::fracdiff::diffusive_node_energy(row, fp, &grid.xi_rule)?;
        }
    }
    Ok(-mp.kappa * heat - fp.coeff_c() * diff)
}

/// ⟨x, y⟩_H for flat vectors.
pub fn h_inner<T: Real>(gram: &CsrMatrix<T>, x: &[T], y: &[T]) -> Result<T> {
    check_len("H inner product", gram.nrows(), x.len())?;
    let gy = gram.matvec(y)?;
    Ok(x.iter().zip(&gy).map(|(&a, &b)| a * b).sum())
}

#[cfg(test)]
mod tests;
