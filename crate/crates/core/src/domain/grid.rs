use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::params::MaterialParams;
use crate::error::{invalid, Result};
use crate::fracdiff::XiQuadrature;
use crate::scalar::Real;

/// Whether the heat rod sees the beam through the interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coupling {
    /// z(0) = V(0) and the flux balance at x = 0.
    Transmission,
    /// z(0) = 0 and a free beam end; the two subsystems evolve independently.
    Detached,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid<T> {
    pub n_heat: usize,
    pub n_beam: usize,
    pub h_heat: T,
    pub h_beam: T,
    pub ell1: T,
    pub ell2: T,
    pub xi_rule: XiQuadrature<T>,
    pub coupling: Coupling,
}

impl<T: Real> Grid<T> {
    pub fn new(
        mp: &MaterialParams<T>,
        n_heat: usize,
        n_beam: usize,
        xi_rule: XiQuadrature<T>,
    ) -> Result<Self> {
        mp.validate()?;
        if n_heat < 3 {
            return Err(invalid("n_heat", format!("need at least 3 nodes (got {n_heat})")));
        }
        if n_beam < 3 {
            return Err(invalid("n_beam", format!("need at least 3 nodes (got {n_beam})")));
        }
        Ok(Self {
            n_heat,
            n_beam,
            h_heat: mp.ell1 / T::from_usize(n_heat + 1).unwrap(),
            h_beam: mp.ell2 / T::from_usize(n_beam + 1).unwrap(),
            ell1: mp.ell1,
            ell2: mp.ell2,
            xi_rule,
            coupling: Coupling::Transmission,
        })
    }

    pub fn with_coupling(mut self, coupling: Coupling) -> Self {
        self.coupling = coupling;
        self
    }

    /// Beam unknowns per field, interface node included.
    pub fn beam_nodes(&self) -> usize {
        self.n_beam + 1
    }

    pub fn layout(&self) -> BlockLayout {
        BlockLayout {
            n_heat: self.n_heat,
            n_nodes: self.beam_nodes(),
            n_xi: self.xi_rule.count(),
        }
    }

    pub fn heat_x(&self, i: usize) -> T {
        -self.ell1 + T::from_usize(i + 1).unwrap() * self.h_heat
    }

    pub fn beam_x(&self, j: usize) -> T {
        T::from_usize(j).unwrap() * self.h_beam
    }

    /// Trapezoid weights of the beam nodes.
    pub fn beam_weights(&self) -> Vec<T> {
        let mut w = vec![self.h_beam; self.beam_nodes()];
        w[0] = T::lit(0.5) * self.h_beam;
        w
    }

    /// Whether both grids and rules describe the same unknowns.
    pub fn is_compatible(&self, other: &Self) -> bool {
        self.layout() == other.layout()
    }
}

/// Offsets of the blocks in the flat unknown vector
/// `[z | v | V | p | P | φ]`, with φ stored node-major (`j·K + k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockLayout {
    pub n_heat: usize,
    pub n_nodes: usize,
    pub n_xi: usize,
}

impl BlockLayout {
    pub fn dimension(&self) -> usize {
        self.n_heat + 4 * self.n_nodes + self.n_nodes * self.n_xi
    }

    pub fn z(&self) -> Range<usize> {
        0..self.n_heat
    }

    pub fn v(&self) -> Range<usize> {
        let s = self.n_heat;
        s..s + self.n_nodes
    }

    pub fn v_dot(&self) -> Range<usize> {
        let s = self.n_heat + self.n_nodes;
        s..s + self.n_nodes
    }

    pub fn p(&self) -> Range<usize> {
        let s = self.n_heat + 2 * self.n_nodes;
        s..s + self.n_nodes
    }

    pub fn p_dot(&self) -> Range<usize> {
        let s = self.n_heat + 3 * self.n_nodes;
        s..s + self.n_nodes
    }

    pub fn phi(&self) -> Range<usize> {
        let s = self.n_heat + 4 * self.n_nodes;
        s..s + self.n_nodes * self.n_xi
    }

    pub fn phi_index(&self, node: usize, k: usize) -> usize {
        self.phi().start + node * self.n_xi + k
    }

    /// Named block ranges, in storage order.
    pub fn blocks(&self) -> [(&'static str, Range<usize>); 6] {
        [
            ("z", self.z()),
            ("v", self.v()),
            ("V", self.v_dot()),
            ("p", self.p()),
            ("P", self.p_dot()),
            ("phi", self.phi()),
        ]
    }
}

/// Cell slopes (u_{c+1} − u_c)/h for c = 0..n, with u = 0 past the last node.
pub(crate) fn beam_slopes<T: Real>(u: &[T], h: T) -> Vec<T> {
    let n = u.len();
    (0..n)
        .map(|c| {
            let next = if c + 1 < n { u[c + 1] } else { T::zero() };
            (next - u[c]) / h
        })
        .collect()
}

/// Heat values at all nodes from x = -ℓ₁ to x = 0 inclusive.
pub(crate) fn heat_profile<T: Real>(z: &[T], interface: T) -> Vec<T> {
    let mut out = Vec::with_capacity(z.len() + 2);
    out.push(T::zero());
    out.extend_from_slice(z);
    out.push(interface);
    out
}
