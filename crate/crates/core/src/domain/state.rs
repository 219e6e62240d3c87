use rand::Rng;

use super::grid::{BlockLayout, Grid};
use crate::error::{check_len, Result};
use crate::scalar::Real;

/// Discrete unknown U = (z, v, V, p, P, φ).
///
/// Essential boundary values are not stored, so they hold by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    pub z: Vec<T>,
    pub v: Vec<T>,
    pub v_dot: Vec<T>,
    pub p: Vec<T>,
    pub p_dot: Vec<T>,
    /// Node-major: `phi[j * K + k]`.
    pub phi: Vec<T>,
}

impl<T: Real> StateVector<T> {
    pub fn zeros(layout: BlockLayout) -> Self {
        let z = T::zero();
        Self {
            z: vec![z; layout.n_heat],
            v: vec![z; layout.n_nodes],
            v_dot: vec![z; layout.n_nodes],
            p: vec![z; layout.n_nodes],
            p_dot: vec![z; layout.n_nodes],
            phi: vec![z; layout.n_nodes * layout.n_xi],
        }
    }

    pub fn from_flat(layout: BlockLayout, flat: &[T]) -> Result<Self> {
        check_len("state vector", layout.dimension(), flat.len())?;
        Ok(Self {
            z: flat[layout.z()].to_vec(),
            v: flat[layout.v()].to_vec(),
            v_dot: flat[layout.v_dot()].to_vec(),
            p: flat[layout.p()].to_vec(),
            p_dot: flat[layout.p_dot()].to_vec(),
            phi: flat[layout.phi()].to_vec(),
        })
    }

    pub fn to_flat(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(
            self.z.len() + 4 * self.v.len() + self.phi.len(),
        );
        out.extend_from_slice(&self.z);
        out.extend_from_slice(&self.v);
        out.extend_from_slice(&self.v_dot);
        out.extend_from_slice(&self.p);
        out.extend_from_slice(&self.p_dot);
        out.extend_from_slice(&self.phi);
        out
    }

    /// Fails unless every block has the size the layout prescribes.
    pub fn check(&self, layout: BlockLayout) -> Result<()> {
        check_len("z block", layout.n_heat, self.z.len())?;
        check_len("v block", layout.n_nodes, self.v.len())?;
        check_len("V block", layout.n_nodes, self.v_dot.len())?;
        check_len("p block", layout.n_nodes, self.p.len())?;
        check_len("P block", layout.n_nodes, self.p_dot.len())?;
        check_len("phi block", layout.n_nodes * layout.n_xi, self.phi.len())
    }

    pub fn scaled(&self, c: T) -> Self {
        let f = |v: &Vec<T>| v.iter().map(|&x| c * x).collect();
        Self {
            z: f(&self.z),
            v: f(&self.v),
            v_dot: f(&self.v_dot),
            p: f(&self.p),
            p_dot: f(&self.p_dot),
            phi: f(&self.phi),
        }
    }

    /// Every stored component uniform on [-1, 1].
    pub fn random<R: Rng + ?Sized>(layout: BlockLayout, rng: &mut R) -> Self {
        let mut draw = |n: usize| -> Vec<T> {
            (0..n).map(|_| T::lit(rng.gen_range(-1.0..=1.0))).collect()
        };
        Self {
            z: draw(layout.n_heat),
            v: draw(layout.n_nodes),
            v_dot: draw(layout.n_nodes),
            p: draw(layout.n_nodes),
            p_dot: draw(layout.n_nodes),
            phi: draw(layout.n_nodes * layout.n_xi),
        }
    }

    /// Samples continuous profiles at the grid nodes; φ = 0.
    pub fn from_profiles(
        grid: &Grid<T>,
        z: impl Fn(T) -> T,
        v: impl Fn(T) -> T,
        v_dot: impl Fn(T) -> T,
        p: impl Fn(T) -> T,
        p_dot: impl Fn(T) -> T,
    ) -> Self {
        let heat: Vec<T> = (0..grid.n_heat).map(|i| grid.heat_x(i)).collect();
        let beam: Vec<T> = (0..grid.beam_nodes()).map(|j| grid.beam_x(j)).collect();
        Self {
            z: heat.iter().map(|&x| z(x)).collect(),
            v: beam.iter().map(|&x| v(x)).collect(),
            v_dot: beam.iter().map(|&x| v_dot(x)).collect(),
            p: beam.iter().map(|&x| p(x)).collect(),
            p_dot: beam.iter().map(|&x| p_dot(x)).collect(),
            phi: vec![T::zero(); grid.beam_nodes() * grid.xi_rule.count()],
        }
    }

    pub fn is_finite(&self) -> bool {
        [&self.z, &self.v, &self.v_dot, &self.p, &self.p_dot, &self.phi]
            .iter()
            .all(|b| b.iter().all(|x| x.is_finite()))
    }
}
