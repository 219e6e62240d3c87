use crate::domain::{energy_gram, BlockLayout, Grid, MaterialParams};
use crate::error::{invalid, Result};
use crate::fracdiff::FractionalParams;
use crate::scalar::{Field, Real};

/// W with WᵀW = G, the Gram matrix of ‖·‖_H.
///
/// Diagonal on every block except (v, p), where W is the transposed Cholesky
/// factor of the coupled stiffness.
#[derive(Debug, Clone)]
pub struct GramFactor<T> {
    diag: Vec<T>,
    /// Indices of the (v, p) unknowns, in factor order.
    coupled: Vec<usize>,
    /// Lower Cholesky factor L of the (v, p) block, row-major.
    chol: Vec<T>,
}

impl<T: Real> GramFactor<T> {
    pub fn new(mp: &MaterialParams<T>, fp: &FractionalParams<T>, grid: &Grid<T>) -> Result<Self> {
        let g = energy_gram(mp, fp, grid);
        let layout: BlockLayout = grid.layout();
        let n = layout.dimension();
        let coupled: Vec<usize> = layout.v().chain(layout.p()).collect();
        let m = coupled.len();
        let mut pos = vec![usize::MAX; n];
        for (k, &i) in coupled.iter().enumerate() {
            pos[i] = k;
        }
        let mut diag = vec![T::one(); n];
        let mut s = vec![T::zero(); m * m];
        for (i, j, v) in g.triplets() {
            match (pos[i] != usize::MAX, pos[j] != usize::MAX) {
                (true, true) => s[pos[i] * m + pos[j]] = v,
                (false, false) if i == j => {
                    if !(v > T::zero()) {
                        return Err(invalid("gram", format!("non-positive weight at {i}")));
                    }
                    diag[i] = v.sqrt();
                }
                _ => return Err(invalid("gram", "unexpected coupling in the Gram matrix")),
            }
        }
        // Dense Cholesky S = L Lᵀ.
        let mut l = vec![T::zero(); m * m];
        for j in 0..m {
            let mut d = s[j * m + j];
            for k in 0..j {
                d = d - l[j * m + k] * l[j * m + k];
            }
            if !(d > T::zero()) {
                return Err(invalid("gram", "stiffness block is not positive definite"));
            }
            let d = d.sqrt();
            l[j * m + j] = d;
            for i in j + 1..m {
                let mut x = s[i * m + j];
                for k in 0..j {
                    x = x - l[i * m + k] * l[j * m + k];
                }
                l[i * m + j] = x / d;
            }
        }
        Ok(Self {
            diag,
            coupled,
            chol: l,
        })
    }

    pub fn dimension(&self) -> usize {
        self.diag.len()
    }

    fn gather<F: Field<Real = T>>(&self, x: &[F]) -> Vec<F> {
        self.coupled.iter().map(|&i| x[i]).collect()
    }

    fn scatter<F: Field<Real = T>>(&self, y: &mut [F], c: &[F]) {
        for (&i, &v) in self.coupled.iter().zip(c) {
            y[i] = v;
        }
    }

    fn l(&self, i: usize, j: usize) -> T {
        self.chol[i * self.coupled.len() + j]
    }

    /// W x.
    pub fn apply<F: Field<Real = T>>(&self, x: &[F]) -> Vec<F> {
        let m = self.coupled.len();
        let mut y: Vec<F> = x.iter().zip(&self.diag).map(|(&v, &d)| v * F::from_real(d)).collect();
        let c = self.gather(x);
        // Lᵀ c
        let out: Vec<F> = (0..m)
            .map(|i| {
                let mut acc = F::zero();
                for (k, &ck) in c.iter().enumerate().skip(i) {
                    acc += F::from_real(self.l(k, i)) * ck;
                }
                acc
            })
            .collect();
        self.scatter(&mut y, &out);
        y
    }

    /// W⁻¹ y.
    pub fn apply_inverse<F: Field<Real = T>>(&self, y: &[F]) -> Vec<F> {
        let m = self.coupled.len();
        let mut x: Vec<F> = y.iter().zip(&self.diag).map(|(&v, &d)| v / F::from_real(d)).collect();
        // Solve Lᵀ c = y_c by back substitution.
        let mut c = self.gather(y);
        for i in (0..m).rev() {
            let mut s = c[i];
            for k in i + 1..m {
                s -= F::from_real(self.l(k, i)) * c[k];
            }
            c[i] = s / F::from_real(self.l(i, i));
        }
        self.scatter(&mut x, &c);
        x
    }

    /// Wᵀ y.
    pub fn apply_transpose<F: Field<Real = T>>(&self, y: &[F]) -> Vec<F> {
        let m = self.coupled.len();
        let mut x: Vec<F> = y.iter().zip(&self.diag).map(|(&v, &d)| v * F::from_real(d)).collect();
        let c = self.gather(y);
        let out: Vec<F> = (0..m)
            .map(|i| {
                let mut acc = F::zero();
                for (k, &ck) in c.iter().enumerate().take(i + 1) {
                    acc += F::from_real(self.l(i, k)) * ck;
                }
                acc
            })
            .collect();
        self.scatter(&mut x, &out);
        x
    }

    /// W⁻ᵀ x.
    pub fn apply_inverse_transpose<F: Field<Real = T>>(&self, x: &[F]) -> Vec<F> {
        let m = self.coupled.len();
        let mut y: Vec<F> = x.iter().zip(&self.diag).map(|(&v, &d)| v / F::from_real(d)).collect();
        // Solve L c = x_c by forward substitution.
        let mut c = self.gather(x);
        for i in 0..m {
            let mut s = c[i];
            for k in 0..i {
                s -= F::from_real(self.l(i, k)) * c[k];
            }
            c[i] = s / F::from_real(self.l(i, i));
        }
        self.scatter(&mut y, &c);
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{energy, StateVector};
    use crate::fracdiff::XiQuadrature;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factor_reproduces_energy_and_inverts() {
        let mut mp = MaterialParams::<f64>::unit();
        mp.gamma = 0.8;
        mp.rho = 1.7;
        let fp = FractionalParams::new(0.4, 1.0).unwrap();
        let grid = Grid::new(&mp, 5, 7, XiQuadrature::geometric(3, 0.1, 10.0).unwrap()).unwrap();
        let w = GramFactor::new(&mp, &fp, &grid).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let u = StateVector::random(grid.layout(), &mut rng);
        let x = u.to_flat();
        let wx = w.apply(&x);
        let n2: f64 = wx.iter().map(|v| v * v).sum();
        let e = energy(&u, &mp, &grid, &fp).unwrap().total;
        assert!((n2 - 2.0 * e).abs() < 1e-12 * n2);
        let back = w.apply_inverse(&wx);
        for (a, b) in back.iter().zip(&x) {
            assert!((a - b).abs() < 1e-12);
        }
        // ⟨Wᵀy, x⟩ = ⟨y, Wx⟩ and W⁻ᵀ inverts Wᵀ, also over ℂ.
        let y: Vec<Complex64> = (0..x.len()).map(|i| Complex64::new(i as f64, 1.0)).collect();
        let xc: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let lhs: Complex64 = w.apply_transpose(&y).iter().zip(&xc).map(|(a, b)| a * b).sum();
        let rhs: Complex64 = y.iter().zip(w.apply(&xc)).map(|(a, b)| a * b).sum();
        assert!((lhs - rhs).norm() < 1e-10 * lhs.norm());
        let round = w.apply_inverse_transpose(&w.apply_transpose(&y));
        for (a, b) in round.iter().zip(&y) {
            assert!((a - b).norm() < 1e-10);
        }
    }
}
