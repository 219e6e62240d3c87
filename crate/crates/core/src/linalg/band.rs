use crate::error::{check_len, Error, Result};
use crate::scalar::Field;

/// LU factorization with partial pivoting of a band matrix.
///
/// Row `i` stores columns `i - kl ..= i + kl + ku`; the extra `kl`
/// superdiagonals hold fill created by row interchanges. Multipliers are kept
/// separately, column by column, in the order the interchanges were applied.
#[derive(Debug, Clone)]
pub struct BandLu<F> {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<F>,
    lower: Vec<F>,
    pivots: Vec<usize>,
}

impl<F: Field> BandLu<F> {
    /// Factors the n×n matrix given by `entries` (row, col, value).
    pub fn factor(n: usize, entries: &[(usize, usize, F)]) -> Result<Self> {
        let mut kl = 0;
        let mut ku = 0;
        for &(i, j, _) in entries {
            if i > j {
                kl = kl.max(i - j);
            } else {
                ku = ku.max(j - i);
            }
        }
        let width = 2 * kl + ku + 1;
        let mut lu = Self {
            n,
            kl,
            ku,
            width,
            data: vec![F::zero(); n * width],
            lower: vec![F::zero(); n * kl],
            pivots: vec![0; n],
        };
        for &(i, j, v) in entries {
            let idx = lu.idx(i, j);
            lu.data[idx] += v;
        }
        lu.eliminate()?;
        Ok(lu)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// (lower, upper) bandwidths of the factored matrix.
    pub fn bandwidths(&self) -> (usize, usize) {
        (self.kl, self.ku)
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * self.width + (j + self.kl - i)
    }

    fn eliminate(&mut self) -> Result<()> {
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        for k in 0..n {
            let last = (k + kl).min(n - 1);
            let mut p = k;
            let mut best = self.data[self.idx(k, k)].modulus();
            for i in k + 1..=last {
                let m = self.data[self.idx(i, k)].modulus();
                if m > best {
                    best = m;
                    p = i;
                }
            }
            if !(best > <F::Real as num_traits::Zero>::zero()) {
                return Err(Error::SingularMatrix { column: k });
            }
            self.pivots[k] = p;
            let reach = (k + kl + ku).min(n - 1);
            if p != k {
                for j in k..=reach {
                    let a = self.idx(k, j);
                    let b = self.idx(p, j);
                    self.data.swap(a, b);
                }
            }
            let pivot = self.data[self.idx(k, k)];
            for i in k + 1..=last {
                let ik = self.idx(i, k);
                let l = self.data[ik] / pivot;
                self.data[ik] = F::zero();
                self.lower[k * kl + (i - k - 1)] = l;
                if l == F::zero() {
                    continue;
                }
                for j in k + 1..=reach {
                    let kj = self.data[self.idx(k, j)];
                    let ij = self.idx(i, j);
                    self.data[ij] -= l * kj;
                }
            }
        }
        Ok(())
    }

    pub fn solve_in_place(&self, x: &mut [F]) -> Result<()> {
        check_len("band solve", self.n, x.len())?;
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        for k in 0..n {
            let p = self.pivots[k];
            if p != k {
                x.swap(k, p);
            }
            let xk = x[k];
            for i in k + 1..=(k + kl).min(n - 1) {
                x[i] -= self.lower[k * kl + (i - k - 1)] * xk;
            }
        }
        for k in (0..n).rev() {
            let mut s = x[k];
            for j in k + 1..=(k + kl + ku).min(n - 1) {
                s -= self.data[self.idx(k, j)] * x[j];
            }
            x[k] = s / self.data[self.idx(k, k)];
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn dense_apply(n: usize, e: &[(usize, usize, f64)], x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; n];
        for &(i, j, v) in e {
            y[i] += v * x[j];
        }
        y
    }

    #[test]
    fn solves_with_pivoting() {
        // Zero diagonal forces interchanges.
        let n = 6;
        let mut e = Vec::new();
        for i in 0..n {
            if i + 1 < n {
                e.push((i, i + 1, 1.0 + i as f64));
                e.push((i + 1, i, 2.0 - 0.3 * i as f64));
            }
            if i + 2 < n {
                e.push((i + 2, i, 0.5));
            }
        }
        let lu = BandLu::factor(n, &e).unwrap();
        let x: Vec<f64> = (0..n).map(|i| (i as f64).cos()).collect();
        let mut b = dense_apply(n, &e, &x);
        lu.solve_in_place(&mut b).unwrap();
        for (a, c) in b.iter().zip(&x) {
            assert!((a - c).abs() < 1e-13, "{a} {c}");
        }
    }

    #[test]
    fn complex_system() {
        let e = vec![
            (0, 0, Complex64::new(0.0, 1.0)),
            (0, 1, Complex64::new(1.0, 0.0)),
            (1, 0, Complex64::new(2.0, 0.0)),
            (1, 1, Complex64::new(0.0, -1.0)),
        ];
        let lu = BandLu::factor(2, &e).unwrap();
        let mut b = vec![Complex64::new(1.0, 1.0), Complex64::new(2.0, -1.0)];
        lu.solve_in_place(&mut b).unwrap();
        assert!((b[0] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((b[1] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn singular_reported() {
        let e = vec![(0, 0, 1.0), (1, 0, 1.0)];
        assert!(matches!(
            BandLu::factor(2, &e),
            Err(Error::SingularMatrix { column: 1 })
        ));
    }
}
