use crate::error::{check_len, Result};
use crate::scalar::Field;

/// Compressed sparse row matrix with sorted, duplicate-free column indices.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix<F> {
    nrows: usize,
    ncols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<F>,
}

impl<F: Field> CsrMatrix<F> {
    /// Sums duplicates and drops exact zeros.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: &[(usize, usize, F)]) -> Self {
        let mut sorted: Vec<(usize, usize, F)> = triplets.to_vec();
        sorted.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut indptr = vec![0usize; nrows + 1];
        let mut indices = Vec::with_capacity(sorted.len());
        let mut values: Vec<F> = Vec::with_capacity(sorted.len());
        let mut rows = Vec::with_capacity(sorted.len());
        for (r, c, v) in sorted {
            assert!(r < nrows && c < ncols, "triplet ({r}, {c}) out of bounds");
            if let (Some(&lr), Some(&lc)) = (rows.last(), indices.last()) {
                if lr == r && lc == c {
                    let last = values.last_mut().unwrap();
                    *last += v;
                    continue;
                }
            }
            rows.push(r);
            indices.push(c);
            values.push(v);
        }
        let mut keep_rows = Vec::with_capacity(rows.len());
        let mut keep_idx = Vec::with_capacity(rows.len());
        let mut keep_val = Vec::with_capacity(rows.len());
        for ((r, c), v) in rows.into_iter().zip(indices).zip(values) {
            if v != F::zero() {
                keep_rows.push(r);
                keep_idx.push(c);
                keep_val.push(v);
            }
        }
        for &r in &keep_rows {
            indptr[r + 1] += 1;
        }
        for i in 0..nrows {
            indptr[i + 1] += indptr[i];
        }
        Self {
            nrows,
            ncols,
            indptr,
            indices: keep_idx,
            values: keep_val,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            nrows: n,
            ncols: n,
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: vec![F::one(); n],
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[F]) {
        let span = self.indptr[i]..self.indptr[i + 1];
        (&self.indices[span.clone()], &self.values[span])
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&j) {
            Ok(p) => vals[p],
            Err(_) => F::zero(),
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, F)> + '_ {
        (0..self.nrows).flat_map(move |i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).map(move |(&j, &v)| (i, j, v))
        })
    }

    pub fn matvec(&self, x: &[F]) -> Result<Vec<F>> {
        check_len("matvec", self.ncols, x.len())?;
        Ok((0..self.nrows)
            .map(|i| {
                let (cols, vals) = self.row(i);
                let mut acc = F::zero();
                for (&j, &v) in cols.iter().zip(vals) {
                    acc += v * x[j];
                }
                acc
            })
            .collect())
    }

    pub fn transpose(&self) -> Self {
        let t: Vec<(usize, usize, F)> = self.triplets().map(|(i, j, v)| (j, i, v)).collect();
        Self::from_triplets(self.ncols, self.nrows, &t)
    }

    pub fn map<G: Field>(&self, f: impl Fn(F) -> G) -> CsrMatrix<G> {
        let t: Vec<(usize, usize, G)> = self.triplets().map(|(i, j, v)| (i, j, f(v))).collect();
        CsrMatrix::from_triplets(self.nrows, self.ncols, &t)
    }

    /// `diag·I + scale·self` for square matrices.
    pub fn shifted(&self, diag: F, scale: F) -> Self {
        assert_eq!(self.nrows, self.ncols, "shift needs a square matrix");
        let mut t: Vec<(usize, usize, F)> = self.triplets().map(|(i, j, v)| (i, j, scale * v)).collect();
        t.extend((0..self.nrows).map(|i| (i, i, diag)));
        Self::from_triplets(self.nrows, self.ncols, &t)
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); self.ncols]; self.nrows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn triplets_merge_and_drop_zeros() {
        let m = CsrMatrix::from_triplets(2, 3, &[(0, 1, 1.0), (0, 1, 2.0), (1, 0, 0.0), (1, 2, -1.0)]);
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(0, 1), 3.0);
        assert_eq!(m.get(1, 0), 0.0);
        assert_eq!(m.matvec(&[1.0, 1.0, 2.0]).unwrap(), vec![3.0, -2.0]);
        assert!(m.matvec(&[1.0]).is_err());
    }

    #[test]
    fn transpose_and_shift() {
        let m = CsrMatrix::from_triplets(2, 2, &[(0, 1, 2.0), (1, 0, 5.0)]);
        let t = m.transpose();
        assert_eq!(t.get(1, 0), 2.0);
        let s = m.shifted(1.0, -0.5);
        assert_eq!(s.to_dense(), vec![vec![1.0, -1.0], vec![-2.5, 1.0]]);
        let c = m.map(|v| Complex64::new(v, 0.0));
        assert_eq!(c.get(1, 0), Complex64::new(5.0, 0.0));
    }
}
