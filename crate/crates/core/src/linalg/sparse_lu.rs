use std::ops::Range;

use super::band::BandLu;
use super::csr::CsrMatrix;
use super::rcm::reverse_cuthill_mckee;
use crate::error::{check_len, invalid, Error, Result};
use crate::scalar::Field;

/// Direct solver for matrices whose rows/columns in `eliminated` form a
/// diagonal block.
///
/// That block is condensed into a Schur complement on the remaining unknowns,
/// which is reordered with reverse Cuthill–McKee and factored as a band.
#[derive(Debug, Clone)]
pub struct SparseLu<F> {
    n: usize,
    eliminated: Range<usize>,
    /// For each eliminated unknown: its diagonal and its off-block row.
    elim_diag: Vec<F>,
    elim_rows: Vec<Vec<(usize, F)>>,
    /// Off-block entries of the eliminated columns, grouped by eliminated index.
    elim_cols: Vec<Vec<(usize, F)>>,
    /// Kept original index for each reduced position (before reordering).
    kept: Vec<usize>,
    /// perm[new] = reduced position.
    perm: Vec<usize>,
    band: BandLu<F>,
}

impl<F: Field> SparseLu<F> {
    pub fn factor(m: &CsrMatrix<F>, eliminated: Range<usize>) -> Result<Self> {
        let n = m.nrows();
        check_len("sparse LU (square)", n, m.ncols())?;
        if eliminated.end > n || eliminated.start > eliminated.end {
            return Err(invalid("eliminated", "range outside the matrix"));
        }
        let in_e = |i: usize| eliminated.contains(&i);
        let ne = eliminated.len();
        let mut elim_diag = vec![F::zero(); ne];
        let mut elim_rows = vec![Vec::new(); ne];
        let mut elim_cols = vec![Vec::new(); ne];
        let mut reduced_index = vec![usize::MAX; n];
        let kept: Vec<usize> = (0..n).filter(|&i| !in_e(i)).collect();
        for (pos, &i) in kept.iter().enumerate() {
            reduced_index[i] = pos;
        }

        let mut triplets = Vec::with_capacity(m.nnz());
        for i in 0..n {
            let (cols, vals) = m.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                match (in_e(i), in_e(j)) {
                    (true, true) => {
                        if i != j {
                            return Err(invalid(
                                "eliminated",
                                format!("block is not diagonal: entry ({i}, {j})"),
                            ));
                        }
                        elim_diag[i - eliminated.start] = v;
                    }
                    (true, false) => elim_rows[i - eliminated.start].push((j, v)),
                    (false, true) => elim_cols[j - eliminated.start].push((i, v)),
                    (false, false) => triplets.push((reduced_index[i], reduced_index[j], v)),
                }
            }
        }
        for (e, &d) in elim_diag.iter().enumerate() {
            if d == F::zero() {
                return Err(Error::SingularMatrix {
                    column: eliminated.start + e,
                });
            }
            for &(r, a_re) in &elim_cols[e] {
                let scale = a_re / d;
                for &(c, a_ec) in &elim_rows[e] {
                    triplets.push((reduced_index[r], reduced_index[c], -(scale * a_ec)));
                }
            }
        }

        let nr = kept.len();
        let mut adjacency = vec![Vec::new(); nr];
        for &(i, j, _) in &triplets {
            if i != j {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
        for a in &mut adjacency {
            a.sort_unstable();
            a.dedup();
        }
        let perm = reverse_cuthill_mckee(&adjacency);
        let mut new_of = vec![0; nr];
        for (new, &old) in perm.iter().enumerate() {
            new_of[old] = new;
        }
        let permuted: Vec<(usize, usize, F)> = triplets
            .into_iter()
            .map(|(i, j, v)| (new_of[i], new_of[j], v))
            .collect();
        let band = BandLu::factor(nr, &permuted).map_err(|e| match e {
            Error::SingularMatrix { column } => Error::SingularMatrix {
                column: kept[perm[column]],
            },
            other => other,
        })?;
        Ok(Self {
            n,
            eliminated,
            elim_diag,
            elim_rows,
            elim_cols,
            kept,
            perm,
            band,
        })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn band_widths(&self) -> (usize, usize) {
        self.band.bandwidths()
    }

    pub fn solve(&self, b: &[F]) -> Result<Vec<F>> {
        check_len("sparse solve", self.n, b.len())?;
        let start = self.eliminated.start;
        // y_e = b_e / d_e; reduced rhs b_r - A_re y_e.
        let y: Vec<F> = self
            .elim_diag
            .iter()
            .enumerate()
            .map(|(e, &d)| b[start + e] / d)
            .collect();
        let mut rhs_full: Vec<F> = b.to_vec();
        for (e, col) in self.elim_cols.iter().enumerate() {
            for &(r, a) in col {
                rhs_full[r] -= a * y[e];
            }
        }
        let mut x: Vec<F> = self.perm.iter().map(|&p| rhs_full[self.kept[p]]).collect();
        self.band.solve_in_place(&mut x)?;
        let mut out = vec![F::zero(); self.n];
        for (new, &p) in self.perm.iter().enumerate() {
            out[self.kept[p]] = x[new];
        }
        for (e, row) in self.elim_rows.iter().enumerate() {
            let mut s = b[start + e];
            for &(c, a) in row {
                s -= a * out[c];
            }
            out[start + e] = s / self.elim_diag[e];
        }
        Ok(out)
    }
}
