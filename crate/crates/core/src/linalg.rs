//! Exact sparse Gaussian elimination over the rationals: rank, nullspace and
//! linear solves with a deterministic free-variables-to-zero tie-break.

use std::collections::BTreeMap;

use crate::scalars::Rational;

/// A sparse row: strictly increasing column indices, no explicit zeros.
pub type SparseRow = Vec<(usize, Rational)>;

pub fn row_from_map(map: BTreeMap<usize, Rational>) -> SparseRow {
    map.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// r -= c * p, both rows sorted by column.
fn row_axpy(r: &SparseRow, c: &Rational, p: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        match (r.get(i), p.get(j)) {
            (Some((ci, vi)), Some((cj, vj))) if ci == cj => {
                let v = vi - &(c * vj);
                if !v.is_zero() {
                    out.push((*ci, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ci, vi)), Some((cj, _))) if ci < cj => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (Some(_), Some((cj, vj))) => {
                out.push((*cj, -(c * vj)));
                j += 1;
            }
            (Some((ci, vi)), None) => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (None, Some((cj, vj))) => {
                out.push((*cj, -(c * vj)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn row_scale(r: &mut SparseRow, c: &Rational) {
    for (_, v) in r.iter_mut() {
        *v *= c;
    }
}

/// Row-echelon accumulator. Rows are fed one at a time; each is reduced
/// against the pivots found so far, so the result is deterministic in the
/// insertion order. An optional right-hand-side entry rides along with each
/// row for solving.
pub struct Eliminator {
    ncols: usize,
    /// (pivot column, row, rhs), kept sorted by pivot column.
    pivots: Vec<(usize, SparseRow, Rational)>,
    inconsistent: bool,
}

impl Eliminator {
    pub fn new(ncols: usize) -> Self {
        Eliminator { ncols, pivots: Vec::new(), inconsistent: false }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn kernel_dim(&self) -> usize {
        self.ncols - self.rank()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// Reduce `row` against the current pivots without inserting it.
    pub fn reduce(&self, mut row: SparseRow, mut rhs: Rational) -> (SparseRow, Rational) {
        let mut k = 0;
        while k < row.len() {
            let col = row[k].0;
            match self.pivots.binary_search_by_key(&col, |p| p.0) {
                Ok(idx) => {
                    let c = row[k].1.clone();
                    let (_, prow, prhs) = &self.pivots[idx];
                    row = row_axpy(&row, &c, prow);
                    rhs -= &(&c * prhs);
                    // the leading entry was cancelled; columns before k are
                    // already pivot-free
                }
                Err(_) => k += 1,
            }
        }
        (row, rhs)
    }

    /// Feed one equation `row . x = rhs`. Returns true if it added rank.
    pub fn push(&mut self, row: SparseRow, rhs: Rational) -> bool {
        let (mut row, rhs) = self.reduce(row, rhs);
        if row.is_empty() {
            if !rhs.is_zero() {
                self.inconsistent = true;
            }
            return false;
        }
        let lead = row[0].1.clone();
        let inv = lead.recip();
        row_scale(&mut row, &inv);
        let rhs = &rhs * &inv;
        let col = row[0].0;
        let idx = self.pivots.binary_search_by_key(&col, |p| p.0).unwrap_err();
        self.pivots.insert(idx, (col, row, rhs));
        true
    }

    pub fn push_homogeneous(&mut self, row: SparseRow) -> bool {
        self.push(row, Rational::zero())
    }

    /// Back-eliminate so every pivot row has zeros in all other pivot columns.
    fn to_rref(&mut self) {
        for i in (0..self.pivots.len()).rev() {
            let (col, row, rhs) = self.pivots[i].clone();
            for j in 0..i {
                let (_, jrow, jrhs) = &self.pivots[j];
                if let Ok(pos) = jrow.binary_search_by_key(&col, |e| e.0) {
                    let c = jrow[pos].1.clone();
                    let new_row = row_axpy(jrow, &c, &row);
                    let new_rhs = jrhs - &(&c * &rhs);
                    self.pivots[j].1 = new_row;
                    self.pivots[j].2 = new_rhs;
                }
            }
        }
    }

    /// Particular solution with all free variables set to zero, or `None`
    /// when the accumulated system is inconsistent.
    pub fn solve(mut self) -> Option<Vec<Rational>> {
        if self.inconsistent {
            return None;
        }
        self.to_rref();
        let mut x = vec![Rational::zero(); self.ncols];
        for (col, _, rhs) in &self.pivots {
            x[*col] = rhs.clone();
        }
        Some(x)
    }

    /// Basis of the nullspace of the accumulated homogeneous rows, one vector
    /// per free column, in increasing free-column order.
    pub fn nullspace(mut self) -> Vec<Vec<Rational>> {
        self.to_rref();
        let pivot_cols: Vec<usize> = self.pivots.iter().map(|p| p.0).collect();
        let mut is_pivot = vec![false; self.ncols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rational::zero(); self.ncols];
            v[free] = Rational::one();
            for (col, row, _) in &self.pivots {
                if let Ok(pos) = row.binary_search_by_key(&free, |e| e.0) {
                    v[*col] = -&row[pos].1;
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Rank of a dense matrix given as rows.
pub fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut elim = Eliminator::new(ncols);
    for row in rows {
        let sparse: SparseRow = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        elim.push_homogeneous(sparse);
    }
    elim.rank()
}

/// Determinant of a small dense matrix by fraction-free-ish elimination.
pub fn dense_det(mat: &[Vec<Rational>]) -> Rational {
    let n = mat.len();
    let mut m: Vec<Vec<Rational>> = mat.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det *= &pv;
        let inv = pv.recip();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] -= &sub;
            }
        }
    }
    det
}
