use crate::error::{Error, Result};
use crate::ffield::field::{Elem, FieldSpec};

/// Matrices with both dimensions below this go through the dense kernel.
pub const DENSE_LIMIT: usize = 256;

const NONE: u32 = u32::MAX;

/// Sparse matrix in canonical form: entries sorted by (row, col), no zeros, no
/// repeated positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(u32, u32, Elem)>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Builds the canonical form; repeated positions are summed.
    pub fn from_triplets(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Elem)>,
    ) -> Result<Self> {
        let mut entries: Vec<(u32, u32, Elem)> = Vec::new();
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Shape(format!(
                    "matrix entry ({r},{c}) outside {rows}x{cols}"
                )));
            }
            entries.push((r as u32, c as u32, v));
        }
        entries.sort_by_key(|&(r, c, _)| (r, c));
        let mut out: Vec<(u32, u32, Elem)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match out.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 = field.add(last.2, v),
                _ => out.push((r, c, v)),
            }
        }
        out.retain(|e| e.2 != 0);
        Ok(SparseMatrix {
            rows,
            cols,
            entries: out,
        })
    }

    pub fn from_dense(rows: &[Vec<Elem>], cols: usize) -> Self {
        let mut entries = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    entries.push((r as u32, c as u32, v));
                }
            }
        }
        SparseMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            entries: (0..n as u32).map(|i| (i, i, 1)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(u32, u32, Elem)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            out[r as usize][c as usize] = v;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<(u32, u32, Elem)> = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_by_key(|&(r, c, _)| (r, c));
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Rows as sorted `(col, value)` lists.
    pub fn row_lists(&self) -> Vec<Vec<(u32, Elem)>> {
        let mut out = vec![Vec::new(); self.rows];
        for &(r, c, v) in &self.entries {
            out[r as usize].push((c, v));
        }
        out
    }

    pub fn mul_vec(&self, field: &FieldSpec, v: &[Elem]) -> Vec<Elem> {
        let mut out = vec![0; self.rows];
        for &(r, c, x) in &self.entries {
            let r = r as usize;
            out[r] = field.add(out[r], field.mul(x, v[c as usize]));
        }
        out
    }
}

/// In-place reduced row echelon form; returns pivot columns in row order.
/// Pivot search takes the lowest row at each column.
pub fn rref(field: &FieldSpec, m: &mut Vec<Vec<Elem>>) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = field.inv(m[r][c]).expect("pivot is nonzero");
        if inv != 1 {
            for x in m[r][c..].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let (head, tail) = m.split_at_mut(r);
        let (prow, rest) = tail.split_first_mut().expect("row r exists");
        for other in head.iter_mut().chain(rest.iter_mut()) {
            let f = other[c];
            if f == 0 {
                continue;
            }
            let nf = field.neg(f);
            for (x, &y) in other[c..].iter_mut().zip(prow[c..].iter()) {
                if y != 0 {
                    *x = field.add(*x, field.mul(nf, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Null space of a matrix given in RREF with the listed pivots.
fn nullspace_from_rref(field: &FieldSpec, rref_rows: &[Vec<Elem>], pivots: &[usize], ncols: usize) -> Vec<Vec<Elem>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![0; ncols];
            v[f] = 1;
            for (row, &pc) in rref_rows.iter().zip(pivots) {
                v[pc] = field.neg(row[f]);
            }
            v
        })
        .collect()
}

/// Canonical basis of the row space: its RREF with zero rows removed.
pub fn canonical_basis(field: &FieldSpec, mut vectors: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    rref(field, &mut vectors);
    vectors
}

/// Rank and null space basis. The basis is returned in reduced row echelon form,
/// so it is identical whichever kernel computed it.
pub fn rank_nullspace(field: &FieldSpec, m: &SparseMatrix) -> (usize, Vec<Vec<Elem>>) {
    if m.rows < DENSE_LIMIT && m.cols < DENSE_LIMIT {
        let mut d = m.to_dense();
        let pivots = rref(field, &mut d);
        let ns = nullspace_from_rref(field, &d, &pivots, m.cols);
        (pivots.len(), canonical_basis(field, ns))
    } else {
        let mut elim = Eliminator::new(field, m.cols);
        for row in m.row_lists() {
            elim.push(&row);
        }
        (elim.rank(), elim.nullspace())
    }
}

pub fn rank(field: &FieldSpec, m: &SparseMatrix) -> usize {
    if m.rows < DENSE_LIMIT && m.cols < DENSE_LIMIT {
        let mut d = m.to_dense();
        return rref(field, &mut d).len();
    }
    // eliminate along the shorter side so pivot rows stay short
    let m = if m.cols > m.rows { m.transpose() } else { m.clone() };
    let mut elim = Eliminator::new(field, m.cols);
    for row in m.row_lists() {
        elim.push(&row);
    }
    elim.rank()
}

pub fn dense_rank(field: &FieldSpec, rows: &[Vec<Elem>]) -> usize {
    let mut d = rows.to_vec();
    rref(field, &mut d).len()
}

/// Online sparse Gaussian elimination.
///
/// Pivot rows are kept fully reduced: each contains its own pivot (coefficient
/// one) and otherwise only non-pivot columns, so an incoming row is reduced in a
/// single pass. The pivot of a new row is the column touched by the fewest
/// stored rows (lowest column on ties).
pub struct Eliminator<'f> {
    field: &'f FieldSpec,
    cols: usize,
    pivot_of_col: Vec<u32>,
    rows: Vec<(u32, Vec<(u32, Elem)>)>,
    col_rows: Vec<Vec<u32>>,
    acc: Vec<Elem>,
    seen: Vec<bool>,
    touched: Vec<u32>,
}

impl<'f> Eliminator<'f> {
    pub fn new(field: &'f FieldSpec, cols: usize) -> Self {
        Eliminator {
            field,
            cols,
            pivot_of_col: vec![NONE; cols],
            rows: Vec::new(),
            col_rows: vec![Vec::new(); cols],
            acc: vec![0; cols],
            seen: vec![false; cols],
            touched: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn touch(&mut self, c: u32) {
        if !self.seen[c as usize] {
            self.seen[c as usize] = true;
            self.touched.push(c);
        }
    }

    /// Reduces `row` against the stored pivots, returning the residual sorted by
    /// column.
    pub fn reduce(&mut self, row: &[(u32, Elem)]) -> Vec<(u32, Elem)> {
        let k = self.field;
        for &(c, v) in row {
            if v == 0 {
                continue;
            }
            self.touch(c);
            self.acc[c as usize] = k.add(self.acc[c as usize], v);
        }
        let original = self.touched.len();
        for i in 0..original {
            let c = self.touched[i] as usize;
            let pr = self.pivot_of_col[c];
            if pr == NONE {
                continue;
            }
            let f = self.acc[c];
            if f == 0 {
                continue;
            }
            let nf = k.neg(f);
            let pivot_row = std::mem::take(&mut self.rows[pr as usize].1);
            for &(c2, w) in &pivot_row {
                self.touch(c2);
                let slot = &mut self.acc[c2 as usize];
                *slot = k.add(*slot, k.mul(nf, w));
            }
            self.rows[pr as usize].1 = pivot_row;
        }
        let mut out: Vec<(u32, Elem)> = Vec::new();
        for &c in &self.touched {
            let v = std::mem::replace(&mut self.acc[c as usize], 0);
            self.seen[c as usize] = false;
            if v != 0 {
                out.push((c, v));
            }
        }
        self.touched.clear();
        out.sort_unstable_by_key(|e| e.0);
        out
    }

    /// Adds a row; returns `true` if it increased the rank.
    pub fn push(&mut self, row: &[(u32, Elem)]) -> bool {
        let k = self.field;
        let mut residual = self.reduce(row);
        if residual.is_empty() {
            return false;
        }
        let &(pc, pv) = residual
            .iter()
            .min_by_key(|&&(c, _)| (self.col_rows[c as usize].len(), c))
            .expect("nonempty residual");
        let inv = k.inv(pv).expect("nonzero pivot");
        if inv != 1 {
            for e in residual.iter_mut() {
                e.1 = k.mul(e.1, inv);
            }
        }
        let new_idx = self.rows.len() as u32;
        // clear the new pivot column from every stored row
        let holders = std::mem::take(&mut self.col_rows[pc as usize]);
        for r in holders {
            let row = &mut self.rows[r as usize].1;
            let Ok(at) = row.binary_search_by_key(&pc, |e| e.0) else {
                continue;
            };
            let f = row[at].1;
            let nf = k.neg(f);
            let merged = merge_axpy(k, row, nf, &residual);
            // register columns new to this row
            let mut i = 0;
            for &(c, _) in &merged {
                while i < row.len() && row[i].0 < c {
                    i += 1;
                }
                if (i >= row.len() || row[i].0 != c) && c != pc {
                    self.col_rows[c as usize].push(r);
                }
            }
            *row = merged;
        }
        for &(c, _) in &residual {
            if c != pc {
                self.col_rows[c as usize].push(new_idx);
            }
        }
        self.pivot_of_col[pc as usize] = new_idx;
        self.rows.push((pc, residual));
        true
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.rows.iter().map(|r| r.0 as usize).collect();
        v.sort_unstable();
        v
    }

    /// Null space basis in reduced row echelon form.
    pub fn nullspace(&self) -> Vec<Vec<Elem>> {
        let k = self.field;
        let mut index_of_free = vec![NONE; self.cols];
        let mut basis: Vec<Vec<Elem>> = Vec::new();
        for c in 0..self.cols {
            if self.pivot_of_col[c] == NONE {
                index_of_free[c] = basis.len() as u32;
                let mut v = vec![0; self.cols];
                v[c] = 1;
                basis.push(v);
            }
        }
        for (pc, row) in &self.rows {
            for &(c, w) in row {
                if c == *pc {
                    continue;
                }
                let i = index_of_free[c as usize];
                debug_assert_ne!(i, NONE, "pivot rows hold only free columns");
                basis[i as usize][*pc as usize] = k.neg(w);
            }
        }
        canonical_basis(k, basis)
    }
}

/// `a + f * b` for sorted sparse rows.
fn merge_axpy(k: &FieldSpec, a: &[(u32, Elem)], f: Elem, b: &[(u32, Elem)]) -> Vec<(u32, Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(u32::MAX, |e| e.0);
        let cb = b.get(j).map_or(u32::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i]);
            i += 1;
        } else if cb < ca {
            let v = k.mul(f, b[j].1);
            if v != 0 {
                out.push((cb, v));
            }
            j += 1;
        } else {
            let v = k.add(a[i].1, k.mul(f, b[j].1));
            if v != 0 {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally maintained subspace of `k^dim` with a fully reduced basis.
#[derive(Clone, Debug)]
pub struct DenseSpan {
    field: FieldSpec,
    dim: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl DenseSpan {
    pub fn new(field: &FieldSpec, dim: usize) -> Self {
        DenseSpan {
            field: field.clone(),
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Basis vectors in insertion order.
    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let k = &self.field;
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = v[pc];
            if f == 0 {
                continue;
            }
            let nf = k.neg(f);
            for (x, &y) in v.iter_mut().zip(row) {
                if y != 0 {
                    *x = k.add(*x, k.mul(nf, y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns `true` if the span grew.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        let k = self.field.clone();
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = k.inv(r[pc]).expect("nonzero");
        for x in r.iter_mut() {
            *x = k.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let f = row[pc];
            if f == 0 {
                continue;
            }
            let nf = k.neg(f);
            for (x, &y) in row.iter_mut().zip(&r) {
                if y != 0 {
                    *x = k.add(*x, k.mul(nf, y));
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(pc);
        true
    }

    /// Coordinates of `v` in [`Self::basis`], or `None` if `v` lies outside.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }
}
