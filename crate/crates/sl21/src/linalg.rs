//! Dense exact linear algebra over a [`Field`].
//!
//! Everything here is deterministic: Gauss–Jordan elimination picks the
//! first nonzero entry in column order, and [`Subspace`] bases are always
//! kept in reduced row-echelon form, so equality of subspaces is equality
//! of representations.
//!
//! Vectors are matrices with a single row throughout.

use std::fmt;

use crate::field::{Field, FieldElement};
use crate::{Error, Result};

/// A dense `rows x cols` matrix with entries in one field, stored row-major
/// as raw coefficient words.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixF {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl MatrixF {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> MatrixF {
        MatrixF {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols * field.width()],
        }
    }

    pub fn identity(field: &Field, n: usize) -> MatrixF {
        let mut m = MatrixF::zeros(field, n, n);
        let one = field.one();
        for i in 0..n {
            m.set(i, i, &one);
        }
        m
    }

    pub fn from_fn(
        field: &Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> MatrixF {
        let mut m = MatrixF::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                m.set(i, j, &v);
            }
        }
        m
    }

    /// A single-row matrix from integer entries (reduced mod p).
    pub fn row_from_ints(field: &Field, entries: &[i64]) -> MatrixF {
        MatrixF::from_fn(field, 1, entries.len(), |_, j| field.from_int(entries[j]))
    }

    pub fn from_int_rows(field: &Field, rows: &[&[i64]]) -> MatrixF {
        let cols = rows.first().map_or(0, |r| r.len());
        MatrixF::from_fn(field, rows.len(), cols, |i, j| field.from_int(rows[i][j]))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.field
            .element_from_words(self.entry_words(i, j).to_vec())
    }

    pub fn set(&mut self, i: usize, j: usize, v: &FieldElement) {
        assert!(v.field() == &self.field, "entry from a different field");
        let w = self.field.width();
        let off = (i * self.cols + j) * w;
        self.data[off..off + w].copy_from_slice(v.coeffs());
    }

    #[inline]
    pub(crate) fn entry_words(&self, i: usize, j: usize) -> &[u64] {
        let w = self.field.width();
        let off = (i * self.cols + j) * w;
        &self.data[off..off + w]
    }

    #[inline]
    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        let w = self.field.width() * self.cols;
        &self.data[i * w..(i + 1) * w]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn entry_is_zero(&self, i: usize, j: usize) -> bool {
        self.entry_words(i, j).iter().all(|&c| c == 0)
    }

    /// The `i`-th row as a `1 x cols` matrix.
    pub fn row(&self, i: usize) -> MatrixF {
        MatrixF {
            field: self.field.clone(),
            rows: 1,
            cols: self.cols,
            data: self.row_words(i).to_vec(),
        }
    }

    pub fn matmul(&self, other: &MatrixF) -> MatrixF {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        assert!(self.field == other.field);
        let mut out = MatrixF::zeros(&self.field, self.rows, other.cols);
        let w = self.field.width();
        let mut scratch = self.field.scratch();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry_words(i, k);
                if self.field.slice_is_zero(a) {
                    continue;
                }
                let a = a.to_vec();
                for j in 0..other.cols {
                    let b = other.entry_words(k, j);
                    if self.field.slice_is_zero(b) {
                        continue;
                    }
                    let off = (i * out.cols + j) * w;
                    let b = b.to_vec();
                    self.field
                        .mul_acc_slice(&mut out.data[off..off + w], &b, &a, &mut scratch);
                }
            }
        }
        out
    }

    /// Apply this `r x c` matrix to a vector (a `1 x c` row, read as a
    /// column), producing a `1 x r` row.
    pub fn apply(&self, v: &MatrixF) -> MatrixF {
        assert_eq!(v.rows, 1, "vectors are single-row matrices");
        assert_eq!(self.cols, v.cols, "apply shape mismatch");
        let mut out = MatrixF::zeros(&self.field, 1, self.rows);
        let w = self.field.width();
        let mut scratch = self.field.scratch();
        for i in 0..self.rows {
            let off = i * w;
            for k in 0..self.cols {
                let a = self.entry_words(i, k);
                if self.field.slice_is_zero(a) {
                    continue;
                }
                let a = a.to_vec();
                let b = v.entry_words(0, k).to_vec();
                self.field
                    .mul_acc_slice(&mut out.data[off..off + w], &b, &a, &mut scratch);
            }
        }
        out
    }

    pub fn add(&self, other: &MatrixF) -> MatrixF {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        self.field.add_assign_slice(&mut out.data, &other.data);
        out
    }

    pub fn sub(&self, other: &MatrixF) -> MatrixF {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        self.field.sub_assign_slice(&mut out.data, &other.data);
        out
    }

    pub fn neg(&self) -> MatrixF {
        let mut out = self.clone();
        self.field.neg_slice(&mut out.data);
        out
    }

    pub fn scale(&self, c: &FieldElement) -> MatrixF {
        let mut out = MatrixF::zeros(&self.field, self.rows, self.cols);
        let w = self.field.width();
        let mut scratch = self.field.scratch();
        for (dst, src) in out.data.chunks_mut(w).zip(self.data.chunks(w)) {
            self.field.mul_acc_slice(dst, src, c.coeffs(), &mut scratch);
        }
        out
    }

    /// Matrix power for square matrices.
    pub fn pow(&self, mut e: u64) -> MatrixF {
        assert_eq!(self.rows, self.cols, "pow needs a square matrix");
        let mut base = self.clone();
        let mut acc = MatrixF::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&base);
            }
            base = base.matmul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn stack_vertical(parts: &[&MatrixF]) -> MatrixF {
        assert!(!parts.is_empty());
        let field = parts[0].field.clone();
        let cols = parts[0].cols;
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols * field.width());
        for m in parts {
            assert_eq!(m.cols, cols);
            assert!(m.field == field);
            data.extend_from_slice(&m.data);
        }
        MatrixF {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Reduced row-echelon form, with rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let mut reducer = RowReducer::new(&self.field, self.cols);
        for i in 0..self.rows {
            reducer.absorb(self.row_words(i).to_vec());
        }
        let rank = reducer.rank();
        let pivots = reducer.pivots.clone();
        Rref {
            matrix: reducer.into_matrix(),
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// The right nullspace `{v : self . v = 0}`.
    pub fn nullspace(&self) -> Subspace {
        let r = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &r.pivots {
            is_pivot[c] = true;
        }
        let w = self.field.width();
        let mut reducer = RowReducer::new(&self.field, self.cols);
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![0u64; self.cols * w];
            v[f * w] = 1;
            for (ri, &c) in r.pivots.iter().enumerate() {
                // v[c] = -rref[ri][f]
                let mut neg = r.matrix.entry_words(ri, f).to_vec();
                self.field.neg_slice(&mut neg);
                v[c * w..(c + 1) * w].copy_from_slice(&neg);
            }
            reducer.absorb(v);
        }
        reducer.into_subspace()
    }

    /// Some solution of `self . x = b`, if one exists. `b` is a `1 x rows`
    /// vector; the result is `1 x cols`.
    pub fn solve(&self, b: &MatrixF) -> Option<MatrixF> {
        assert_eq!(b.rows, 1);
        assert_eq!(b.cols, self.rows, "right-hand side length mismatch");
        let w = self.field.width();
        // Augment with b as the last column.
        let mut aug = MatrixF::zeros(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            let src = self.row_words(i);
            let off = i * (self.cols + 1) * w;
            aug.data[off..off + self.cols * w].copy_from_slice(src);
            let boff = off + self.cols * w;
            aug.data[boff..boff + w].copy_from_slice(b.entry_words(0, i));
        }
        let r = aug.rref();
        if r.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = MatrixF::zeros(&self.field, 1, self.cols);
        for (ri, &c) in r.pivots.iter().enumerate() {
            let val = r.matrix.entry_words(ri, self.cols).to_vec();
            x.data[c * w..(c + 1) * w].copy_from_slice(&val);
        }
        debug_assert_eq!(self.apply(&x), *b);
        Some(x)
    }
}

impl fmt::Debug for MatrixF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixF {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let entries: Vec<String> =
                (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", entries.join(", "))?;
        }
        Ok(())
    }
}

/// Result of Gauss–Jordan elimination.
pub struct Rref {
    pub matrix: MatrixF,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Incremental Gauss–Jordan: rows are absorbed one at a time and the basis
/// is kept fully reduced, so the final rows (sorted by pivot) are exactly
/// the nonzero rows of the reduced row-echelon form.
pub(crate) struct RowReducer {
    field: Field,
    cols: usize,
    /// Basis rows, parallel to `pivots`, sorted by pivot column.
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    scratch: Vec<u64>,
}

impl RowReducer {
    pub fn new(field: &Field, cols: usize) -> RowReducer {
        RowReducer {
            field: field.clone(),
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
            scratch: field.scratch(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn first_nonzero(&self, row: &[u64]) -> Option<usize> {
        let w = self.field.width();
        (0..self.cols).find(|&j| !self.field.slice_is_zero(&row[j * w..(j + 1) * w]))
    }

    /// Subtract multiples of the basis rows to zero out their pivot columns
    /// in `row`.
    fn reduce_row(&mut self, row: &mut [u64]) {
        let w = self.field.width();
        let field = &self.field;
        let scratch = &mut self.scratch;
        for (b, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = &row[piv * w..(piv + 1) * w];
            if field.slice_is_zero(c) {
                continue;
            }
            let mut negc = c.to_vec();
            field.neg_slice(&mut negc);
            // Basis rows vanish left of their pivot.
            for j in piv..self.cols {
                let src = &b[j * w..(j + 1) * w];
                if field.slice_is_zero(src) {
                    continue;
                }
                field.mul_acc_slice(&mut row[j * w..(j + 1) * w], src, &negc, scratch);
            }
        }
    }

    /// Returns true when the row was independent of the basis so far.
    pub fn absorb(&mut self, mut row: Vec<u64>) -> bool {
        debug_assert_eq!(row.len(), self.cols * self.field.width());
        let w = self.field.width();
        self.reduce_row(&mut row);
        let Some(piv) = self.first_nonzero(&row) else {
            return false;
        };
        // Normalise so the pivot entry is 1.
        let pval = self
            .field
            .element_from_words(row[piv * w..(piv + 1) * w].to_vec());
        let pinv = pval.inv().expect("pivot is nonzero");
        let mut normalised = vec![0u64; row.len()];
        for j in piv..self.cols {
            self.field.mul_acc_slice(
                &mut normalised[j * w..(j + 1) * w],
                &row[j * w..(j + 1) * w],
                pinv.coeffs(),
                &mut self.scratch,
            );
        }
        // Back-eliminate the new pivot column from the existing rows.
        {
            let field = &self.field;
            let scratch = &mut self.scratch;
            for b in self.rows.iter_mut() {
                let c = &b[piv * w..(piv + 1) * w];
                if field.slice_is_zero(c) {
                    continue;
                }
                let mut negc = c.to_vec();
                field.neg_slice(&mut negc);
                for j in piv..self.cols {
                    let src = &normalised[j * w..(j + 1) * w];
                    if field.slice_is_zero(src) {
                        continue;
                    }
                    field.mul_acc_slice(&mut b[j * w..(j + 1) * w], src, &negc, scratch);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < piv);
        self.pivots.insert(at, piv);
        self.rows.insert(at, normalised);
        true
    }

    /// Whether `row` lies in the span of the absorbed rows. Does not modify
    /// the reducer.
    pub fn contains(&mut self, row: &[u64]) -> bool {
        let mut r = row.to_vec();
        self.reduce_row(&mut r);
        self.field.slice_is_zero(&r)
    }

    pub fn into_matrix(self) -> MatrixF {
        let mut data = Vec::with_capacity(self.rows.len() * self.cols * self.field.width());
        for r in &self.rows {
            data.extend_from_slice(r);
        }
        MatrixF {
            field: self.field,
            rows: self.rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn into_subspace(self) -> Subspace {
        let ambient = self.cols;
        Subspace {
            ambient,
            basis: self.into_matrix(),
        }
    }
}

/// A subspace of `F^ambient`, represented by its unique reduced
/// row-echelon basis (one basis vector per row).
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: MatrixF,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: MatrixF::zeros(field, 0, ambient),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: MatrixF::identity(field, ambient),
        }
    }

    /// The span of the rows of `m` (canonicalised).
    pub fn span(m: &MatrixF) -> Subspace {
        let mut reducer = RowReducer::new(m.field(), m.cols());
        for i in 0..m.rows() {
            reducer.absorb(m.row_words(i).to_vec());
        }
        reducer.into_subspace()
    }

    /// The span of a set of coordinate axes.
    pub fn coordinate_span(field: &Field, ambient: usize, coords: &[usize]) -> Subspace {
        let mut m = MatrixF::zeros(field, coords.len(), ambient);
        let one = field.one();
        for (i, &c) in coords.iter().enumerate() {
            m.set(i, c, &one);
        }
        Subspace::span(&m)
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// The canonical basis, one vector per row, in reduced row-echelon form.
    pub fn basis(&self) -> &MatrixF {
        &self.basis
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let w = self.field().width();
        (0..self.dim())
            .map(|i| {
                let row = self.basis.row_words(i);
                (0..self.ambient)
                    .find(|&j| !self.field().slice_is_zero(&row[j * w..(j + 1) * w]))
                    .expect("basis rows are nonzero")
            })
            .collect()
    }

    pub fn non_pivot_columns(&self) -> Vec<usize> {
        let pivots = self.pivot_columns();
        let mut is_pivot = vec![false; self.ambient];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&j| !is_pivot[j]).collect()
    }

    fn reducer(&self) -> RowReducer {
        let mut r = RowReducer::new(self.field(), self.ambient);
        for i in 0..self.dim() {
            r.absorb(self.basis.row_words(i).to_vec());
        }
        r
    }

    pub fn contains(&self, v: &MatrixF) -> bool {
        assert_eq!(v.rows(), 1);
        assert_eq!(v.cols(), self.ambient, "vector has wrong ambient dimension");
        self.reducer().contains(v.row_words(0))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        let mut r = self.reducer();
        (0..other.dim()).all(|i| r.contains(other.basis.row_words(i)))
    }

    /// The residual of `v` after eliminating this subspace's pivot
    /// coordinates. Zero iff `v` is a member.
    pub(crate) fn residual_words(&self, v: &[u64]) -> Vec<u64> {
        let mut r = v.to_vec();
        self.reducer().reduce_row(&mut r);
        r
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut reducer = self.reducer();
        for i in 0..other.dim() {
            reducer.absorb(other.basis.row_words(i).to_vec());
        }
        Ok(reducer.into_subspace())
    }

    /// Intersection via the kernel of the stacked coordinate system: a
    /// vector lies in both spans iff some `(x, y)` has `x.A - y.B = 0`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let field = self.field().clone();
        let r = self.dim();
        let s = other.dim();
        if r == 0 || s == 0 {
            return Ok(Subspace::zero(&field, self.ambient));
        }
        // n x (r+s) system [A^T | -B^T]
        let m = MatrixF::from_fn(&field, self.ambient, r + s, |i, j| {
            if j < r {
                self.basis.get(j, i)
            } else {
                -&other.basis.get(j - r, i)
            }
        });
        let ker = m.nullspace();
        let mut reducer = RowReducer::new(&field, self.ambient);
        let w = field.width();
        let mut scratch = field.scratch();
        for k in 0..ker.dim() {
            let u = ker.basis().row_words(k);
            let mut v = vec![0u64; self.ambient * w];
            for j in 0..r {
                let c = u[j * w..(j + 1) * w].to_vec();
                if field.slice_is_zero(&c) {
                    continue;
                }
                let row = self.basis.row_words(j);
                for t in 0..self.ambient {
                    field.mul_acc_slice(
                        &mut v[t * w..(t + 1) * w],
                        &row[t * w..(t + 1) * w],
                        &c,
                        &mut scratch,
                    );
                }
            }
            reducer.absorb(v);
        }
        Ok(reducer.into_subspace())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}): {:?}",
            self.dim(),
            self.ambient,
            self.basis
        )
    }
}

/// The unique maximal subspace `W` of `within` with `op(W)` contained in `W`
/// for every operator, found as the decreasing fixpoint of
/// `W <- {w in W : op(w) in W for all op}`.
pub fn largest_invariant_subspace(ops: &[MatrixF], within: &Subspace) -> Subspace {
    let field = within.field().clone();
    let n = within.ambient_dim();
    for op in ops {
        assert_eq!(
            op.rows(),
            n,
            "operators must be square of the ambient dimension"
        );
        assert_eq!(op.cols(), n);
    }
    let mut w = within.clone();
    loop {
        let d = w.dim();
        if d == 0 {
            return w;
        }
        // Constraints on coefficients c: residual(op . (c . basis)) = 0.
        let width = field.width();
        let mut constraint = MatrixF::zeros(&field, ops.len() * n, d);
        for j in 0..d {
            let b = w.basis().row(j);
            for (oi, op) in ops.iter().enumerate() {
                let img = op.apply(&b);
                let res = w.residual_words(img.row_words(0));
                for t in 0..n {
                    let entry = field.element_from_words(res[t * width..(t + 1) * width].to_vec());
                    constraint.set(oi * n + t, j, &entry);
                }
            }
        }
        let coeffs = constraint.nullspace();
        if coeffs.dim() == d {
            return w;
        }
        w = Subspace::span(&coeffs.basis().matmul(w.basis()));
    }
}

/// The intersection of the eigenspaces `ker(op_i - c_i I)`.
pub fn simultaneous_eigenspace(ops: &[MatrixF], eigvals: &[FieldElement]) -> Subspace {
    assert_eq!(ops.len(), eigvals.len());
    assert!(!ops.is_empty());
    let field = ops[0].field().clone();
    let n = ops[0].rows();
    let shifted: Vec<MatrixF> = ops
        .iter()
        .zip(eigvals)
        .map(|(op, c)| op.sub(&MatrixF::identity(&field, n).scale(c)))
        .collect();
    let refs: Vec<&MatrixF> = shifted.iter().collect();
    MatrixF::stack_vertical(&refs).nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let f = f5();
        let id = MatrixF::identity(&f, 4);
        let r = id.rref();
        assert_eq!(r.rank, 4);
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2, 3]);
    }

    #[test]
    fn rref_detects_dependent_rows() {
        let f = f5();
        let m = MatrixF::from_int_rows(&f, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rref().rank, 1);
        let z = MatrixF::zeros(&f, 3, 3);
        assert_eq!(z.rref().rank, 0);
    }

    #[test]
    fn rref_is_idempotent() {
        let f = f5();
        let m = MatrixF::from_int_rows(&f, &[&[1, 2, 3], &[4, 0, 1], &[2, 2, 2]]);
        let r1 = m.rref().matrix;
        let r2 = r1.rref().matrix;
        assert_eq!(r1, r2);
    }

    #[test]
    fn nullspace_of_identity_is_zero() {
        let f = f5();
        assert_eq!(MatrixF::identity(&f, 3).nullspace().dim(), 0);
    }

    #[test]
    fn nullspace_of_sum_constraint() {
        // x + y = 0 over F_3 has solution space spanned by (1, 2).
        let f = f3();
        let m = MatrixF::from_int_rows(&f, &[&[1, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.dim(), 1);
        let expected = MatrixF::row_from_ints(&f, &[1, 2]);
        assert_eq!(ns.basis(), &expected);
    }

    #[test]
    fn nullspace_vectors_are_in_the_kernel() {
        let f = f5();
        let m = MatrixF::from_int_rows(&f, &[&[1, 2, 3, 4], &[0, 1, 1, 0], &[1, 3, 4, 4]]);
        let ns = m.nullspace();
        assert_eq!(m.rref().rank + ns.dim(), 4);
        for i in 0..ns.dim() {
            let v = ns.basis().row(i);
            assert!(m.apply(&v).is_zero());
        }
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let f = f5();
        let id = MatrixF::identity(&f, 3);
        let b = MatrixF::row_from_ints(&f, &[2, 0, 4]);
        assert_eq!(id.solve(&b).unwrap(), b);

        // x + y = 1 and x + y = 2 cannot both hold.
        let m = MatrixF::from_int_rows(&f, &[&[1, 1], &[1, 1]]);
        let b = MatrixF::row_from_ints(&f, &[1, 2]);
        assert!(m.solve(&b).is_none());

        let m = MatrixF::from_int_rows(&f, &[&[1, 2], &[3, 4]]);
        let b = MatrixF::row_from_ints(&f, &[1, 1]);
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
    }

    #[test]
    fn subspace_lattice_laws() {
        let f = f5();
        let a = Subspace::span(&MatrixF::from_int_rows(&f, &[&[1, 0, 2], &[0, 1, 1]]));
        let b = Subspace::span(&MatrixF::from_int_rows(&f, &[&[1, 1, 3], &[2, 0, 1]]));
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.intersect(&a).unwrap(), a);
        let sum = a.sum(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        assert_eq!(a.dim() + b.dim(), sum.dim() + meet.dim());
        for i in 0..meet.dim() {
            let v = meet.basis().row(i);
            assert!(a.contains(&v) && b.contains(&v));
        }

        let e1 = Subspace::coordinate_span(&f, 2, &[0]);
        let e2 = Subspace::coordinate_span(&f, 2, &[1]);
        assert!(e1.intersect(&e2).unwrap().is_zero());

        let wrong = Subspace::zero(&f, 7);
        assert!(matches!(a.sum(&wrong), Err(Error::AmbientMismatch(3, 7))));
    }

    /// Brute-force oracle: all subspaces of F_3^n for n <= 3, found by
    /// spanning every subset of up to three nonzero vectors.
    fn all_subspaces_f3(n: usize) -> Vec<Subspace> {
        let f = f3();
        let mut vectors = Vec::new();
        let total = 3usize.pow(n as u32);
        for code in 1..total {
            let mut c = code;
            let entries: Vec<i64> = (0..n)
                .map(|_| {
                    let e = (c % 3) as i64;
                    c /= 3;
                    e
                })
                .collect();
            vectors.push(entries);
        }
        let mut seen: Vec<Subspace> = vec![Subspace::zero(&f, n)];
        let k = vectors.len();
        let mut push_span = |rows: Vec<&[i64]>| {
            let m = MatrixF::from_int_rows(&f, &rows);
            let s = Subspace::span(&m);
            if !seen.contains(&s) {
                seen.push(s);
            }
        };
        for i in 0..k {
            push_span(vec![&vectors[i]]);
            for j in (i + 1)..k {
                push_span(vec![&vectors[i], &vectors[j]]);
                for l in (j + 1)..k {
                    push_span(vec![&vectors[i], &vectors[j], &vectors[l]]);
                }
            }
        }
        seen
    }

    fn oracle_largest_invariant(ops: &[MatrixF], within: &Subspace) -> Subspace {
        // The maximal invariant subspace inside `within` is the sum of all
        // invariant subspaces contained in it; at these sizes we can simply
        // scan every subspace.
        let mut best = Subspace::zero(within.field(), within.ambient_dim());
        for s in all_subspaces_f3(within.ambient_dim()) {
            if !within.contains_subspace(&s) {
                continue;
            }
            let invariant = ops.iter().all(|op| {
                (0..s.dim()).all(|i| {
                    let img = op.apply(&s.basis().row(i));
                    s.contains(&img)
                })
            });
            if invariant && s.dim() > best.dim() {
                best = s;
            }
        }
        best
    }

    #[test]
    fn invariant_subspace_identity_returns_within() {
        let f = f3();
        let within = Subspace::span(&MatrixF::from_int_rows(&f, &[&[1, 0, 1], &[0, 1, 2]]));
        let got = largest_invariant_subspace(&[MatrixF::identity(&f, 3)], &within);
        assert_eq!(got, within);
    }

    #[test]
    fn invariant_subspace_matches_bruteforce_on_lower_shift() {
        // N e_i = e_{i-1}, N e_1 = 0 acting on F_3^3; within = span{e1, e2}.
        let f = f3();
        let shift = MatrixF::from_int_rows(&f, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let within = Subspace::coordinate_span(&f, 3, &[0, 1]);
        let got = largest_invariant_subspace(&[shift.clone()], &within);
        let want = oracle_largest_invariant(&[shift], &within);
        assert_eq!(got, want);
        assert_eq!(got, within); // span{e1,e2} is already shift-invariant
    }

    #[test]
    fn invariant_subspace_of_irreducible_action_is_zero() {
        // Companion matrix of t^2 + 1, irreducible over F_3: no invariant
        // line, so nothing survives inside a proper subspace.
        let f = f3();
        let c = MatrixF::from_int_rows(&f, &[&[0, -1], &[1, 0]]);
        let within = Subspace::coordinate_span(&f, 2, &[0]);
        let got = largest_invariant_subspace(&[c.clone()], &within);
        assert!(got.is_zero());
        let want = oracle_largest_invariant(&[c], &within);
        assert_eq!(got, want);
    }

    #[test]
    fn invariant_subspace_result_contains_every_invariant_subspace() {
        let f = f3();
        let ops = vec![
            MatrixF::from_int_rows(&f, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]),
            MatrixF::from_int_rows(&f, &[&[1, 0, 0], &[0, 1, 0], &[0, 1, 2]]),
        ];
        let within = Subspace::span(&MatrixF::from_int_rows(&f, &[&[1, 0, 0], &[0, 0, 1]]));
        let got = largest_invariant_subspace(&ops, &within);
        // Verified invariant by direct multiplication.
        for op in &ops {
            for i in 0..got.dim() {
                assert!(got.contains(&op.apply(&got.basis().row(i))));
            }
        }
        // Maximality against the all-subspace scan.
        for s in all_subspaces_f3(3) {
            if !within.contains_subspace(&s) {
                continue;
            }
            let invariant = ops
                .iter()
                .all(|op| (0..s.dim()).all(|i| s.contains(&op.apply(&s.basis().row(i)))));
            if invariant {
                assert!(got.contains_subspace(&s));
            }
        }
    }

    #[test]
    fn simultaneous_eigenspace_basics() {
        let f = f5();
        let id = MatrixF::identity(&f, 4);
        let full = simultaneous_eigenspace(&[id.clone()], &[f.one()]);
        assert_eq!(full.dim(), 4);

        let d = MatrixF::from_int_rows(&f, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 2]]);
        let e2 = simultaneous_eigenspace(&[d.clone()], &[f.from_int(2)]);
        assert_eq!(e2, Subspace::coordinate_span(&f, 3, &[0, 2]));
        let e3 = simultaneous_eigenspace(&[d], &[f.from_int(3)]);
        assert_eq!(e3, Subspace::coordinate_span(&f, 3, &[1]));
    }

    #[test]
    fn rank_is_invariant_under_row_permutation() {
        let f = f5();
        let m = MatrixF::from_int_rows(&f, &[&[1, 2, 0], &[0, 1, 4], &[1, 3, 4]]);
        let p = MatrixF::from_int_rows(&f, &[&[0, 1, 4], &[1, 3, 4], &[1, 2, 0]]);
        assert_eq!(m.rref().rank, p.rref().rank);
    }

    #[test]
    fn extension_field_matrices_work() {
        let f = Field::artin_schreier(3).unwrap();
        let t = f.gen();
        let mut m = MatrixF::identity(&f, 2);
        m.set(0, 1, &t);
        let r = m.rref();
        assert_eq!(r.rank, 2);
        // [t, t^2] is proportional to [1, t]: rank 1.
        let mut m = MatrixF::zeros(&f, 2, 2);
        m.set(0, 0, &f.one());
        m.set(0, 1, &t);
        m.set(1, 0, &t);
        m.set(1, 1, &(&t * &t));
        assert_eq!(m.rref().rank, 1);
    }
}
