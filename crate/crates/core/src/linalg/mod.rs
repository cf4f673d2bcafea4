//! Exact linear algebra over a [`Field`]: sparse matrices, rank, reduced
//! row-echelon form, kernels and canonical span bases.

pub mod echelon;
pub(crate) mod lift;
mod matrix;

use thiserror::Error;

use crate::field::Field;

pub use echelon::Echelon;
pub use matrix::ExactMatrix;

/// A sparse row: `(column, value)` pairs, sorted by column, all values nonzero.
pub type SparseRow<E> = Vec<(usize, E)>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref<K: Field> {
    pub cols: usize,
    /// Nonzero rows, ordered by pivot; each row has a leading 1 at its pivot
    /// and zeros in every other pivot column.
    pub rows: Vec<SparseRow<K::Elem>>,
    pub pivots: Vec<usize>,
}

impl<K: Field> Rref<K> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn into_matrix(self, field: K) -> ExactMatrix<K> {
        ExactMatrix::from_sparse_rows(field, self.cols, self.rows)
    }
}

pub fn rref<K: Field>(m: &ExactMatrix<K>) -> Rref<K> {
    m.field().rref_rows(m.cols(), m.sparse_rows())
}

/// Rank over the matrix's field. Eliminates along the shorter side.
pub fn rank<K: Field>(m: &ExactMatrix<K>) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let field = m.field();
    if m.cols() > m.rows() {
        let t = m.transpose();
        field.rank_rows(t.cols(), t.sparse_rows())
    } else {
        field.rank_rows(m.cols(), m.sparse_rows())
    }
}

/// Canonical basis (rref rows, dense) of the span of `vectors`.
pub fn span_reduce<K: Field>(
    field: &K,
    vectors: &[Vec<K::Elem>],
) -> Result<Vec<Vec<K::Elem>>, LinalgError> {
    let Some(first) = vectors.first() else {
        return Ok(Vec::new());
    };
    let len = first.len();
    for v in vectors {
        if v.len() != len {
            return Err(LinalgError::DimensionMismatch {
                expected: len,
                found: v.len(),
            });
        }
    }
    let rows: Vec<SparseRow<K::Elem>> = vectors.iter().map(|v| sparse_from_dense(v)).collect();
    let r = field.rref_rows(len, &rows);
    Ok(r.rows.iter().map(|row| dense_from_sparse(field, row, len)).collect())
}

/// Basis of the right kernel `{x : m x = 0}`, one vector per free column.
pub fn kernel<K: Field>(m: &ExactMatrix<K>) -> Vec<Vec<K::Elem>> {
    let field = m.field();
    let r = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (row, &p) in r.rows.iter().zip(&r.pivots) {
            if let Ok(pos) = row.binary_search_by_key(&free, |(c, _)| *c) {
                v[p] = field.neg(&row[pos].1);
            }
        }
        basis.push(v);
    }
    basis
}

pub fn sparse_from_dense<E: Clone + num_traits::Zero>(v: &[E]) -> SparseRow<E> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse<K: Field>(field: &K, row: &[(usize, K::Elem)], len: usize) -> Vec<K::Elem> {
    let mut v = vec![field.zero(); len];
    for (c, x) in row {
        v[*c] = x.clone();
    }
    v
}
