use crate::field::Field;

use super::SparseRow;

/// A sparse matrix over an exact field. Only nonzero entries are stored.
#[derive(Debug, Clone)]
pub struct ExactMatrix<K: Field> {
    field: K,
    cols: usize,
    rows: Vec<SparseRow<K::Elem>>,
}

impl<K: Field> ExactMatrix<K> {
    pub fn zeros(field: K, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            cols,
            rows: vec![Vec::new(); rows],
        }
    }

    /// Builds from sparse rows; entries are sorted and zeros dropped.
    pub fn from_sparse_rows(field: K, cols: usize, rows: Vec<SparseRow<K::Elem>>) -> Self {
        let rows = rows
            .into_iter()
            .map(|mut r| {
                r.retain(|(c, v)| {
                    assert!(*c < cols, "column {c} out of range {cols}");
                    !field.is_zero(v)
                });
                r.sort_by_key(|(c, _)| *c);
                r
            })
            .collect();
        ExactMatrix { field, cols, rows }
    }

    pub fn from_dense(field: K, cols: usize, rows: Vec<Vec<K::Elem>>) -> Self {
        let rows = rows
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                super::sparse_from_dense(&r)
            })
            .collect();
        ExactMatrix { field, cols, rows }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn sparse_rows(&self) -> &[SparseRow<K::Elem>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> K::Elem {
        match self.rows[row].binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.rows[row][i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn push_row(&mut self, row: SparseRow<K::Elem>) {
        let ExactMatrix { field, cols, rows } = self;
        let mut row = row;
        row.retain(|(c, v)| {
            assert!(*c < *cols);
            !field.is_zero(v)
        });
        row.sort_by_key(|(c, _)| *c);
        rows.push(row);
    }

    pub fn transpose(&self) -> Self {
        let mut t: Vec<SparseRow<K::Elem>> = vec![Vec::new(); self.cols];
        for (i, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                t[*c].push((i, v.clone()));
            }
        }
        ExactMatrix {
            field: self.field.clone(),
            cols: self.rows.len(),
            rows: t,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<K::Elem>> {
        self.rows
            .iter()
            .map(|r| super::dense_from_sparse(&self.field, r, self.cols))
            .collect()
    }
}

impl<K: Field> PartialEq for ExactMatrix<K> {
    fn eq(&self, other: &Self) -> bool {
        self.cols == other.cols && self.rows == other.rows
    }
}
