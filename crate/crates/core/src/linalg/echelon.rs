//! Incremental row echelon construction with a dense accumulator row.

use crate::field::Field;

use super::{Rref, SparseRow};

/// A growing echelon basis. Rows are inserted one at a time and reduced
/// against the existing pivots; independent rows become new pivots.
#[derive(Debug, Clone)]
pub struct Echelon<K: Field> {
    field: K,
    cols: usize,
    rows: Vec<SparseRow<K::Elem>>,
    pivot_of_col: Vec<Option<usize>>,
    buf: Vec<K::Elem>,
}

impl<K: Field> Echelon<K> {
    pub fn new(field: K, cols: usize) -> Self {
        let zero = field.zero();
        Echelon {
            field,
            cols,
            rows: Vec::new(),
            pivot_of_col: vec![None; cols],
            buf: vec![zero; cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Inserts a sparse row (sorted by column); returns whether it was
    /// independent of the rows inserted so far.
    pub fn insert_sparse(&mut self, row: &[(usize, K::Elem)]) -> bool {
        let Some(&(start, _)) = row.first() else {
            return false;
        };
        for (c, v) in row {
            self.buf[*c] = v.clone();
        }
        self.reduce_from(start)
    }

    pub fn insert_dense(&mut self, row: &[K::Elem]) -> bool {
        assert_eq!(row.len(), self.cols);
        let Some(start) = row.iter().position(|v| !self.field.is_zero(v)) else {
            return false;
        };
        for (c, v) in row.iter().enumerate().skip(start) {
            self.buf[c] = v.clone();
        }
        self.reduce_from(start)
    }

    fn reduce_from(&mut self, start: usize) -> bool {
        let field = &self.field;
        let mut lead = None;
        for c in start..self.cols {
            if field.is_zero(&self.buf[c]) {
                continue;
            }
            match self.pivot_of_col[c] {
                Some(pi) => {
                    let factor = std::mem::replace(&mut self.buf[c], field.zero());
                    for (j, v) in self.rows[pi].iter().skip(1) {
                        field.mul_sub_assign(&mut self.buf[*j], &factor, v);
                    }
                }
                None => {
                    lead = Some(c);
                    break;
                }
            }
        }
        let Some(lead) = lead else {
            return false;
        };
        let inv = field
            .inv(&self.buf[lead])
            .expect("nonzero leading entry is invertible");
        let mut row = Vec::new();
        for c in lead..self.cols {
            let v = std::mem::replace(&mut self.buf[c], field.zero());
            if !field.is_zero(&v) {
                row.push((c, field.mul(&v, &inv)));
            }
        }
        self.pivot_of_col[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|r| r[0].0).collect();
        p.sort_unstable();
        p
    }

    /// Back-substitutes into the reduced row-echelon form.
    pub fn into_rref(mut self) -> Rref<K> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i][0].0);
        let pivots: Vec<usize> = order.iter().map(|&i| self.rows[i][0].0).collect();
        let field = self.field.clone();
        let mut reduced: Vec<Option<SparseRow<K::Elem>>> = vec![None; self.rows.len()];
        // Later pivots first, so every row used for elimination is already reduced.
        for (pos, &ri) in order.iter().enumerate().rev() {
            let row = std::mem::take(&mut self.rows[ri]);
            let needs_work = row
                .iter()
                .skip(1)
                .any(|(c, _)| self.pivot_of_col[*c].is_some());
            if !needs_work {
                reduced[pos] = Some(row);
                continue;
            }
            let start = row[0].0;
            for (c, v) in &row {
                self.buf[*c] = v.clone();
            }
            for (later_pos, &pc) in pivots.iter().enumerate().skip(pos + 1) {
                if field.is_zero(&self.buf[pc]) {
                    continue;
                }
                let factor = std::mem::replace(&mut self.buf[pc], field.zero());
                let prow = reduced[later_pos].as_ref().expect("reduced");
                for (j, v) in prow.iter().skip(1) {
                    field.mul_sub_assign(&mut self.buf[*j], &factor, v);
                }
            }
            let mut out = Vec::new();
            for c in start..self.cols {
                let v = std::mem::replace(&mut self.buf[c], field.zero());
                if !field.is_zero(&v) {
                    out.push((c, v));
                }
            }
            reduced[pos] = Some(out);
        }
        Rref {
            cols: self.cols,
            rows: reduced.into_iter().map(|r| r.expect("row")).collect(),
            pivots,
        }
    }
}

/// Plain Gauss-Jordan elimination over any field.
pub fn gauss_jordan<K: Field>(field: &K, cols: usize, rows: &[SparseRow<K::Elem>]) -> Rref<K> {
    let mut ech = Echelon::new(field.clone(), cols);
    for row in rows {
        if ech.is_full() {
            break;
        }
        ech.insert_sparse(row);
    }
    ech.into_rref()
}
