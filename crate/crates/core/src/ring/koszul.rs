//! The Koszul complex on the partial derivatives.
//!
//! Spot `r` is `binom(nvars, r)` copies of `S_{mu - r(d-1)}` indexed by
//! `r`-subsets `I`; the differential sends `g e_I` to
//! `sum_j (-1)^j dF/dx_{i_j} g e_{I \ i_j}`. The complex is truncated at spot
//! `p`, so the cohomology at spot `p` is just the kernel of the first map.

use std::collections::HashMap;

use crate::field::Field;
use crate::linalg::SparseRow;
use crate::monomial::{count_monomials, monomials_of_degree, ExponentVector};

use super::GradedQuotientRing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulDims {
    pub mu: i64,
    pub p: usize,
    /// Cohomology dimensions at spots `r = p, p-1, ..., 0`.
    pub dims: Vec<usize>,
    /// Whether `mu >= p(d-1) - n`.
    pub hypothesis_holds: bool,
}

impl KoszulDims {
    pub fn at_spot(&self, r: usize) -> usize {
        self.dims[self.p - r]
    }
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, r, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= n {
        go(n, r, 0, &mut Vec::new(), &mut out);
    }
    out
}

impl<K: Field> GradedQuotientRing<K> {
    fn koszul_spot_degree(&self, mu: i64, r: usize) -> i64 {
        mu - (r * (self.degree() - 1)) as i64
    }

    fn koszul_spot_dim(&self, mu: i64, r: usize) -> usize {
        let deg = self.koszul_spot_degree(mu, r);
        if deg < 0 || r > self.nvars() {
            return 0;
        }
        subsets(self.nvars(), r).len() * count_monomials(self.nvars(), deg as usize)
    }

    /// Matrix of the differential from spot `r` to spot `r - 1`, as
    /// `(cols, rows)`; `None` when either side is zero.
    fn koszul_differential(&self, mu: i64, r: usize) -> Option<(usize, Vec<SparseRow<K::Elem>>)> {
        if r == 0 || r > self.nvars() {
            return None;
        }
        let src_deg = self.koszul_spot_degree(mu, r);
        let dst_deg = self.koszul_spot_degree(mu, r - 1);
        if src_deg < 0 || dst_deg < 0 {
            return None;
        }
        let field = self.field();
        let nvars = self.nvars();
        let src_monomials = monomials_of_degree(nvars, src_deg as usize);
        let dst_monomials = monomials_of_degree(nvars, dst_deg as usize);
        let dst_index: HashMap<&ExponentVector, usize> =
            dst_monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let dst_subsets = subsets(nvars, r - 1);
        let subset_index: HashMap<&[usize], usize> = dst_subsets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect();
        let width = dst_monomials.len();
        let mut rows = Vec::new();
        for subset in subsets(nvars, r) {
            for g in &src_monomials {
                let mut row: SparseRow<K::Elem> = Vec::new();
                for (j, &var) in subset.iter().enumerate() {
                    let mut rest = subset.clone();
                    rest.remove(j);
                    let block = subset_index[rest.as_slice()] * width;
                    for (m, c) in self.partials()[var].terms() {
                        let c = if j % 2 == 0 { c.clone() } else { field.neg(c) };
                        row.push((block + dst_index[&m.mul(g)], c));
                    }
                }
                row.sort_by_key(|(c, _)| *c);
                rows.push(row);
            }
        }
        Some((dst_subsets.len() * width, rows))
    }

    /// Exact ranks of the differentials `d_1..=d_top`.
    ///
    /// Modular ranks are lower bounds. Since `im d_{r+1} ⊆ ker d_r`, the rank
    /// of `d_r` is also at most `dim K_r - rank d_{r+1}` and at most
    /// `dim K_{r-1} - rank d_{r-1}`; a differential whose bounds meet needs no
    /// exact elimination.
    fn koszul_ranks(&self, mu: i64, top: usize) -> Vec<usize> {
        let field = self.field();
        let matrices: Vec<_> = (0..=top + 1)
            .map(|r| if r > top { None } else { self.koszul_differential(mu, r) })
            .collect();
        let size = |r: usize| matrices[r].as_ref().map_or(0, |(c, rows)| rows.len().min(*c));
        let mut lower: Vec<usize> = matrices
            .iter()
            .map(|m| m.as_ref().map_or(0, |(c, rows)| field.rank_lower_bound(*c, rows)))
            .collect();
        let mut exact: Vec<bool> = (0..=top + 1).map(|r| matrices[r].is_none()).collect();
        loop {
            let mut changed = false;
            for r in 1..=top {
                if exact[r] {
                    continue;
                }
                let mut upper = size(r);
                upper = upper.min(self.koszul_spot_dim(mu, r).saturating_sub(lower[r + 1]));
                if r >= 2 {
                    upper = upper.min(self.koszul_spot_dim(mu, r - 1).saturating_sub(lower[r - 1]));
                }
                if upper == lower[r] {
                    exact[r] = true;
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // Settle the first open rank by elimination; its exact value may
            // close the gap for its neighbours.
            match (1..=top).find(|&r| !exact[r]) {
                Some(r) => {
                    let (c, rows) = matrices[r].as_ref().expect("open rank has a matrix");
                    lower[r] = field.rank_rows(*c, rows);
                    exact[r] = true;
                }
                None => break,
            }
        }
        lower
    }

    /// Cohomology dimensions of the Koszul complex truncated at spot `p`.
    ///
    /// For `p >= 1` the spot-0 value is `dim R_mu`; for `p = 0` the complex
    /// is the single term `S_mu`.
    pub fn koszul_cohomology_dims(&self, mu: i64, p: usize) -> KoszulDims {
        let n = self.ambient_dim() as i64;
        let hypothesis_holds = mu >= (p * (self.degree() - 1)) as i64 - n;
        let ranks = self.koszul_ranks(mu, p);
        let dims = (0..=p)
            .rev()
            .map(|r| self.koszul_spot_dim(mu, r) - ranks[r] - ranks[r + 1])
            .collect();
        KoszulDims {
            mu,
            p,
            dims,
            hypothesis_holds,
        }
    }
}
