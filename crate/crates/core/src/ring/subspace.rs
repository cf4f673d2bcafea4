use crate::field::Field;
use crate::linalg::{self, Echelon};

use super::{Class, GradedQuotientRing, RingError};

/// A subspace of one graded piece `R_mu`, kept as a canonical (rref) basis in
/// standard-monomial coordinates.
#[derive(Debug, Clone)]
pub struct DegreeSubspace<K: Field> {
    ring: GradedQuotientRing<K>,
    degree: usize,
    basis: Vec<Vec<K::Elem>>,
}

impl<K: Field> DegreeSubspace<K> {
    /// The span of `vectors`, each given in coordinates of `R_mu`.
    pub fn span(
        ring: &GradedQuotientRing<K>,
        mu: usize,
        vectors: &[Vec<K::Elem>],
    ) -> Result<Self, RingError> {
        let dim = ring.piece(mu).dim();
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(RingError::InvalidParameter(format!(
                "vector of length {} in degree {mu} (dim {dim})",
                v.len()
            )));
        }
        let basis = linalg::span_reduce(ring.field(), vectors)
            .expect("lengths checked above");
        Ok(DegreeSubspace {
            ring: ring.clone(),
            degree: mu,
            basis,
        })
    }

    /// The span of a set of classes, all of degree `mu`.
    pub fn from_classes(
        ring: &GradedQuotientRing<K>,
        mu: usize,
        classes: &[Class<K>],
    ) -> Result<Self, RingError> {
        if classes
            .iter()
            .any(|c| c.ring_id != ring.id() || c.degree != mu)
        {
            return Err(RingError::RingMismatch);
        }
        let vectors: Vec<_> = classes.iter().map(|c| c.coords.clone()).collect();
        Self::span(ring, mu, &vectors)
    }

    /// All of `R_mu`.
    pub fn full(ring: &GradedQuotientRing<K>, mu: usize) -> Self {
        let field = ring.field();
        let dim = ring.piece(mu).dim();
        let basis = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { field.one() } else { field.zero() })
                    .collect()
            })
            .collect();
        DegreeSubspace {
            ring: ring.clone(),
            degree: mu,
            basis,
        }
    }

    pub fn zero(ring: &GradedQuotientRing<K>, mu: usize) -> Self {
        DegreeSubspace {
            ring: ring.clone(),
            degree: mu,
            basis: Vec::new(),
        }
    }

    pub fn ring(&self) -> &GradedQuotientRing<K> {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<K::Elem>] {
        &self.basis
    }

    /// The span of all products `v * w` with `v` in `self`, `w` in `other`.
    pub fn product(&self, other: &DegreeSubspace<K>) -> Result<DegreeSubspace<K>, RingError> {
        if !self.ring.same_ring(&other.ring) {
            return Err(RingError::RingMismatch);
        }
        let ring = &self.ring;
        let target = self.degree + other.degree;
        if ring.is_monomial() {
            if let (Some(a), Some(b)) = (self.unit_support(), other.unit_support()) {
                return Ok(self.monomial_product(&a, other.degree, &b));
            }
        }
        let dim = ring.piece(target).dim();
        let mut ech = Echelon::new(ring.field().clone(), dim);
        let field = ring.field();
        let mut prod = vec![field.zero(); dim];
        'outer: for v in &self.basis {
            let rows = ring.multiplication_rows(self.degree, v, other.degree);
            for w in &other.basis {
                if ech.is_full() {
                    break 'outer;
                }
                for (j, cw) in w.iter().enumerate().filter(|(_, c)| !field.is_zero(c)) {
                    for (k, c) in &rows[j] {
                        field.mul_add_assign(&mut prod[*k], cw, c);
                    }
                }
                ech.insert_dense(&prod);
                prod.iter_mut().for_each(|c| *c = field.zero());
            }
        }
        let rref = ech.into_rref();
        let basis = rref
            .rows
            .iter()
            .map(|row| linalg::dense_from_sparse(ring.field(), row, dim))
            .collect();
        Ok(DegreeSubspace {
            ring: ring.clone(),
            degree: target,
            basis,
        })
    }

    /// Basis indices if every basis vector is a standard monomial.
    fn unit_support(&self) -> Option<Vec<usize>> {
        let field = self.ring.field();
        self.basis
            .iter()
            .map(|row| {
                let mut nz = row.iter().enumerate().filter(|(_, c)| !field.is_zero(c));
                match (nz.next(), nz.next()) {
                    (Some((i, c)), None) if *c == field.one() => Some(i),
                    _ => None,
                }
            })
            .collect()
    }

    // Over a monomial ideal, products of standard monomials are standard
    // monomials or zero, so the span is a coordinate subspace.
    fn monomial_product(&self, a: &[usize], nu: usize, b: &[usize]) -> DegreeSubspace<K> {
        let ring = &self.ring;
        let field = ring.field();
        let pa = ring.piece(self.degree);
        let pb = ring.piece(nu);
        let target = ring.piece(self.degree + nu);
        let mut hit = vec![false; target.dim()];
        for &i in a {
            for &j in b {
                let m = pa.basis()[i].mul(&pb.basis()[j]);
                if let Some(k) = target.position(&m) {
                    hit[k] = true;
                }
            }
        }
        let basis = hit
            .iter()
            .enumerate()
            .filter(|(_, h)| **h)
            .map(|(k, _)| {
                let mut row = vec![field.zero(); target.dim()];
                row[k] = field.one();
                row
            })
            .collect();
        DegreeSubspace {
            ring: ring.clone(),
            degree: self.degree + nu,
            basis,
        }
    }

    /// Whether every basis vector of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &DegreeSubspace<K>) -> bool {
        if !self.ring.same_ring(&other.ring) || self.degree != other.degree {
            return false;
        }
        let dim = self.ring.piece(self.degree).dim();
        let mut ech = Echelon::new(self.ring.field().clone(), dim);
        for v in &other.basis {
            ech.insert_dense(v);
        }
        self.basis.iter().all(|v| !ech.insert_dense(v))
    }
}

impl<K: Field> PartialEq for DegreeSubspace<K> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.degree == other.degree && self.basis == other.basis
    }
}
