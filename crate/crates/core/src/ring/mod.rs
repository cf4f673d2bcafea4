//! Jacobian rings `R = S / J` of homogeneous forms.
//!
//! Every graded piece `R_mu` is realised by its standard monomials: the
//! degree-`mu` monomials that are not leading monomials (graded lex,
//! `x0 > x1 > ...`) of the row-reduced `J_mu`. Pieces are computed lazily and
//! cached for the lifetime of the ring.
//!
//! Rings obtained by adjoining a `d`-th root (`y^d + F`) are not re-eliminated:
//! the Jacobian ideal of `y^d + F` is `J_F + (y^{d-1})` with generators in
//! disjoint variables, so its leading-term ideal is `in(J_F) + (y^{d-1})` and
//! every piece is `R'_mu = sum_{e <= d-2} y^e R_{mu-e}`. Such rings keep a
//! handle to their base and reduce through it.

mod koszul;
mod subspace;

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::linalg::{self, ExactMatrix, SparseRow};
use crate::monomial::{monomials_of_degree, ExponentVector};
use crate::poly::{Form, FormError, Poly};

pub use koszul::KoszulDims;
pub use subspace::DegreeSubspace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("the form is not smooth (R_{{sigma+1}} != 0)")]
    NotSmooth,
    #[error("no smooth form found after {tries} tries")]
    SmoothnessNotFound { tries: usize },
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("degree {mu} is outside [0, {sigma}]")]
    DegreeOutOfRange { mu: i64, sigma: usize },
    #[error("polynomial has {found} variables, ring has {expected}")]
    VariableCount { expected: usize, found: usize },
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

static NEXT_RING_ID: AtomicUsize = AtomicUsize::new(1);

/// The Jacobian ring of a form. Cheap to clone; clones share the cache.
#[derive(Clone)]
pub struct GradedQuotientRing<K: Field>(Arc<RingInner<K>>);

struct RingInner<K: Field> {
    id: usize,
    field: K,
    form: Form<K>,
    partials: Vec<Poly<K>>,
    backend: Backend<K>,
    cache: RwLock<HashMap<usize, Arc<DegreePiece<K>>>>,
    smooth: OnceLock<bool>,
}

enum Backend<K: Field> {
    Direct,
    Extension(GradedQuotientRing<K>),
}

/// Standard-monomial basis of one graded piece plus what is needed to reduce
/// monomials of that degree into it.
pub struct DegreePiece<K: Field> {
    degree: usize,
    basis: Vec<ExponentVector>,
    index: HashMap<ExponentVector, usize>,
    reducer: Reducer<K>,
}

enum Reducer<K: Field> {
    /// `reductions[m]` is the normal form of a non-standard monomial `m`.
    Direct {
        reductions: HashMap<ExponentVector, SparseRow<K::Elem>>,
    },
    /// `layers[e]` maps base basis indices of `R_{mu-e}` to indices here.
    Extension { layers: Vec<Layer<K>> },
}

struct Layer<K: Field> {
    base_piece: Arc<DegreePiece<K>>,
    to_top: Vec<usize>,
}

impl<K: Field> DegreePiece<K> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &[ExponentVector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, m: &ExponentVector) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// An element of `R_mu`, in coordinates over the standard-monomial basis.
#[derive(Debug, Clone)]
pub struct Class<K: Field> {
    ring_id: usize,
    degree: usize,
    coords: Vec<K::Elem>,
}

impl<K: Field> PartialEq for Class<K> {
    fn eq(&self, other: &Self) -> bool {
        self.ring_id == other.ring_id && self.degree == other.degree && self.coords == other.coords
    }
}

impl<K: Field> Class<K> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[K::Elem] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl<K: Field> std::fmt::Debug for GradedQuotientRing<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedQuotientRing")
            .field("form", &self.0.form.to_string())
            .field("field", &self.0.field.mode())
            .finish()
    }
}

impl<K: Field> GradedQuotientRing<K> {
    /// Jacobian ring of an arbitrary form, reduced by direct elimination.
    pub fn from_form(form: Form<K>) -> Result<Self, RingError> {
        check_params(form.degree(), form.nvars())?;
        Ok(Self::build(form, Backend::Direct))
    }

    fn build(form: Form<K>, backend: Backend<K>) -> Self {
        let partials = form.partials();
        GradedQuotientRing(Arc::new(RingInner {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            field: form.field().clone(),
            form,
            partials,
            backend,
            cache: RwLock::new(HashMap::new()),
            smooth: OnceLock::new(),
        }))
    }

    /// The Fermat ring of `x_0^d + ... + x_{nvars-1}^d`.
    pub fn fermat(d: usize, nvars: usize, field: K) -> Result<Self, RingError> {
        check_params(d, nvars)?;
        let mut ring = Self::from_form(Form::fermat(field, d, 2))?;
        for _ in 2..nvars {
            ring = ring.root_extension()?;
        }
        Ok(ring)
    }

    /// A smooth form with coefficients in `[-9, 9]` drawn from `seed`.
    /// Retry `t` uses stream `t` of the seeded generator.
    pub fn random_smooth(
        d: usize,
        nvars: usize,
        field: K,
        seed: u64,
        max_tries: usize,
    ) -> Result<Self, RingError> {
        check_params(d, nvars)?;
        let monomials = monomials_of_degree(nvars, d);
        for t in 0..max_tries {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let mut poly = Poly::zero(field.clone(), nvars);
            for m in &monomials {
                let c: i64 = rng.gen_range(-9..=9);
                poly.add_term(m.clone(), field.from_i64(c));
            }
            let Ok(form) = Form::new(poly) else {
                continue;
            };
            let ring = Self::from_form(form)?;
            if ring.smoothness_certificate() {
                return Ok(ring);
            }
        }
        Err(RingError::SmoothnessNotFound { tries: max_tries })
    }

    pub fn id(&self) -> usize {
        self.0.id
    }

    pub fn field(&self) -> &K {
        &self.0.field
    }

    pub fn form(&self) -> &Form<K> {
        &self.0.form
    }

    pub fn partials(&self) -> &[Poly<K>] {
        &self.0.partials
    }

    pub fn degree(&self) -> usize {
        self.0.form.degree()
    }

    pub fn nvars(&self) -> usize {
        self.0.form.nvars()
    }

    /// Dimension `n` of the ambient projective space.
    pub fn ambient_dim(&self) -> usize {
        self.nvars() - 1
    }

    /// `sigma = nvars * (d - 2)`.
    pub fn socle_degree(&self) -> usize {
        self.nvars() * (self.degree() - 2)
    }

    /// The ring this one was obtained from by `root_extension`, if any.
    pub fn base(&self) -> Option<&GradedQuotientRing<K>> {
        match &self.0.backend {
            Backend::Direct => None,
            Backend::Extension(b) => Some(b),
        }
    }

    /// True when the Jacobian ideal is generated by monomials, so all
    /// reductions are exact combinatorics.
    pub fn is_monomial(&self) -> bool {
        match &self.0.backend {
            Backend::Direct => self.0.partials.iter().all(Poly::is_monomial),
            Backend::Extension(b) => b.is_monomial(),
        }
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// `dim R_mu`; zero for `mu < 0`, and for `mu > sigma` when smooth.
    pub fn dim(&self, mu: i64) -> usize {
        if mu < 0 {
            return 0;
        }
        if mu as usize > self.socle_degree() && self.smoothness_certificate() {
            return 0;
        }
        self.piece(mu as usize).dim()
    }

    /// Standard monomials of degree `mu`, largest first.
    pub fn degree_basis(&self, mu: usize) -> Vec<ExponentVector> {
        self.piece(mu).basis.clone()
    }

    /// Smooth iff `R_{sigma+1} = 0`. `J` is generated in degree `d-1 >= 1`
    /// and `R` in degree 1, so this forces `R_mu = 0` for every `mu > sigma`.
    pub fn smoothness_certificate(&self) -> bool {
        *self
            .0
            .smooth
            .get_or_init(|| self.piece(self.socle_degree() + 1).dim() == 0)
    }

    /// The cached piece of degree `mu`, computing it on first use.
    pub fn piece(&self, mu: usize) -> Arc<DegreePiece<K>> {
        if let Some(p) = self.0.cache.read().expect("cache lock").get(&mu) {
            return Arc::clone(p);
        }
        let computed = Arc::new(self.compute_piece(mu));
        let mut cache = self.0.cache.write().expect("cache lock");
        Arc::clone(cache.entry(mu).or_insert(computed))
    }

    fn compute_piece(&self, mu: usize) -> DegreePiece<K> {
        match &self.0.backend {
            Backend::Direct => self.direct_piece(mu),
            Backend::Extension(base) => self.extension_piece(base, mu),
        }
    }

    fn direct_piece(&self, mu: usize) -> DegreePiece<K> {
        let field = self.field();
        let nvars = self.nvars();
        let d = self.degree();
        let monomials = monomials_of_degree(nvars, mu);
        let columns: HashMap<ExponentVector, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut rows: Vec<SparseRow<K::Elem>> = Vec::new();
        if mu + 1 >= d {
            let shifts = monomials_of_degree(nvars, mu + 1 - d);
            for partial in &self.0.partials {
                if partial.is_zero() {
                    continue;
                }
                for s in &shifts {
                    let mut row: SparseRow<K::Elem> = partial
                        .terms()
                        .map(|(m, c)| (columns[&m.mul(s)], c.clone()))
                        .collect();
                    row.sort_by_key(|(c, _)| *c);
                    rows.push(row);
                }
            }
        }
        let rref = field.rref_rows(monomials.len(), &rows);
        let mut is_pivot = vec![false; monomials.len()];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        let mut col_to_basis = vec![usize::MAX; monomials.len()];
        let mut basis = Vec::new();
        for (c, m) in monomials.iter().enumerate() {
            if !is_pivot[c] {
                col_to_basis[c] = basis.len();
                basis.push(m.clone());
            }
        }
        // Row p reads m_p + sum r_j m_j in J, so m_p = -sum r_j m_j in R.
        let mut reductions = HashMap::with_capacity(rref.pivots.len());
        for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
            let nf: SparseRow<K::Elem> = row
                .iter()
                .skip(1)
                .map(|(c, v)| (col_to_basis[*c], field.neg(v)))
                .collect();
            reductions.insert(monomials[p].clone(), nf);
        }
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        DegreePiece {
            degree: mu,
            basis,
            index,
            reducer: Reducer::Direct { reductions },
        }
    }

    fn extension_piece(&self, base: &GradedQuotientRing<K>, mu: usize) -> DegreePiece<K> {
        let d = self.degree();
        let top_e = (d - 2).min(mu);
        let mut entries: Vec<(ExponentVector, usize, usize)> = Vec::new();
        let mut base_pieces = Vec::new();
        for e in 0..=top_e {
            let bp = base.piece(mu - e);
            for (bi, m) in bp.basis.iter().enumerate() {
                entries.push((m.extend(e as u32), e, bi));
            }
            base_pieces.push(bp);
        }
        entries.sort_by(|a, b| b.0.cmp(&a.0));
        let mut layers: Vec<Layer<K>> = base_pieces
            .into_iter()
            .map(|bp| Layer {
                to_top: vec![0; bp.dim()],
                base_piece: bp,
            })
            .collect();
        let mut basis = Vec::with_capacity(entries.len());
        for (i, (m, e, bi)) in entries.into_iter().enumerate() {
            layers[e].to_top[bi] = i;
            basis.push(m);
        }
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        DegreePiece {
            degree: mu,
            basis,
            index,
            reducer: Reducer::Extension { layers },
        }
    }

    /// Normal form of a monomial of the piece's degree, as sparse coordinates.
    pub fn reduce_monomial(&self, piece: &DegreePiece<K>, m: &ExponentVector) -> SparseRow<K::Elem> {
        debug_assert_eq!(m.degree(), piece.degree);
        if let Some(i) = piece.position(m) {
            return vec![(i, self.field().one())];
        }
        match (&piece.reducer, &self.0.backend) {
            (Reducer::Direct { reductions }, _) => reductions.get(m).cloned().unwrap_or_default(),
            (Reducer::Extension { layers }, Backend::Extension(base)) => {
                let (rest, e) = m.split_last();
                let Some(layer) = layers.get(e as usize) else {
                    return Vec::new();
                };
                base.reduce_monomial(&layer.base_piece, &rest)
                    .into_iter()
                    .map(|(bi, c)| (layer.to_top[bi], c))
                    .collect()
            }
            (Reducer::Extension { .. }, Backend::Direct) => unreachable!("reducer matches backend"),
        }
    }

    fn check_poly(&self, poly: &Poly<K>) -> Result<usize, RingError> {
        if poly.nvars() != self.nvars() {
            return Err(RingError::VariableCount {
                expected: self.nvars(),
                found: poly.nvars(),
            });
        }
        Ok(poly.homogeneous_degree()?)
    }

    /// Class of a homogeneous polynomial in `R_mu`.
    pub fn normal_form(&self, poly: &Poly<K>) -> Result<Class<K>, RingError> {
        let mu = self.check_poly(poly)?;
        Ok(self.normal_form_in(poly, mu))
    }

    /// Class of `poly` in `R_mu`; `poly` must be homogeneous of degree `mu`
    /// or zero.
    pub fn normal_form_in(&self, poly: &Poly<K>, mu: usize) -> Class<K> {
        let field = self.field();
        let piece = self.piece(mu);
        let mut coords = vec![field.zero(); piece.dim()];
        for (m, c) in poly.terms() {
            for (i, v) in self.reduce_monomial(&piece, m) {
                field.mul_add_assign(&mut coords[i], c, &v);
            }
        }
        Class {
            ring_id: self.id(),
            degree: mu,
            coords,
        }
    }

    pub fn class(&self, mu: usize, coords: Vec<K::Elem>) -> Result<Class<K>, RingError> {
        let dim = self.piece(mu).dim();
        if coords.len() != dim {
            return Err(RingError::InvalidParameter(format!(
                "expected {dim} coordinates in degree {mu}, got {}",
                coords.len()
            )));
        }
        Ok(Class {
            ring_id: self.id(),
            degree: mu,
            coords,
        })
    }

    pub fn one(&self) -> Class<K> {
        let field = self.field();
        self.normal_form_in(
            &Poly::monomial(field.clone(), ExponentVector::one(self.nvars()), field.one()),
            0,
        )
    }

    /// Class of a single monomial.
    pub fn monomial_class(&self, m: &ExponentVector) -> Class<K> {
        let field = self.field();
        self.normal_form_in(&Poly::monomial(field.clone(), m.clone(), field.one()), m.degree())
    }

    /// Product `R_mu x R_nu -> R_{mu+nu}`.
    pub fn multiply(&self, a: &Class<K>, b: &Class<K>) -> Result<Class<K>, RingError> {
        if a.ring_id != self.id() || b.ring_id != self.id() {
            return Err(RingError::RingMismatch);
        }
        let coords = self.multiply_coords(a.degree, &a.coords, b.degree, &b.coords);
        Ok(Class {
            ring_id: self.id(),
            degree: a.degree + b.degree,
            coords,
        })
    }

    /// Coordinate-level product of elements of `R_mu` and `R_nu`.
    pub fn multiply_coords(
        &self,
        mu: usize,
        a: &[K::Elem],
        nu: usize,
        b: &[K::Elem],
    ) -> Vec<K::Elem> {
        let field = self.field();
        let pa = self.piece(mu);
        let pb = self.piece(nu);
        let target = self.piece(mu + nu);
        let mut out = vec![field.zero(); target.dim()];
        for (i, ca) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, cb) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let m = pa.basis[i].mul(&pb.basis[j]);
                let cab = field.mul(ca, cb);
                for (k, v) in self.reduce_monomial(&target, &m) {
                    field.mul_add_assign(&mut out[k], &cab, &v);
                }
            }
        }
        out
    }

    /// Matrix of multiplication by `a in R_mu` from `R_nu` to `R_{mu+nu}`,
    /// one sparse row per basis element of `R_nu`.
    pub fn multiplication_rows(&self, mu: usize, a: &[K::Elem], nu: usize) -> Vec<SparseRow<K::Elem>> {
        let field = self.field();
        let pa = self.piece(mu);
        let pb = self.piece(nu);
        let target = self.piece(mu + nu);
        let mut acc = vec![field.zero(); target.dim()];
        let support: Vec<(usize, &K::Elem)> =
            a.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        pb.basis
            .iter()
            .map(|mb| {
                for &(i, ca) in &support {
                    for (k, v) in self.reduce_monomial(&target, &pa.basis[i].mul(mb)) {
                        field.mul_add_assign(&mut acc[k], ca, &v);
                    }
                }
                acc.iter_mut()
                    .enumerate()
                    .filter_map(|(k, c)| {
                        let c = std::mem::replace(c, field.zero());
                        (!c.is_zero()).then_some((k, c))
                    })
                    .collect()
            })
            .collect()
    }

    /// Rank of the pairing `R_mu x R_{sigma-mu} -> R_sigma`.
    ///
    /// Row `a`, column `(b, s)` holds the `s`-th socle coordinate of `m_a m_b`;
    /// for smooth forms `R_sigma` is one-dimensional.
    pub fn macaulay_pairing_rank(&self, mu: i64) -> Result<usize, RingError> {
        let sigma = self.socle_degree();
        if mu < 0 || mu as usize > sigma {
            return Err(RingError::DegreeOutOfRange { mu, sigma });
        }
        let mu = mu as usize;
        let left = self.piece(mu);
        let right = self.piece(sigma - mu);
        let top = self.piece(sigma);
        let width = top.dim();
        let rows = left
            .basis
            .iter()
            .map(|a| {
                let mut row = Vec::new();
                for (j, b) in right.basis.iter().enumerate() {
                    for (s, v) in self.reduce_monomial(&top, &a.mul(b)) {
                        row.push((j * width + s, v));
                    }
                }
                row
            })
            .collect();
        let m = ExactMatrix::from_sparse_rows(self.field().clone(), right.dim() * width, rows);
        Ok(linalg::rank(&m))
    }

    /// Rank of the span of all products `R_mu * R_nu` inside `R_{mu+nu}`.
    pub fn product_span_rank(&self, mu: usize, nu: usize) -> usize {
        let left = self.piece(mu);
        let right = self.piece(nu);
        let target = self.piece(mu + nu);
        let rows: Vec<SparseRow<K::Elem>> = left
            .basis
            .iter()
            .flat_map(|a| right.basis.iter().map(move |b| a.mul(b)))
            .map(|m| {
                let mut row = self.reduce_monomial(&target, &m);
                row.sort_by_key(|(c, _)| *c);
                row
            })
            .collect();
        self.field().rank_rows(target.dim(), &rows)
    }

    /// The ring of `y^d + F`, with `y` appended as the last variable.
    pub fn root_extension(&self) -> Result<Self, RingError> {
        if !self.smoothness_certificate() {
            return Err(RingError::NotSmooth);
        }
        Ok(Self::build(
            self.0.form.add_root_variable(),
            Backend::Extension(self.clone()),
        ))
    }

    /// `dim R_mu` for `mu = 0..=sigma`.
    pub fn hilbert_function(&self) -> Vec<usize> {
        (0..=self.socle_degree() as i64).map(|mu| self.dim(mu)).collect()
    }
}

fn check_params(d: usize, nvars: usize) -> Result<(), RingError> {
    if d < 2 {
        return Err(RingError::InvalidParameter(format!("degree d = {d} < 2")));
    }
    if nvars < 2 {
        return Err(RingError::InvalidParameter(format!(
            "number of variables {nvars} < 2"
        )));
    }
    Ok(())
}

/// Coefficients of `((1 - t^{d-1}) / (1 - t))^nvars`, degrees `0..=nvars(d-2)`.
pub fn hilbert_series(d: usize, nvars: usize) -> Vec<usize> {
    let mut coeffs = vec![1usize];
    for _ in 0..nvars {
        let mut next = vec![0usize; coeffs.len() + d - 2];
        for (i, c) in coeffs.iter().enumerate() {
            for slot in &mut next[i..=i + d - 2] {
                *slot += c;
            }
        }
        coeffs = next;
    }
    coeffs
}
