//! Lengths of the Griffiths-Yukawa coupling.
//!
//! `length(V, mu)` is the largest `k` with `V^k * R_mu != 0` in
//! `R_{mu + k d}`. It is computed by iterated spans `W_{k+1} = span(V * W_k)`
//! starting from `W_0 = R_mu`; in characteristic zero this span equals the
//! image of `S^k(V) (x) R_mu`, so symmetric powers are never built. Over a
//! prime field the same caveat as for any modular rank applies.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::field::Field;
use crate::poly::Form;
use crate::ring::{DegreeSubspace, GradedQuotientRing, RingError};

/// Retry budget used when a tower asks for a random smooth base.
pub const DEFAULT_MAX_TRIES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CouplingError {
    #[error("subspace lives in degree {found}, expected degree d = {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("eigenspace index {i} outside [1, {max}]")]
    EigenIndexOutOfRange { i: usize, max: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum BaseKind<K: Field> {
    Fermat,
    Random { seed: u64 },
    Explicit(Form<K>),
}

impl<K: Field> BaseKind<K> {
    pub fn describe(&self) -> String {
        match self {
            BaseKind::Fermat => "fermat".to_string(),
            BaseKind::Random { seed } => format!("random:{seed}"),
            BaseKind::Explicit(f) => format!("form:{f}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TowerSpec<K: Field> {
    pub d: usize,
    pub base_nvars: usize,
    pub levels: usize,
    pub base: BaseKind<K>,
}

/// The top ring of a tower and the image of the base's `R_d` in it.
#[derive(Debug, Clone)]
pub struct Tower<K: Field> {
    pub base: GradedQuotientRing<K>,
    pub ring: GradedQuotientRing<K>,
    pub v: DegreeSubspace<K>,
}

/// A length together with whether the standing hypothesis `d >= n+1` held.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthResult {
    pub length: usize,
    pub mu: i64,
    pub hypothesis_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingProfile {
    pub sigma: usize,
    /// `lengths[mu]` for `mu = 0..=sigma`.
    pub lengths: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub ell: usize,
    pub computed: usize,
    pub closed_form: usize,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem65Table {
    pub d: usize,
    pub n: usize,
    pub base: String,
    pub rows: Vec<TableRow>,
}

impl Theorem65Table {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }

    pub fn as_map(&self) -> BTreeMap<usize, usize> {
        self.rows.iter().map(|r| (r.ell, r.computed)).collect()
    }
}

/// `R_d` as a subspace of itself.
pub fn tangent_subspace_full<K: Field>(ring: &GradedQuotientRing<K>) -> DegreeSubspace<K> {
    DegreeSubspace::full(ring, ring.degree())
}

fn base_ring<K: Field>(spec: &TowerSpec<K>, field: K) -> Result<GradedQuotientRing<K>, RingError> {
    match &spec.base {
        BaseKind::Fermat => GradedQuotientRing::fermat(spec.d, spec.base_nvars, field),
        BaseKind::Random { seed } => GradedQuotientRing::random_smooth(
            spec.d,
            spec.base_nvars,
            field,
            *seed,
            DEFAULT_MAX_TRIES,
        ),
        BaseKind::Explicit(form) => {
            if form.degree() != spec.d || form.nvars() != spec.base_nvars {
                return Err(RingError::InvalidParameter(format!(
                    "form has degree {} in {} variables, tower expects {} in {}",
                    form.degree(),
                    form.nvars(),
                    spec.d,
                    spec.base_nvars
                )));
            }
            GradedQuotientRing::from_form(form.clone())
        }
    }
}

/// Builds the base, adjoins `levels` roots and carries the base's `R_d` up.
pub fn build_tower<K: Field>(spec: &TowerSpec<K>, field: K) -> Result<Tower<K>, CouplingError> {
    let base = base_ring(spec, field)?;
    if !base.smoothness_certificate() {
        return Err(RingError::NotSmooth.into());
    }
    tower_over(&base, spec)
}

fn check_v<K: Field>(ring: &GradedQuotientRing<K>, v: &DegreeSubspace<K>) -> Result<(), CouplingError> {
    if v.degree() != ring.degree() {
        return Err(CouplingError::DegreeMismatch {
            expected: ring.degree(),
            found: v.degree(),
        });
    }
    if !v.ring().same_ring(ring) {
        return Err(RingError::RingMismatch.into());
    }
    Ok(())
}

/// Largest `k` with `V^k * R_mu != 0`; 0 when `R_mu = 0` or `mu < 0`.
pub fn coupling_length<K: Field>(
    ring: &GradedQuotientRing<K>,
    v: &DegreeSubspace<K>,
    mu: i64,
) -> Result<usize, CouplingError> {
    check_v(ring, v)?;
    if mu < 0 || ring.dim(mu) == 0 || v.is_zero() {
        return Ok(0);
    }
    let sigma = ring.socle_degree() as i64;
    let mut w = DegreeSubspace::full(ring, mu as usize);
    let mut k = 0;
    while (w.degree() + ring.degree()) as i64 <= sigma {
        w = v.product(&w)?;
        if w.is_zero() {
            break;
        }
        k += 1;
    }
    Ok(k)
}

/// Length of the universal family with this fibre type, read at
/// `mu = d - n - 1`.
pub fn family_length<K: Field>(ring: &GradedQuotientRing<K>) -> Result<LengthResult, CouplingError> {
    if !ring.smoothness_certificate() {
        return Err(RingError::NotSmooth.into());
    }
    let d = ring.degree() as i64;
    let n = ring.ambient_dim() as i64;
    let mu = d - n - 1;
    let v = tangent_subspace_full(ring);
    Ok(LengthResult {
        length: coupling_length(ring, &v, mu)?,
        mu,
        hypothesis_holds: d >= n + 1,
    })
}

/// Length of the family of `d`-th root covers of the base, read on the
/// cover's ring at `mu = d - (n+1) - 1` with `n+1` the cover's ambient
/// dimension.
pub fn cover_family_length<K: Field>(
    base: &GradedQuotientRing<K>,
) -> Result<LengthResult, CouplingError> {
    if !base.smoothness_certificate() {
        return Err(RingError::NotSmooth.into());
    }
    let spec = TowerSpec {
        d: base.degree(),
        base_nvars: base.nvars(),
        levels: 1,
        base: BaseKind::Explicit(base.form().clone()),
    };
    let tower = tower_over(base, &spec)?;
    let d = base.degree() as i64;
    let n = base.ambient_dim() as i64;
    let mu = d - (n + 1) - 1;
    Ok(LengthResult {
        length: coupling_length(&tower.ring, &tower.v, mu)?,
        mu,
        hypothesis_holds: d >= n + 1,
    })
}

// Adjoins roots to an existing base, sharing its degree cache.
fn tower_over<K: Field>(
    base: &GradedQuotientRing<K>,
    spec: &TowerSpec<K>,
) -> Result<Tower<K>, CouplingError> {
    let mut ring = base.clone();
    for _ in 0..spec.levels {
        ring = ring.root_extension()?;
    }
    let classes: Vec<_> = base
        .degree_basis(spec.d)
        .iter()
        .map(|m| {
            let mut lifted = m.clone();
            for _ in 0..spec.levels {
                lifted = lifted.extend(0);
            }
            ring.monomial_class(&lifted)
        })
        .collect();
    let v = DegreeSubspace::from_classes(&ring, spec.d, &classes)?;
    Ok(Tower {
        base: base.clone(),
        ring,
        v,
    })
}

/// First degree of the `i`-eigenspace chain `mu = d - i - n - 1 (mod d)`
/// carrying a nonzero piece of `R`, if any.
pub fn eigenspace_start_degree<K: Field>(base: &GradedQuotientRing<K>, i: usize) -> Option<usize> {
    let d = base.degree() as i64;
    let n = base.ambient_dim() as i64;
    let sigma = base.socle_degree() as i64;
    let mut mu = (d - i as i64 - n - 1).rem_euclid(d);
    while mu <= sigma {
        if base.dim(mu) > 0 {
            return Some(mu as usize);
        }
        mu += d;
    }
    None
}

/// Coupling length on the `i`-eigenspace of the cover's middle cohomology.
pub fn eigenspace_coupling_length<K: Field>(
    base: &GradedQuotientRing<K>,
    i: usize,
) -> Result<usize, CouplingError> {
    let d = base.degree();
    if i == 0 || i >= d {
        return Err(CouplingError::EigenIndexOutOfRange { i, max: d - 1 });
    }
    if !base.smoothness_certificate() {
        return Err(RingError::NotSmooth.into());
    }
    match eigenspace_start_degree(base, i) {
        Some(mu) => coupling_length(base, &tangent_subspace_full(base), mu as i64),
        None => Ok(0),
    }
}

/// `length(V, mu)` for every `mu` in `[0, sigma]`.
pub fn coupling_profile<K: Field>(
    ring: &GradedQuotientRing<K>,
    v: &DegreeSubspace<K>,
) -> Result<CouplingProfile, CouplingError> {
    check_v(ring, v)?;
    let sigma = ring.socle_degree();
    let lengths = (0..=sigma)
        .into_par_iter()
        .map(|mu| coupling_length(ring, v, mu as i64))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CouplingProfile { sigma, lengths })
}

/// The closed-form length of the `ell`-fold tower over a base of degree `d`
/// in `P^{n-ell}`.
pub fn theorem65_closed_form(d: usize, n: usize, ell: usize) -> usize {
    if ell + d / 2 >= n + 1 {
        n - ell
    } else {
        n - ell - 1
    }
}

/// Lengths of the towers of `ell = 1..n-1` root covers over bases in
/// `P^{n-ell}`, against the closed form.
pub fn theorem65_table<K: Field>(
    d: usize,
    n: usize,
    base: BaseKind<K>,
    field: K,
) -> Result<Theorem65Table, CouplingError> {
    if n < 3 || d < n + 1 {
        return Err(CouplingError::Hypothesis(format!(
            "need n >= 3 and d >= n+1, got d={d}, n={n}"
        )));
    }
    let rows = (1..n)
        .into_par_iter()
        .map(|ell| {
            let spec = TowerSpec {
                d,
                base_nvars: n - ell + 1,
                levels: ell,
                base: base.clone(),
            };
            let tower = build_tower(&spec, field.clone())?;
            let computed = coupling_length(&tower.ring, &tower.v, (d - n - 1) as i64)?;
            let closed_form = theorem65_closed_form(d, n, ell);
            Ok(TableRow {
                ell,
                computed,
                closed_form,
                matches: computed == closed_form,
            })
        })
        .collect::<Result<Vec<_>, CouplingError>>()?;
    Ok(Theorem65Table {
        d,
        n,
        base: base.describe(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::ExponentVector;

    fn fermat(d: usize, nvars: usize) -> GradedQuotientRing<Rationals> {
        GradedQuotientRing::fermat(d, nvars, Rationals).unwrap()
    }

    fn tower(d: usize, base_nvars: usize, levels: usize) -> Tower<Rationals> {
        let spec = TowerSpec {
            d,
            base_nvars,
            levels,
            base: BaseKind::Fermat,
        };
        build_tower(&spec, Rationals).unwrap()
    }

    #[test]
    fn tangent_examples() {
        assert_eq!(tangent_subspace_full(&fermat(5, 5)).dim(), 101);
        let r = fermat(5, 2);
        let v = tangent_subspace_full(&r);
        assert_eq!(v.dim(), 2);
        assert_eq!(
            r.degree_basis(5),
            vec![ExponentVector::new(vec![3, 2]), ExponentVector::new(vec![2, 3])]
        );
        assert!(tangent_subspace_full(&fermat(2, 3)).is_zero());
    }

    #[test]
    fn tower_examples() {
        let t = tower(5, 2, 3);
        assert_eq!(t.ring.form(), fermat(5, 5).form());
        assert_eq!(t.v.dim(), 2);
        assert_eq!(tower(5, 3, 2).v.dim(), 12);
        let flat = tower(4, 3, 0);
        assert_eq!(flat.v.dim(), flat.ring.dim(4));
    }

    #[test]
    fn length_examples() {
        let r = fermat(5, 5);
        let v = tangent_subspace_full(&r);
        assert_eq!(coupling_length(&r, &v, 0).unwrap(), 3);
        assert_eq!(coupling_length(&r, &v, 15).unwrap(), 0);
        let t = tower(5, 2, 3);
        assert_eq!(coupling_length(&t.ring, &t.v, 0).unwrap(), 1);
        let wrong = DegreeSubspace::full(&r, 4);
        assert!(matches!(
            coupling_length(&r, &wrong, 0),
            Err(CouplingError::DegreeMismatch { expected: 5, found: 4 })
        ));
    }

    #[test]
    fn family_lengths() {
        assert_eq!(family_length(&fermat(4, 3)).unwrap().length, 1);
        assert_eq!(family_length(&fermat(3, 3)).unwrap().length, 1);
        let r = family_length(&fermat(3, 5)).unwrap();
        assert!(!r.hypothesis_holds);
    }

    #[test]
    fn cover_lengths() {
        assert_eq!(cover_family_length(&fermat(4, 2)).unwrap().length, 1);
    }

    #[test]
    fn profile_of_quintic() {
        let r = fermat(5, 5);
        let p = coupling_profile(&r, &tangent_subspace_full(&r)).unwrap();
        assert_eq!(p.lengths[0], 3);
        assert_eq!(p.lengths[15], 0);
        assert!(p.lengths.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn closed_form() {
        assert_eq!(
            (1..4).map(|l| theorem65_closed_form(5, 4, l)).collect::<Vec<_>>(),
            vec![2, 1, 1]
        );
        assert_eq!(
            (1..4).map(|l| theorem65_closed_form(8, 4, l)).collect::<Vec<_>>(),
            vec![3, 2, 1]
        );
        assert_eq!(
            (1..3).map(|l| theorem65_closed_form(4, 3, l)).collect::<Vec<_>>(),
            vec![1, 1]
        );
    }

    #[test]
    fn small_tables() {
        let t = theorem65_table(4, 3, BaseKind::Fermat, Rationals).unwrap();
        assert_eq!(t.as_map(), BTreeMap::from([(1, 1), (2, 1)]));
        assert!(t.all_match());
        let t = theorem65_table(5, 4, BaseKind::Fermat, PrimeField::default()).unwrap();
        assert_eq!(t.as_map(), BTreeMap::from([(1, 2), (2, 1), (3, 1)]));
        assert!(matches!(
            theorem65_table(3, 3, BaseKind::Fermat, Rationals),
            Err(CouplingError::Hypothesis(_))
        ));
    }

    #[test]
    fn eigenspace_lengths_small() {
        // Plane quartics: n = 2, d = 4 = n + 2, so only i = 1 and i = 3 are
        // outside the middle range.
        let base = fermat(4, 3);
        assert_eq!(eigenspace_coupling_length(&base, 1).unwrap(), 1);
        assert_eq!(eigenspace_coupling_length(&base, 3).unwrap(), 1);
        assert_eq!(eigenspace_coupling_length(&base, 2).unwrap(), 0);
        assert!(eigenspace_coupling_length(&base, 4).is_err());
    }
}
