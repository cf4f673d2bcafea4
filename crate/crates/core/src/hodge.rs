//! Hodge numbers from graded dimensions of Jacobian rings.
//!
//! Position `p` of a [`HodgeVector`] of weight `m` always holds `h^{m-p, p}`.

use thiserror::Error;

use crate::field::Field;
use crate::ring::{GradedQuotientRing, RingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HodgeError {
    #[error("the form is not smooth")]
    NotSmooth,
    #[error("eigenspace index {i} outside [1, {max}]")]
    EigenIndexOutOfRange { i: usize, max: usize },
    #[error("parameter violation: {0}")]
    Parameter(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeVector {
    pub m: usize,
    pub h: Vec<usize>,
    pub primitive: bool,
}

impl HodgeVector {
    pub fn is_palindromic(&self) -> bool {
        self.h.iter().eq(self.h.iter().rev())
    }

    pub fn total(&self) -> usize {
        self.h.iter().sum()
    }

    pub fn reversed(&self) -> HodgeVector {
        HodgeVector {
            m: self.m,
            h: self.h.iter().rev().copied().collect(),
            primitive: self.primitive,
        }
    }
}

/// An eigenspace index `1 <= i <= d-1` for the `Z/d` action on a cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct EigenIndex(usize);

impl EigenIndex {
    pub fn new(i: usize, d: usize) -> Result<Self, HodgeError> {
        if i == 0 || i >= d {
            return Err(HodgeError::EigenIndexOutOfRange { i, max: d.saturating_sub(1) });
        }
        Ok(EigenIndex(i))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// Full Hodge numbers `h[p][q]`, `0 <= p, q <= m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeDiamond {
    pub m: usize,
    pub h: Vec<Vec<usize>>,
}

impl HodgeDiamond {
    /// The middle row `(h^{m,0}, ..., h^{0,m})`.
    pub fn middle(&self) -> HodgeVector {
        HodgeVector {
            m: self.m,
            h: (0..=self.m).map(|q| self.h[self.m - q][q]).collect(),
            primitive: false,
        }
    }
}

fn require_smooth<K: Field>(ring: &GradedQuotientRing<K>) -> Result<(), HodgeError> {
    if ring.smoothness_certificate() {
        Ok(())
    } else {
        Err(HodgeError::NotSmooth)
    }
}

/// Primitive middle Hodge numbers of the hypersurface:
/// `h^{n-1-p, p}_prim = dim R_{(p+1)d - n - 1}`.
pub fn primitive_hodge<K: Field>(ring: &GradedQuotientRing<K>) -> Result<HodgeVector, HodgeError> {
    require_smooth(ring)?;
    let n = ring.ambient_dim() as i64;
    let d = ring.degree() as i64;
    let h = (0..n).map(|p| ring.dim((p + 1) * d - n - 1)).collect();
    Ok(HodgeVector {
        m: (n - 1) as usize,
        h,
        primitive: true,
    })
}

/// The full Hodge diamond: primitive middle part plus the classes of
/// projective space.
pub fn hodge_diamond<K: Field>(ring: &GradedQuotientRing<K>) -> Result<HodgeDiamond, HodgeError> {
    let prim = primitive_hodge(ring)?;
    let m = prim.m;
    let mut h = vec![vec![0; m + 1]; m + 1];
    for (p, row) in h.iter_mut().enumerate() {
        row[p] = 1;
    }
    for (q, &v) in prim.h.iter().enumerate() {
        h[m - q][q] = v + usize::from(m == 2 * q);
    }
    Ok(HodgeDiamond { m, h })
}

/// The `i`-eigenspace of the middle cohomology of the `d`-th root cover of
/// the base: `dim R_{(p+1)d - i - N - 1}` for `p = 0..=N`.
pub fn eigen_hodge<K: Field>(
    base: &GradedQuotientRing<K>,
    i: usize,
) -> Result<HodgeVector, HodgeError> {
    let d = base.degree();
    let i = EigenIndex::new(i, d)?.get() as i64;
    require_smooth(base)?;
    let big_n = base.ambient_dim() as i64;
    let d = d as i64;
    let h = (0..=big_n)
        .map(|p| base.dim((p + 1) * d - i - big_n - 1))
        .collect();
    Ok(HodgeVector {
        m: big_n as usize,
        h,
        primitive: true,
    })
}

/// Sum of all eigenspace vectors against the primitive vector of the cover.
pub fn eigen_sum_check<K: Field>(base: &GradedQuotientRing<K>) -> Result<bool, HodgeError> {
    let cover = base.root_extension()?;
    let prim = primitive_hodge(&cover)?;
    let mut sum = vec![0; prim.h.len()];
    for i in 1..base.degree() {
        for (s, v) in sum.iter_mut().zip(eigen_hodge(base, i)?.h) {
            *s += v;
        }
    }
    Ok(sum == prim.h)
}

/// Ranks `E^{n,0}_{d-n-1} , ..., E^{n,0}_1, E^{n-1,1}_{d-1}, ..., E^{n-1,1}_{n+1}`
/// of the first two Hodge bundles of the eigenspaces, in that order.
pub fn first_bundle_rank_chain<K: Field>(
    base: &GradedQuotientRing<K>,
) -> Result<Vec<usize>, HodgeError> {
    let d = base.degree();
    let n = base.ambient_dim();
    if d < n + 1 {
        return Err(HodgeError::Parameter(format!("need d >= n+1, got d={d}, n={n}")));
    }
    let mut chain = Vec::new();
    for i in (1..d - n).rev() {
        chain.push(eigen_hodge(base, i)?.h[0]);
    }
    for i in (n + 1..d).rev() {
        chain.push(eigen_hodge(base, i)?.h[1]);
    }
    Ok(chain)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop64Report {
    pub d: usize,
    pub n: usize,
    /// Full middle Hodge numbers of the second iterated cover, weight `n+1`.
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
    pub off_center_equal: bool,
    /// `max(lhs - rhs, 0)` at the center (0 when the weight is odd).
    pub residual_w: usize,
    /// `max(rhs - lhs, 0)` at the center.
    pub residual_wprime: usize,
}

/// Hodge-number form of the decomposition of the second iterated cover:
/// `H(Z_2) + W' = sum_i H(Z)_i (x) H^1(Sigma_d)_{d-i} + (d-1) H(X)(-1) + W`,
/// evaluated on Fermat rings.
pub fn prop64_check<K: Field>(d: usize, n: usize, field: K) -> Result<Prop64Report, HodgeError> {
    if n < 1 || d < n + 1 {
        return Err(HodgeError::Parameter(format!(
            "need d >= n+1 >= 2, got d={d}, n={n}"
        )));
    }
    let x = GradedQuotientRing::fermat(d, n + 1, field.clone())?;
    let z2 = x.root_extension()?.root_extension()?;
    let curve = GradedQuotientRing::fermat(d, 2, field)?;
    let lhs = hodge_diamond(&z2)?.middle().h;
    let mut rhs = vec![0usize; n + 2];
    for i in 1..d {
        let a = eigen_hodge(&x, i)?.h;
        let b = eigen_hodge(&curve, d - i)?.h;
        for (p, av) in a.iter().enumerate() {
            for (q, bv) in b.iter().enumerate() {
                rhs[p + q] += av * bv;
            }
        }
    }
    let twisted = hodge_diamond(&x)?.middle().h;
    for (p, v) in twisted.iter().enumerate() {
        rhs[p + 1] += (d - 1) * v;
    }
    let center = (n % 2 == 1).then_some((n + 1) / 2);
    let off_center_equal = (0..n + 2)
        .filter(|&p| Some(p) != center)
        .all(|p| lhs[p] == rhs[p]);
    let (residual_w, residual_wprime) = match center {
        Some(c) => (lhs[c].saturating_sub(rhs[c]), rhs[c].saturating_sub(lhs[c])),
        None => (0, 0),
    };
    Ok(Prop64Report {
        d,
        n,
        lhs,
        rhs,
        off_center_equal,
        residual_w,
        residual_wprime,
    })
}
