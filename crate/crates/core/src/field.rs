//! Exact coefficient fields.
//!
//! Two fields are supported: the rationals (arbitrary precision) and a prime
//! field whose modulus is chosen at runtime. Because the modulus is a runtime
//! value, arithmetic goes through a field *context* (`K: Field`) rather than
//! operator overloading on the elements; the elements themselves only carry
//! the context-free `Zero`/`One` structure from `num-traits`.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::{self, Echelon, Rref, SparseRow};

/// Default modulus of the prime-field mode, 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Lower bound on admissible moduli.
pub const MIN_PRIME: u64 = 1 << 20;

/// Upper bound on admissible moduli (products are formed in `u128`).
pub const MAX_PRIME: u64 = 1 << 62;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the admissible range (2^20, 2^62)")]
    ModulusOutOfRange(u64),
    #[error("denominator of {0} is not invertible modulo {1}")]
    NonInvertibleDenominator(String, u64),
    #[error("invalid field descriptor '{0}' (expected 'rational' or 'prime:<p>')")]
    BadDescriptor(String),
}

/// Which field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldMode {
    Rational,
    Prime(u64),
}

impl FieldMode {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        PrimeField::new(p).map(|f| FieldMode::Prime(f.modulus()))
    }

    pub fn is_prime(&self) -> bool {
        matches!(self, FieldMode::Prime(_))
    }

    /// Parses `rational`, `prime` (default modulus) or `prime:<p>`.
    pub fn parse(text: &str) -> Result<Self, FieldError> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("rational") {
            return Ok(FieldMode::Rational);
        }
        if t.eq_ignore_ascii_case("prime") {
            return Ok(FieldMode::Prime(DEFAULT_PRIME));
        }
        if let Some(rest) = t.strip_prefix("prime:") {
            let p: u64 = rest
                .trim()
                .parse()
                .map_err(|_| FieldError::BadDescriptor(text.to_string()))?;
            return FieldMode::prime(p);
        }
        Err(FieldError::BadDescriptor(text.to_string()))
    }
}

impl Default for FieldMode {
    fn default() -> Self {
        FieldMode::Rational
    }
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::Rational => write!(f, "rational"),
            FieldMode::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

/// An exact field, used as an arithmetic context for its elements.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + Zero + One;

    fn mode(&self) -> FieldMode;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem, FieldError>;

    fn zero(&self) -> Self::Elem {
        Self::Elem::zero()
    }

    fn one(&self) -> Self::Elem {
        Self::Elem::one()
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, &self.mul(a, b));
    }

    /// `acc -= a * b`
    fn mul_sub_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        *acc = self.sub(acc, &self.mul(a, b));
    }

    /// Reduced row-echelon form of the matrix with the given sparse rows.
    fn rref_rows(&self, cols: usize, rows: &[SparseRow<Self::Elem>]) -> Rref<Self> {
        linalg::echelon::gauss_jordan(self, cols, rows)
    }

    /// Rank of the matrix with the given sparse rows.
    fn rank_rows(&self, cols: usize, rows: &[SparseRow<Self::Elem>]) -> usize {
        let mut ech = Echelon::new(self.clone(), cols);
        for row in rows {
            if ech.is_full() {
                break;
            }
            ech.insert_sparse(row);
        }
        ech.rank()
    }

    /// A cheap lower bound for the rank; exact unless overridden.
    fn rank_lower_bound(&self, cols: usize, rows: &[SparseRow<Self::Elem>]) -> usize {
        self.rank_rows(cols, rows)
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn mode(&self) -> FieldMode {
        FieldMode::Rational
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(&self, r: &BigRational) -> Result<BigRational, FieldError> {
        Ok(r.clone())
    }

    fn rref_rows(&self, cols: usize, rows: &[SparseRow<BigRational>]) -> Rref<Self> {
        linalg::lift::rational_rref(cols, rows)
            .unwrap_or_else(|| linalg::echelon::gauss_jordan(self, cols, rows))
    }

    // Full rank modulo a prime certifies full rank over Q.
    fn rank_rows(&self, cols: usize, rows: &[SparseRow<BigRational>]) -> usize {
        let lower = self.rank_lower_bound(cols, rows);
        if lower == rows.len().min(cols) {
            return lower;
        }
        self.rref_rows(cols, rows).rank()
    }

    fn rank_lower_bound(&self, cols: usize, rows: &[SparseRow<BigRational>]) -> usize {
        linalg::lift::modular_rank(cols, rows)
    }
}

/// The prime field `Z/pZ` with a runtime modulus. Elements are canonical
/// residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p <= MIN_PRIME || p >= MAX_PRIME {
            return Err(FieldError::ModulusOutOfRange(p));
        }
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Residue of a signed big integer.
    pub fn reduce(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = v.mod_floor(&m);
        r.to_u64().expect("residue fits in u64")
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn mode(&self) -> FieldMode {
        FieldMode::Prime(self.p)
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.p)
    }

    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }

    fn from_rational(&self, r: &BigRational) -> Result<u64, FieldError> {
        let num = self.reduce(r.numer());
        let den = self.reduce(r.denom());
        let inv = inv_mod(den, self.p)
            .ok_or_else(|| FieldError::NonInvertibleDenominator(r.to_string(), self.p))?;
        Ok(mul_mod(num, inv, self.p))
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Renders a rational coefficient the way the form grammar reads it back.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
