//! Rational reduced row-echelon form by p-adic lifting.
//!
//! Rows are scaled to integers and eliminated modulo a word-size prime to
//! select pivot columns and an independent set of rows. The pivot block is
//! inverted once modulo `p`, the remaining columns are lifted p-adically
//! (Dixon), and the entries are recovered by rational reconstruction. The
//! candidate is then checked exactly against *every* input row; the result is
//! accepted only if it is in reduced echelon form and spans all rows. Since
//! rank over Q is at least the rank modulo `p`, an accepted candidate is the
//! unique rational rref. Unlucky primes fail the check and the next prime is
//! tried.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{inv_mod, is_prime_u64, Field, PrimeField, Rationals};

use super::{echelon::Echelon, Rref, SparseRow};

/// Entries larger than this (after clearing denominators) use plain elimination.
const MAX_ENTRY_BITS: u64 = 40;

const MAX_PRIMES: usize = 6;

pub(crate) fn rational_rref(cols: usize, rows: &[SparseRow<BigRational>]) -> Option<Rref<Rationals>> {
    if rows.is_empty() || cols == 0 {
        return None;
    }
    let nnz: usize = rows.iter().map(Vec::len).sum();
    // Monomial-like and tiny inputs are cheaper by direct elimination.
    if nnz <= 2 * rows.len() || rows.len().min(cols) <= 6 {
        return None;
    }
    let int_rows = integer_rows(rows)?;
    let mut candidate = (1u64 << 31) - 1;
    for _ in 0..MAX_PRIMES {
        while !is_prime_u64(candidate) {
            candidate -= 2;
        }
        let p = candidate;
        candidate -= 2;
        if let Some(r) = attempt(cols, &int_rows, p) {
            return Some(r);
        }
    }
    None
}

/// Rank modulo the first prime (near 2^31) at which every denominator is a
/// unit; never exceeds the rank over Q. Returns 0 if no such prime is found.
pub(crate) fn modular_rank(cols: usize, rows: &[SparseRow<BigRational>]) -> usize {
    let mut candidate = (1u64 << 31) - 1;
    'primes: for _ in 0..MAX_PRIMES {
        while !is_prime_u64(candidate) {
            candidate -= 2;
        }
        let field = PrimeField::new(candidate).expect("prime in range");
        candidate -= 2;
        let mut reduced = Vec::with_capacity(rows.len());
        for row in rows {
            let mut out = Vec::with_capacity(row.len());
            for (c, v) in row {
                let den = field.reduce(v.denom());
                if den == 0 {
                    continue 'primes;
                }
                let num = field.reduce(v.numer());
                let e = field.mul(&num, &field.inv(&den).expect("unit"));
                if e != 0 {
                    out.push((*c, e));
                }
            }
            reduced.push(out);
        }
        return field.rank_rows(cols, &reduced);
    }
    0
}

fn integer_rows(rows: &[SparseRow<BigRational>]) -> Option<Vec<Vec<(usize, i64)>>> {
    let limit = BigInt::from(1u64 << MAX_ENTRY_BITS);
    rows.iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            row.iter()
                .map(|(c, v)| {
                    let scaled = v.numer() * (&lcm / v.denom());
                    if scaled.abs() >= limit {
                        None
                    } else {
                        scaled.to_i64().map(|x| (*c, x))
                    }
                })
                .collect()
        })
        .collect()
}

fn attempt(cols: usize, rows: &[Vec<(usize, i64)>], p: u64) -> Option<Rref<Rationals>> {
    let field = PrimeField::new(p).ok()?;
    let mut ech = Echelon::new(field, cols);
    let mut chosen = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if ech.is_full() {
            break;
        }
        let modrow: SparseRow<u64> = row
            .iter()
            .map(|(c, v)| (*c, field.from_i64(*v)))
            .filter(|(_, v)| *v != 0)
            .collect();
        if ech.insert_sparse(&modrow) {
            chosen.push(i);
        }
    }
    let pivots = ech.pivots();
    let r = pivots.len();
    if r == 0 {
        // Every row vanishes mod p; only trust this if they vanish over Q.
        return rows
            .iter()
            .all(|row| row.is_empty())
            .then(|| Rref { cols, rows: Vec::new(), pivots });
    }
    if r == cols {
        // Full column rank mod p implies full column rank over Q.
        return Some(identity_rref(cols));
    }
    let mut pivot_pos = vec![usize::MAX; cols];
    for (t, &c) in pivots.iter().enumerate() {
        pivot_pos[c] = t;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| pivot_pos[c] == usize::MAX).collect();
    let mut free_pos = vec![usize::MAX; cols];
    for (k, &c) in free.iter().enumerate() {
        free_pos[c] = k;
    }
    let f = free.len();

    // Pivot block A_P (r x r) and free block A_F (r x f) of the chosen rows.
    let mut a_p = vec![0i64; r * r];
    let mut a_f = vec![0i64; r * f];
    for (t, &ri) in chosen.iter().enumerate() {
        for &(c, v) in &rows[ri] {
            if pivot_pos[c] != usize::MAX {
                a_p[t * r + pivot_pos[c]] = v;
            } else {
                a_f[t * f + free_pos[c]] = v;
            }
        }
    }
    let inv = invert_mod(&a_p, r, p)?;

    // |N|, |D| <= H (Hadamard bound of the chosen rows); need p^k > 2 H^2.
    let log2_h: f64 = chosen
        .iter()
        .map(|&ri| {
            let s: f64 = rows[ri].iter().map(|(_, v)| (*v as f64) * (*v as f64)).sum();
            0.5 * s.log2()
        })
        .sum();
    let log2_p = (p as f64).log2();
    let max_steps = ((2.0 * log2_h + 2.0) / log2_p).ceil() as usize + 2;

    // Solve A_P X = A_F by lifting; X = sum_k x_k p^k.
    let mut residual: Vec<i128> = a_f.iter().map(|&v| v as i128).collect();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); r * f];
    let mut p_pow = BigInt::one();
    let p_big = BigInt::from(p);
    let mut x = vec![0u64; r * f];
    let mut next_check = 4usize;
    for step in 1..=max_steps {
        // x = inv * (residual mod p)
        let res_mod: Vec<u64> = residual
            .iter()
            .map(|&v| v.rem_euclid(p as i128) as u64)
            .collect();
        for i in 0..r {
            for j in 0..f {
                let mut s: u128 = 0;
                for k in 0..r {
                    s += inv[i * r + k] as u128 * res_mod[k * f + j] as u128;
                    if k % 16 == 15 {
                        s %= p as u128;
                    }
                }
                x[i * f + j] = (s % p as u128) as u64;
            }
        }
        // residual = (residual - A_P x) / p
        for i in 0..r {
            for j in 0..f {
                let mut s: i128 = residual[i * f + j];
                for k in 0..r {
                    let a = a_p[i * r + k];
                    if a != 0 {
                        s -= a as i128 * x[k * f + j] as i128;
                    }
                }
                debug_assert_eq!(s.rem_euclid(p as i128), 0);
                residual[i * f + j] = s / p as i128;
            }
        }
        for (a, &xv) in acc.iter_mut().zip(&x) {
            if xv != 0 {
                *a += &p_pow * xv;
            }
        }
        p_pow *= &p_big;

        if step == next_check || step == max_steps {
            next_check = (next_check * 3) / 2 + 1;
            let bound = log2_h;
            if let Some(sol) = reconstruct(&acc, &p_pow, bound) {
                if let Some(rref) = verify_and_build(cols, rows, &pivots, &pivot_pos, &free, &free_pos, r, f, &sol) {
                    return Some(rref);
                }
            }
        }
    }
    None
}

fn identity_rref(cols: usize) -> Rref<Rationals> {
    Rref {
        cols,
        rows: (0..cols)
            .map(|c| vec![(c, BigRational::one())])
            .collect(),
        pivots: (0..cols).collect(),
    }
}

/// Dense inverse modulo `p` by Gauss-Jordan; `None` if singular.
fn invert_mod(a: &[i64], n: usize, p: u64) -> Option<Vec<u64>> {
    let w = 2 * n;
    let mut m = vec![0u64; n * w];
    for i in 0..n {
        for j in 0..n {
            m[i * w + j] = (a[i * n + j] as i128).rem_euclid(p as i128) as u64;
        }
        m[i * w + n + i] = 1;
    }
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r * w + col] != 0)?;
        if piv != col {
            for j in 0..w {
                m.swap(piv * w + j, col * w + j);
            }
        }
        let inv = inv_mod(m[col * w + col], p)?;
        for j in 0..w {
            m[col * w + j] = ((m[col * w + j] as u128 * inv as u128) % p as u128) as u64;
        }
        let pivot_row: Vec<u64> = m[col * w..col * w + w].to_vec();
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = m[r * w + col];
            if factor == 0 {
                continue;
            }
            let neg = p - factor;
            for j in 0..w {
                if pivot_row[j] != 0 {
                    let cur = m[r * w + j] as u128 + neg as u128 * pivot_row[j] as u128;
                    m[r * w + j] = (cur % p as u128) as u64;
                }
            }
        }
    }
    let mut inv = vec![0u64; n * n];
    for i in 0..n {
        inv[i * n..i * n + n].copy_from_slice(&m[i * w + n..i * w + w]);
    }
    Some(inv)
}

/// Solution with a common denominator: `X = numer / denom`.
struct Solution {
    numer: Vec<BigInt>,
    denom: BigInt,
}

/// Rational reconstruction of every entry modulo `modulus`, sharing a running
/// common denominator. `log2_h` bounds the true numerators and denominators.
fn reconstruct(residues: &[BigInt], modulus: &BigInt, log2_h: f64) -> Option<Solution> {
    let half = modulus >> 1usize;
    let bound = (modulus >> 1usize).sqrt();
    let mut denom = BigInt::one();
    let mut fracs: Vec<(BigInt, BigInt)> = Vec::with_capacity(residues.len());
    let mod_bits = modulus.bits() as f64;
    for u in residues {
        // Try the running denominator first.
        let mut c = (u * &denom).mod_floor(modulus);
        if c > half {
            c -= modulus;
        }
        // Accept only when the candidate is provably the unique fraction of
        // its size: |c| H + H denom < modulus.
        let c_bits = c.bits() as f64;
        let d_bits = denom.bits() as f64;
        if c_bits.max(d_bits) + log2_h + 1.0 < mod_bits {
            fracs.push((c, denom.clone()));
            continue;
        }
        let (n, d) = rat_recon(u, modulus, &bound)?;
        let g = d.gcd(&denom);
        let scale = &d / &g;
        if !scale.is_one() {
            denom *= &scale;
        }
        fracs.push((n, d));
    }
    let numer = fracs
        .into_iter()
        .map(|(n, d)| n * (&denom / d))
        .collect();
    Some(Solution { numer, denom })
}

fn rat_recon(u: &BigInt, m: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

#[allow(clippy::too_many_arguments)]
fn verify_and_build(
    cols: usize,
    rows: &[Vec<(usize, i64)>],
    pivots: &[usize],
    pivot_pos: &[usize],
    free: &[usize],
    free_pos: &[usize],
    r: usize,
    f: usize,
    sol: &Solution,
) -> Option<Rref<Rationals>> {
    // Reduced echelon shape: no entry left of a row's pivot.
    for (t, &pc) in pivots.iter().enumerate() {
        for (k, &fc) in free.iter().enumerate() {
            if fc > pc {
                break;
            }
            if !sol.numer[t * f + k].is_zero() {
                return None;
            }
        }
    }
    // Every input row must equal its pivot-part combination of candidate rows:
    // denom * a_F == a_P * numer.
    let mut lhs = vec![BigInt::zero(); f];
    for row in rows {
        for v in lhs.iter_mut() {
            v.set_zero();
        }
        for &(c, a) in row {
            let t = pivot_pos[c];
            if t == usize::MAX {
                lhs[free_pos[c]] -= &sol.denom * a;
            } else {
                for (k, slot) in lhs.iter_mut().enumerate() {
                    let n = &sol.numer[t * f + k];
                    if !n.is_zero() {
                        *slot += n * a;
                    }
                }
            }
        }
        if lhs.iter().any(|v| !v.is_zero()) {
            return None;
        }
    }
    let mut out = Vec::with_capacity(r);
    for (t, &pc) in pivots.iter().enumerate() {
        let mut row = vec![(pc, BigRational::one())];
        for (k, &fc) in free.iter().enumerate() {
            let n = &sol.numer[t * f + k];
            if fc > pc && !n.is_zero() {
                row.push((fc, BigRational::new(n.clone(), sol.denom.clone())));
            }
        }
        row.sort_by_key(|(c, _)| *c);
        out.push(row);
    }
    Some(Rref {
        cols,
        rows: out,
        pivots: pivots.to_vec(),
    })
}
