//! Exponent vectors and graded-lexicographic enumeration.

use std::cmp::Ordering;
use std::fmt;

/// A monomial `x_0^{e_0} ... x_{n}^{e_n}`.
///
/// Ordering is graded lexicographic with `x0 > x1 > ...`: total degree first,
/// then the exponent of `x0`, then `x1`, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    exps: Vec<u32>,
}

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        ExponentVector { exps }
    }

    pub fn one(nvars: usize) -> Self {
        ExponentVector {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, i: usize, power: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = power;
        ExponentVector { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Total degree, always recomputed from the entries.
    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.nvars(), other.nvars());
        ExponentVector {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Appends a new last variable with the given exponent.
    pub fn extend(&self, e: u32) -> ExponentVector {
        let mut exps = self.exps.clone();
        exps.push(e);
        ExponentVector { exps }
    }

    /// Splits off the last variable: `(rest, exponent of last)`.
    pub fn split_last(&self) -> (ExponentVector, u32) {
        let (last, rest) = self.exps.split_last().expect("at least one variable");
        (ExponentVector { exps: rest.to_vec() }, *last)
    }

    /// Derivative with respect to variable `i`: `(coefficient, monomial)`,
    /// `None` if the variable does not occur.
    pub fn derivative(&self, i: usize) -> Option<(u32, ExponentVector)> {
        let e = self.exps[i];
        if e == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some((e, ExponentVector { exps }))
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of degree `deg` in `nvars` variables, largest first in
/// graded-lex order.
pub fn monomials_of_degree(nvars: usize, deg: usize) -> Vec<ExponentVector> {
    let mut out = Vec::with_capacity(count_monomials(nvars, deg));
    let mut cur = vec![0u32; nvars];
    fill(&mut out, &mut cur, 0, deg);
    out
}

fn fill(out: &mut Vec<ExponentVector>, cur: &mut Vec<u32>, pos: usize, left: usize) {
    if pos + 1 == cur.len() {
        cur[pos] = left as u32;
        out.push(ExponentVector::new(cur.clone()));
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e as u32;
        fill(out, cur, pos + 1, left - e);
    }
}

/// `binom(n, k)` in u128; 0 when `k > n`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of monomials of degree `deg` in `nvars` variables.
pub fn count_monomials(nvars: usize, deg: usize) -> usize {
    if nvars == 0 {
        return usize::from(deg == 0);
    }
    binomial(deg + nvars - 1, nvars - 1) as usize
}
