//! Polynomials with exact coefficients and homogeneous forms.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::field::Field;
use crate::monomial::ExponentVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("the form is zero")]
    Zero,
    #[error("inhomogeneous input: term '{first}' has degree {first_degree} but '{second}' has degree {second_degree}")]
    Inhomogeneous {
        first: String,
        first_degree: usize,
        second: String,
        second_degree: usize,
    },
    #[error("term '{term}' has {found} variables, expected {expected}")]
    VariableCount {
        term: String,
        expected: usize,
        found: usize,
    },
}

/// A polynomial in a fixed number of variables. Zero coefficients are never
/// stored.
#[derive(Debug, Clone)]
pub struct Poly<K: Field> {
    field: K,
    nvars: usize,
    terms: BTreeMap<ExponentVector, K::Elem>,
}

impl<K: Field> PartialEq for Poly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<K: Field> Poly<K> {
    pub fn zero(field: K, nvars: usize) -> Self {
        Poly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(field: K, m: ExponentVector, coeff: K::Elem) -> Self {
        let mut p = Poly::zero(field, m.nvars());
        p.add_term(m, coeff);
        p
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &K::Elem)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &ExponentVector) -> K::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: ExponentVector, coeff: K::Elem) {
        assert_eq!(m.nvars(), self.nvars, "variable count mismatch");
        if self.field.is_zero(&coeff) {
            return;
        }
        let field = &self.field;
        match self.terms.get_mut(&m) {
            Some(c) => {
                *c = field.add(c, &coeff);
                if field.is_zero(c) {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, coeff);
            }
        }
    }

    pub fn add(&self, other: &Poly<K>) -> Poly<K> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &K::Elem) -> Poly<K> {
        let mut out = Poly::zero(self.field.clone(), self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), self.field.mul(v, c));
        }
        out
    }

    pub fn mul(&self, other: &Poly<K>) -> Poly<K> {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.field.clone(), self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), self.field.mul(ca, cb));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &ExponentVector) -> Poly<K> {
        let mut out = Poly::zero(self.field.clone(), self.nvars);
        for (a, c) in &self.terms {
            out.terms.insert(a.mul(m), c.clone());
        }
        out
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> Poly<K> {
        let mut out = Poly::zero(self.field.clone(), self.nvars);
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derivative(i) {
                out.add_term(dm, self.field.mul(c, &self.field.from_i64(e as i64)));
            }
        }
        out
    }

    /// The same polynomial viewed in `extra` more (trailing) variables.
    pub fn embed(&self, extra: usize) -> Poly<K> {
        let mut out = Poly::zero(self.field.clone(), self.nvars + extra);
        for (m, c) in &self.terms {
            let mut exps = m.exps().to_vec();
            exps.resize(self.nvars + extra, 0);
            out.terms.insert(ExponentVector::new(exps), c.clone());
        }
        out
    }

    /// The common degree of all terms; errors name two offending terms.
    pub fn homogeneous_degree(&self) -> Result<usize, FormError> {
        let mut it = self.terms();
        let Some((first, fc)) = it.next() else {
            return Err(FormError::Zero);
        };
        let deg = first.degree();
        for (m, c) in it {
            if m.degree() != deg {
                return Err(FormError::Inhomogeneous {
                    first: term_string(first, fc),
                    first_degree: deg,
                    second: term_string(m, c),
                    second_degree: m.degree(),
                });
            }
        }
        Ok(deg)
    }

    /// True if the polynomial has exactly one term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
}

fn term_string<E: fmt::Display>(m: &ExponentVector, c: &E) -> String {
    format!("{c}*{m}")
}

impl<K: Field> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let one = self.field.one();
        let minus_one = self.field.neg(&one);
        for (k, (m, c)) in self.terms().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = *c == one || *c == minus_one;
            let is_const = m.degree() == 0;
            if !unit || is_const {
                write!(f, "{mag}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            if !is_const {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

/// A nonzero homogeneous polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct Form<K: Field> {
    poly: Poly<K>,
    degree: usize,
}

impl<K: Field> Form<K> {
    pub fn new(poly: Poly<K>) -> Result<Self, FormError> {
        let degree = poly.homogeneous_degree()?;
        Ok(Form { poly, degree })
    }

    /// `x_0^d + ... + x_{nvars-1}^d`
    pub fn fermat(field: K, d: usize, nvars: usize) -> Self {
        let mut p = Poly::zero(field.clone(), nvars);
        for i in 0..nvars {
            p.add_term(ExponentVector::var(nvars, i, d as u32), field.one());
        }
        Form { poly: p, degree: d }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn poly(&self) -> &Poly<K> {
        &self.poly
    }

    pub fn field(&self) -> &K {
        self.poly.field()
    }

    pub fn partials(&self) -> Vec<Poly<K>> {
        (0..self.nvars()).map(|i| self.poly.derivative(i)).collect()
    }

    /// `y^d + F` with `y` appended as the last variable.
    pub fn add_root_variable(&self) -> Form<K> {
        let mut p = self.poly.embed(1);
        let n = p.nvars();
        p.add_term(
            ExponentVector::var(n, n - 1, self.degree as u32),
            self.field().one(),
        );
        Form {
            poly: p,
            degree: self.degree,
        }
    }
}

impl<K: Field> fmt::Display for Form<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}
