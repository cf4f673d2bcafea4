//! Text syntax for forms.
//!
//! ```text
//! form        = term (('+' | '-') term)*
//! term        = [sign] [coefficient ['*']] factor ('*' factor)*
//! coefficient = integer ['/' integer]
//! factor      = 'x' index ['^' exponent]
//! ```
//!
//! Whitespace is ignored. Variables are `x0, x1, ...`; the number of variables
//! is one more than the largest index used.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::monomial::ExponentVector;
use crate::poly::{Form, FormError, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable '{name}' at offset {offset} (variables are x0, x1, ...)")]
    UnknownVariable { name: String, offset: usize },
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            text,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or(self.text.len(), |(i, _)| *i)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        (!s.is_empty()).then_some(s)
    }
}

struct RawTerm {
    coeff: BigRational,
    factors: Vec<(usize, u32)>,
}

/// Parses a homogeneous form; coefficients are mapped into `field`.
pub fn parse_form<K: Field>(text: &str, field: K) -> Result<Form<K>, ParseError> {
    let mut cur = Cursor::new(text);
    if cur.peek().is_none() {
        return Err(cur.error("empty input"));
    }
    let mut raw = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let mut negative = false;
        if cur.eat('+') {
        } else if cur.eat('-') {
            negative = true;
        } else if !first {
            return Err(cur.error("expected '+' or '-' between terms"));
        }
        // An optional signed coefficient may follow the separator.
        if cur.eat('-') {
            negative = !negative;
        } else {
            cur.eat('+');
        }
        raw.push(parse_term(&mut cur, negative)?);
        first = false;
    }
    let nvars = raw
        .iter()
        .flat_map(|t| t.factors.iter().map(|(v, _)| v + 1))
        .max()
        .unwrap_or(0);
    let mut poly = Poly::zero(field.clone(), nvars);
    for t in raw {
        let mut exps = vec![0u32; nvars];
        for (v, e) in t.factors {
            exps[v] += e;
        }
        poly.add_term(ExponentVector::new(exps), field.from_rational(&t.coeff)?);
    }
    Ok(Form::new(poly)?)
}

fn parse_term(cur: &mut Cursor<'_>, negative: bool) -> Result<RawTerm, ParseError> {
    let mut coeff = BigRational::one();
    if let Some(num) = cur.digits() {
        let n: BigInt = num.parse().expect("digits");
        let mut c = BigRational::from_integer(n);
        if cur.eat('/') {
            let den = cur
                .digits()
                .ok_or_else(|| cur.error("expected denominator after '/'"))?;
            let d: BigInt = den.parse().expect("digits");
            if d.is_zero() {
                return Err(cur.error("zero denominator"));
            }
            c /= BigRational::from_integer(d);
        }
        coeff = c;
        cur.eat('*');
    }
    if negative {
        coeff = -coeff;
    }
    let mut factors = vec![parse_factor(cur)?];
    while cur.eat('*') {
        factors.push(parse_factor(cur)?);
    }
    Ok(RawTerm { coeff, factors })
}

fn parse_factor(cur: &mut Cursor<'_>) -> Result<(usize, u32), ParseError> {
    let offset = cur.offset();
    match cur.peek() {
        Some('x') => {
            cur.bump();
            let idx = cur
                .digits()
                .ok_or_else(|| cur.error("expected variable index after 'x'"))?;
            let var: usize = idx
                .parse()
                .map_err(|_| cur.error("variable index too large"))?;
            let mut exp = 1u32;
            if cur.eat('^') {
                let e = cur
                    .digits()
                    .ok_or_else(|| cur.error("expected exponent after '^'"))?;
                exp = e.parse().map_err(|_| cur.error("exponent too large"))?;
            }
            Ok((var, exp))
        }
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {
            let mut name = String::new();
            while let Some(c) = cur.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
                name.push(c);
                cur.bump();
            }
            Err(ParseError::UnknownVariable { name, offset })
        }
        Some(c) => Err(cur.error(format!("unexpected character '{c}'"))),
        None => Err(cur.error("unexpected end of input")),
    }
}
