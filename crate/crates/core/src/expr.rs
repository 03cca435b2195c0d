//! Recursive-descent parser for polynomial expressions in `x` and `y`.
//!
//! Grammar:
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := '-'? atom ('^' natural)?
//! atom     := rational | 'x' | 'y' | '(' expr ')'
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Whitespace is insignificant. There is no implicit multiplication ("x*y",
//! never "xy") and no decimal literals, only rationals, so parsing is exact
//! end-to-end. Every error carries the byte offset it was detected at.
//!
//! Expressions are expanded exactly (no truncation during evaluation), then
//! checked against the target order, so `x^5 - x^5` is fine at order 4 while
//! `x^5` is a `DegreeOverflow`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::coeff::Coeff;
use crate::jet::{Exp, Jet2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("expression degree {degree} exceeds truncation order {order}")]
    DegreeOverflow { degree: u32, order: u32 },
    #[error("division by zero in rational literal at byte {offset}")]
    DivisionByZeroLiteral { offset: usize },
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::SyntaxError { .. } => "SyntaxError",
            ParseError::DegreeOverflow { .. } => "DegreeOverflow",
            ParseError::DivisionByZeroLiteral { .. } => "DivisionByZeroLiteral",
        }
    }
}

/// Parse `text` into a canonical [`Jet2`] of the given truncation order.
pub fn parse_expr(text: &str, order: u32) -> Result<Jet2, ParseError> {
    if !text.is_ascii() {
        return Err(ParseError::SyntaxError {
            offset: text
                .char_indices()
                .find(|(_, c)| !c.is_ascii())
                .map(|(i, _)| i)
                .unwrap_or(0),
            message: "non-ASCII input".into(),
        });
    }
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let poly = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.bytes.len() {
        return Err(parser.err("unexpected trailing input"));
    }
    let degree = poly.keys().map(|(i, j)| i + j).max().unwrap_or(0);
    if degree > order {
        return Err(ParseError::DegreeOverflow { degree, order });
    }
    Ok(Jet2::from_coeffs(order, poly).expect("degree checked"))
}

/// Exact polynomial with no degree bound, used only during parsing.
type Poly = BTreeMap<Exp, Coeff>;

fn poly_const(c: Coeff) -> Poly {
    let mut p = Poly::new();
    if !c.is_zero() {
        p.insert((0, 0), c);
    }
    p
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (exp, c) in b {
        let entry = out.entry(*exp).or_insert_with(Coeff::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            out.remove(exp);
        }
    }
    out
}

fn poly_neg(a: &Poly) -> Poly {
    a.iter().map(|(e, c)| (*e, -c)).collect()
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for ((i1, j1), c1) in a {
        for ((i2, j2), c2) in b {
            let exp = (i1 + i2, j1 + j2);
            let entry = out.entry(exp).or_insert_with(Coeff::zero);
            *entry = &*entry + &(c1 * c2);
            if entry.is_zero() {
                out.remove(&exp);
            }
        }
    }
    out
}

fn poly_pow(a: &Poly, k: u32) -> Poly {
    let mut out = poly_const(Coeff::one());
    for _ in 0..k {
        out = poly_mul(&out, a);
    }
    out
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> ParseError {
        ParseError::SyntaxError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' {
                poly_add(&acc, &rhs)
            } else {
                poly_add(&acc, &poly_neg(&rhs))
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = poly_mul(&acc, &self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let negate = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let base = self.atom()?;
        let value = if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.natural()?;
            poly_pow(&base, exp)
        } else {
            base
        };
        Ok(if negate { poly_neg(&value) } else { value })
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let mut p = Poly::new();
                p.insert((1, 0), Coeff::one());
                Ok(p)
            }
            Some(b'y') => {
                self.pos += 1;
                let mut p = Poly::new();
                p.insert((0, 1), Coeff::one());
                Ok(p)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    Err(self.err("expected ')'"))
                }
            }
            Some(b) if b.is_ascii_digit() => self.rational(),
            Some(_) => Err(self.err("expected a number, 'x', 'y', or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn rational(&mut self) -> Result<Poly, ParseError> {
        let numer = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let denom_offset = {
                self.skip_ws();
                self.pos
            };
            let denom = self.integer()?;
            if denom == 0 {
                return Err(ParseError::DivisionByZeroLiteral {
                    offset: denom_offset,
                });
            }
            Ok(poly_const(Coeff::ratio(numer, denom)))
        } else {
            Ok(poly_const(Coeff::from_int(numer)))
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a digit"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse::<i64>()
            .map_err(|_| ParseError::SyntaxError {
                offset: start,
                message: "integer literal too large".into(),
            })
    }

    fn natural(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an exponent"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse::<u32>()
            .map_err(|_| ParseError::SyntaxError {
                offset: start,
                message: "exponent too large".into(),
            })
    }
}
