//! Recursive-descent parser for entry expressions.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := factor ("*"? factor)*
//! factor   := "-" factor | atom ("^" uint)?
//! atom     := rational | ident | "(" expr ")"
//! rational := int ("/" uint)?
//! ```
//!
//! Juxtaposition is accepted only between a leading rational and an
//! identifier (`2a`, `-3/4b`). `lambda` is the spectral variable, `x<k>` the
//! companion variable `x_k` with `1 <= k <= order`; any other identifier is a
//! parameter.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Position, Result};
use crate::poly::{Indeterminate, Polynomial, Rational};

/// Parses an entry expression for a matrix of the given order.
pub fn parse_expr(text: &str, order: usize) -> Result<Polynomial> {
    parse_expr_at(text, order, 1, 1)
}

/// Like [`parse_expr`], reporting positions relative to `(line, column)`.
pub fn parse_expr_at(text: &str, order: usize, line: usize, column: usize) -> Result<Polynomial> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        order,
        line,
        column,
    };
    parser.skip_ws();
    if parser.at_end() {
        return Err(parser.error("empty expression"));
    }
    let value = parser.expr()?;
    parser.skip_ws();
    if !parser.at_end() {
        return Err(parser.error(format!("unexpected '{}'", parser.peek_char())));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    order: usize,
    line: usize,
    column: usize,
}

enum Factor {
    /// A bare (possibly negated) rational literal with no exponent; the only
    /// factor that may be followed by an identifier without `*`.
    Literal(Polynomial),
    Other(Polynomial),
}

impl Factor {
    fn into_poly(self) -> Polynomial {
        match self {
            Factor::Literal(p) | Factor::Other(p) => p,
        }
    }
}

impl<'a> Parser<'a> {
    fn position(&self) -> Position {
        Position {
            line: self.line,
            column: self.column + self.pos,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.position(),
            message: message.into(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .unwrap_or('?')
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\r' | b'\n')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, byte: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let first = self.factor()?;
        let mut juxtapose_ok = matches!(first, Factor::Literal(_));
        let mut acc = first.into_poly();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?.into_poly();
                }
                Some(c) if c.is_ascii_alphabetic() && juxtapose_ok => {
                    acc = &acc * &self.factor()?.into_poly();
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {
                    return Err(self
                        .error("implicit multiplication is only allowed after a leading number"));
                }
                _ => return Ok(acc),
            }
            juxtapose_ok = false;
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        self.skip_ws();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(match self.factor()? {
                Factor::Literal(p) => Factor::Literal(-p),
                Factor::Other(p) => Factor::Other(-p),
            });
        }
        let (atom, is_literal) = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let exp = self.uint()?;
            let exp = u32::try_from(exp).map_err(|_| self.error("exponent too large"))?;
            return Ok(Factor::Other(atom.pow(exp)));
        }
        Ok(if is_literal {
            Factor::Literal(atom)
        } else {
            Factor::Other(atom)
        })
    }

    fn atom(&mut self) -> Result<(Polynomial, bool)> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok((inner, false))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.uint()?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    Ok((Polynomial::constant(Rational::new(num, den)), true))
                } else {
                    self.pos = save;
                    Ok((Polynomial::constant(Rational::from_integer(num)), true))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => Ok((self.ident()?, false)),
            Some(_) => Err(self.error(format!("unexpected '{}'", self.peek_char()))),
            None => Err(self.error("unexpected end of expression")),
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an unsigned integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("ascii digits"))
    }

    fn ident(&mut self) -> Result<Polynomial> {
        let start = self.pos;
        let start_position = self.position();
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        if name == "lambda" {
            return Ok(Polynomial::lambda());
        }
        if let Some(digits) = name.strip_prefix('x') {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                let index: u64 = digits.parse().unwrap_or(u64::MAX);
                if index == 0 || index > self.order as u64 {
                    return Err(Error::VariableOutOfRange {
                        index,
                        order: self.order,
                        position: start_position,
                    });
                }
                return Ok(Polynomial::x(index as u32));
            }
        }
        Ok(Polynomial::var(Indeterminate::param(name)))
    }
}
