//! Recursive-descent parser for rational functions of `s`.
//!
//! ```text
//! expression := term (('+' | '-') term)*
//! term       := factor (('*' | '/') factor)*
//! factor     := ('+' | '-') factor | base ('^' unsigned-integer)?
//! base       := 's' | integer | '(' expression ')'
//! ```
//!
//! `3/4` is the rational literal three quarters, read as a division.

use thiserror::Error;
use twodof_core::polyalg::{Poly, RatFn};
use twodof_core::Rational;

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at column {column}")]
pub struct ParseError {
    /// 1-based character column in the parsed text.
    pub column: usize,
    pub message: String,
}

pub fn parse_rational(text: &str) -> Result<RatFn, ParseError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let value = p.expression()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(value)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: &str) -> ParseError {
        ParseError { column: self.pos + 1, message: message.to_string() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expression(&mut self) -> Result<RatFn, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFn, ParseError> {
        let mut acc = self.factor()?;
        while let Some(op @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.factor()?;
            if op == '*' {
                acc = &acc * &rhs;
            } else {
                if rhs.is_zero() {
                    return Err(ParseError { column: at + 1, message: "division by zero".into() });
                }
                acc = acc.checked_div(&rhs).map_err(|e| ParseError { column: at + 1, message: e.to_string() })?;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFn, ParseError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some('+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.base()?;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    self.skip_ws();
                    let k = self.exponent()?;
                    Ok(base.pow(k as usize))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected an unsigned integer exponent"));
        }
        match digits.parse::<u32>() {
            Ok(k) if k <= MAX_EXPONENT => Ok(k),
            _ => Err(ParseError { column: start + 1, message: format!("exponent exceeds {MAX_EXPONENT}") }),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn base(&mut self) -> Result<RatFn, ParseError> {
        match self.peek() {
            Some('s') => {
                self.pos += 1;
                Ok(RatFn::from_poly(Poly::s()))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expression()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: num_bigint::BigInt = digits.parse().expect("ascii digits");
                Ok(RatFn::constant(Rational::from_integer(n)))
            }
            Some(c) => Err(self.error(&format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses a constant; rejects anything depending on `s`.
pub fn parse_constant(text: &str) -> Result<Rational, ParseError> {
    let r = parse_rational(text)?;
    r.as_constant().ok_or(ParseError { column: 1, message: format!("'{}' is not a constant", text.trim()) })
}

/// Parses a polynomial; rejects proper fractions.
pub fn parse_polynomial(text: &str) -> Result<Poly, ParseError> {
    let r = parse_rational(text)?;
    if !r.den().is_one() {
        return Err(ParseError { column: 1, message: format!("'{}' is not a polynomial", text.trim()) });
    }
    Ok(r.num().clone())
}
