//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := [ '+' | '-' ] term { ( '+' | '-' ) term }
//! term   := factor { '*' factor }
//! factor := atom [ '^' nat ]
//! atom   := '(' expr ')' | variable | integer
//! ```
//!
//! Variables are identifiers declared by the ring; integers of any length
//! are reduced modulo p while scanning.  Errors report a byte offset into
//! the source.

use super::poly::Poly;
use super::Ring;
use thiserror::Error;

/// A parse failure at a byte offset of the input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

impl Ring {
    /// Parses a polynomial expression in this ring.
    pub fn parse_poly(&self, src: &str) -> Result<Poly, ParseError> {
        let mut p = Parser {
            ring: self,
            bytes: src.as_bytes(),
            pos: 0,
        };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(ParseError::new(p.pos, "unexpected trailing input"));
        }
        Ok(poly)
    }
}

struct Parser<'a> {
    ring: &'a Ring,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
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
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                negate = true;
            }
            Some(b'+') => {
                self.pos += 1;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = self.ring.poly_neg(&acc);
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.poly_add(&acc, &t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.poly_sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            let op_at = self.pos;
            self.pos += 1;
            let rhs = self.factor()?;
            acc = self
                .ring
                .poly_try_mul(&acc, &rhs)
                .map_err(|e| ParseError::new(op_at, e.to_string()))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        let op_at = self.pos;
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let n = self.scan_digits()?;
        if n > 255 {
            return Err(ParseError::new(start, format!("exponent {n} exceeds 255")));
        }
        self.ring
            .poly_try_pow(&base, n as u32)
            .map_err(|e| ParseError::new(op_at, e.to_string()))
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                let open_at = self.pos;
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(ParseError::new(open_at, "unmatched '('"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.ring.field().p() as u64;
                let mut acc: u64 = 0;
                while let Some(&d) = self.bytes.get(self.pos) {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    acc = (acc * 10 + (d - b'0') as u64) % p;
                    self.pos += 1;
                }
                Ok(self.ring.poly_const(acc as u32))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while let Some(&d) = self.bytes.get(self.pos) {
                    if d.is_ascii_alphanumeric() || d == b'_' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos])
                    .expect("identifier bytes are ASCII");
                match self.ring.var_index(name) {
                    Some(i) => Ok(self.ring.poly_var(i)),
                    None => Err(ParseError::new(start, format!("unknown variable {name:?}"))),
                }
            }
            Some(c) => Err(ParseError::new(
                self.pos,
                format!("unexpected character {:?}", c as char),
            )),
            None => Err(ParseError::new(self.pos, "unexpected end of input")),
        }
    }

    fn scan_digits(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        let mut acc: u64 = 0;
        while let Some(&d) = self.bytes.get(self.pos) {
            if !d.is_ascii_digit() {
                break;
            }
            acc = acc.saturating_mul(10).saturating_add((d - b'0') as u64);
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::new(start, "expected an integer"));
        }
        Ok(acc)
    }
}
