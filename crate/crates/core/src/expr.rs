//! Recursive-descent parser for polynomial expressions over Q(t).
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ['^' int] ['?']
//! atom   := int | 't' | 'U' digit | '(' expr ')' | '-' factor
//! ```
//!
//! A `?` marks every monomial produced by the factor it follows (and by any
//! product containing that factor) as typographically uncertain.

use std::collections::BTreeSet;

use crate::arith::NumberFieldElement;
use crate::error::{Error, Result};
use crate::poly::{Monomial, NfPolynomial, NVARS};

/// A parsed expression together with its flagged monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Flagged {
    pub poly: NfPolynomial,
    pub flags: BTreeSet<Monomial>,
}

impl Flagged {
    fn plain(poly: NfPolynomial) -> Self {
        Self { poly, flags: BTreeSet::new() }
    }

    fn constant(c: NumberFieldElement) -> Self {
        Self::plain(NfPolynomial::monomial(Monomial::one(), c))
    }

    fn retain_support(mut self) -> Self {
        let poly = &self.poly;
        self.flags.retain(|m| poly.coefficient(m).is_some());
        self
    }

    fn add(self, other: Flagged) -> Self {
        let mut flags = self.flags;
        flags.extend(other.flags);
        Self { poly: self.poly.add(&other.poly), flags }.retain_support()
    }

    fn neg(self) -> Self {
        Self { poly: self.poly.neg(), flags: self.flags }
    }

    fn mul(self, other: Flagged) -> Self {
        let mut flags = BTreeSet::new();
        for a in self.poly.monomials() {
            for b in other.poly.monomials() {
                if self.flags.contains(a) || other.flags.contains(b) {
                    flags.insert(a.mul(b));
                }
            }
        }
        Self { poly: self.poly.mul(&other.poly), flags }.retain_support()
    }

    fn as_constant(&self) -> Option<NumberFieldElement> {
        match self.poly.len() {
            0 => Some(NumberFieldElement::zero()),
            1 => self.poly.coefficient(&Monomial::one()).cloned(),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Theta,
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Query,
    End,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col_offset: usize,
    tok: Tok,
    tok_start: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, line: usize, col_offset: usize) -> Result<Self> {
        let mut p = Self { src: src.as_bytes(), pos: 0, line, col_offset, tok: Tok::End, tok_start: 0 };
        p.advance()?;
        Ok(p)
    }

    fn error<T>(&self, at: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { line: self.line, column: self.col_offset + at + 1, message: message.into() })
    }

    fn advance(&mut self) -> Result<()> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.tok_start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            self.tok = Tok::End;
            return Ok(());
        };
        self.pos += 1;
        self.tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'?' => Tok::Query,
            b't' => Tok::Theta,
            b'U' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match digits.parse::<usize>() {
                    Ok(i) if i < NVARS => Tok::Var(i),
                    _ => return self.error(self.tok_start, format!("unknown variable U{digits}")),
                }
            }
            b'0'..=b'9' => {
                let start = self.pos - 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match digits.parse::<u64>() {
                    Ok(n) => Tok::Int(n),
                    Err(_) => return self.error(start, "integer literal too large"),
                }
            }
            other => return self.error(self.tok_start, format!("unexpected character '{}'", other as char)),
        };
        Ok(())
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.tok != tok {
            return self.error(self.tok_start, format!("expected {what}"));
        }
        self.advance()
    }

    fn expr(&mut self) -> Result<Flagged> {
        let mut acc = match self.tok {
            Tok::Minus => {
                self.advance()?;
                self.term()?.neg()
            }
            Tok::Plus => {
                self.advance()?;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.tok {
                Tok::Plus => {
                    self.advance()?;
                    acc = acc.add(self.term()?);
                }
                Tok::Minus => {
                    self.advance()?;
                    acc = acc.add(self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Flagged> {
        let mut acc = self.factor()?;
        loop {
            match self.tok {
                Tok::Star => {
                    self.advance()?;
                    acc = acc.mul(self.factor()?);
                }
                Tok::Slash => {
                    self.advance()?;
                    let at = self.tok_start;
                    let divisor = self.factor()?;
                    let Some(c) = divisor.as_constant() else {
                        return self.error(at, "divisor must be a constant");
                    };
                    let Ok(inv) = c.try_inv() else {
                        return self.error(at, "division by zero");
                    };
                    acc = acc.mul(Flagged { poly: NfPolynomial::monomial(Monomial::one(), inv), flags: divisor.flags });
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Flagged> {
        let base = self.atom()?;
        let mut value = base.clone();
        if self.tok == Tok::Caret {
            self.advance()?;
            let Tok::Int(e) = self.tok else {
                return self.error(self.tok_start, "expected integer exponent");
            };
            if e > 64 {
                return self.error(self.tok_start, "exponent too large");
            }
            self.advance()?;
            value = (0..e).fold(Flagged::constant(NumberFieldElement::one()), |acc, _| acc.mul(base.clone()));
        }
        if self.tok == Tok::Query {
            self.advance()?;
            value.flags = value.poly.monomials().copied().collect();
        }
        Ok(value)
    }

    fn atom(&mut self) -> Result<Flagged> {
        let at = self.tok_start;
        match self.tok {
            Tok::Int(n) => {
                self.advance()?;
                let n = i64::try_from(n).or_else(|_| self.error(at, "integer literal too large"))?;
                Ok(Flagged::constant(NumberFieldElement::from_int(n)))
            }
            Tok::Theta => {
                self.advance()?;
                Ok(Flagged::constant(NumberFieldElement::theta()))
            }
            Tok::Var(i) => {
                self.advance()?;
                Ok(Flagged::plain(NfPolynomial::monomial(Monomial::var(i), NumberFieldElement::one())))
            }
            Tok::LParen => {
                self.advance()?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Minus => {
                self.advance()?;
                Ok(self.factor()?.neg())
            }
            Tok::End => self.error(at, "unexpected end of expression"),
            _ => self.error(at, "expected a number, 't', a variable or '('"),
        }
    }
}

/// Parses a full expression. `line` and `col_offset` locate it in a larger
/// document for error messages.
pub fn parse_expression(src: &str, line: usize, col_offset: usize) -> Result<Flagged> {
    let mut p = Parser::new(src, line, col_offset)?;
    let value = p.expr()?;
    if p.tok != Tok::End {
        return p.error(p.tok_start, "unexpected trailing input");
    }
    Ok(value)
}

pub fn parse_constant(src: &str) -> Result<NumberFieldElement> {
    let parsed = parse_expression(src, 1, 0)?;
    parsed.as_constant().ok_or_else(|| Error::Syntax {
        line: 1,
        column: 1,
        message: "expected a constant".into(),
    })
}

pub fn parse_polynomial(src: &str) -> Result<NfPolynomial> {
    Ok(parse_expression(src, 1, 0)?.poly)
}
