//! Text expressions such as `2 x4 x1 x4 - (mu1 + 1/2) x1 + i x2^2`.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' integer]
//! atom   := 'x'k | 'mu'k | integer ['/' integer] | 'i' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::NCPoly;
use super::scalar::{gauss, imag_unit, ScalarPoly};
use super::NcError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    X(u8),
    Mu(u8),
    Int(BigInt),
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, message: impl Into<String>) -> NcError {
    NcError::SyntaxError { pos, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, NcError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |from: usize| -> usize {
        let mut j = from;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    let index = |from: usize, to: usize| -> Result<u8, NcError> {
        text[from..to].parse::<u8>().map_err(|_| syntax(from, "generator index must be an integer in 1..=255"))
    };
    while i < bytes.len() {
        let ch = bytes[i];
        let start = i;
        let single = match ch {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((start, t));
            i += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let j = digits(i);
            out.push((start, Tok::Int(text[i..j].parse().expect("digits"))));
            i = j;
        } else if ch == b'x' {
            let j = digits(i + 1);
            if j == i + 1 {
                return Err(syntax(i, "expected index after 'x'"));
            }
            out.push((start, Tok::X(index(i + 1, j)?)));
            i = j;
        } else if text[i..].starts_with("mu") {
            let j = digits(i + 2);
            if j == i + 2 {
                return Err(syntax(i, "expected index after 'mu'"));
            }
            out.push((start, Tok::Mu(index(i + 2, j)?)));
            i = j;
        } else if ch == b'i' && !bytes.get(i + 1).is_some_and(|b| b.is_ascii_alphanumeric()) {
            out.push((start, Tok::I));
            i += 1;
        } else {
            let c = text[i..].chars().next().unwrap_or('?');
            return Err(syntax(i, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    at: usize,
    end: usize,
    d: u8,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn expr(&mut self) -> Result<NCPoly, NcError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => self.at += 1,
            Some(Tok::Minus) => {
                negate = true;
                self.at += 1;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::X(_) | Tok::Mu(_) | Tok::Int(_) | Tok::I | Tok::LParen))
    }

    fn term(&mut self) -> Result<NCPoly, NcError> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some(&Tok::Star) {
                self.at += 1;
                acc = &acc * &self.factor()?;
            } else if self.starts_factor() {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<NCPoly, NcError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Int(e)) => {
                let e: u32 = e.try_into().map_err(|_| syntax(pos, "exponent too large"))?;
                self.at += 1;
                Ok(base.pow(e))
            }
            _ => Err(syntax(pos, "expected integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<NCPoly, NcError> {
        let pos = self.pos();
        let tok = self.peek().cloned().ok_or_else(|| syntax(pos, "unexpected end of input"))?;
        self.at += 1;
        match tok {
            Tok::X(k) => {
                if k == 0 || k > self.d {
                    return Err(NcError::IndexOutOfRange { index: k, d: self.d });
                }
                Ok(NCPoly::x(k))
            }
            Tok::Mu(k) => {
                if k == 0 || k > self.d {
                    return Err(NcError::IndexOutOfRange { index: k, d: self.d });
                }
                Ok(NCPoly::scalar(ScalarPoly::mu(k)))
            }
            Tok::I => Ok(NCPoly::scalar(ScalarPoly::constant(imag_unit()))),
            Tok::Int(p) => {
                let mut q = BigInt::from(1);
                if self.peek() == Some(&Tok::Slash) {
                    self.at += 1;
                    let qpos = self.pos();
                    match self.peek().cloned() {
                        Some(Tok::Int(v)) if !v.is_zero() => {
                            q = v;
                            self.at += 1;
                        }
                        Some(Tok::Int(_)) => return Err(syntax(qpos, "zero denominator")),
                        _ => return Err(syntax(qpos, "expected integer denominator")),
                    }
                }
                let r = BigRational::new(p, q);
                Ok(NCPoly::scalar(ScalarPoly::constant(gauss(r, BigRational::zero()))))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(syntax(self.pos(), "expected ')'"));
                }
                self.at += 1;
                Ok(inner)
            }
            other => Err(syntax(pos, format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses an expression over generators `x1..xd` and symbols `mu1..mud`.
pub fn parse_expr(text: &str, d: u8) -> Result<NCPoly, NcError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let mut p = Parser { toks: &toks, at: 0, end: text.len(), d };
    let out = p.expr()?;
    if p.at != toks.len() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(out)
}
