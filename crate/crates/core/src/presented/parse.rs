//! Expressions over the generators of a presentation, e.g. `a*x^2*a^-1 - q*x`.

use super::{AlgebraElement, Presentation};
use crate::error::{Error, Result};
use crate::scalars::Scalar;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    p: &'a Presentation,
}

/// Parses and normalizes an element. Column numbers in errors are 1-based.
pub fn parse_element(text: &str, p: &Presentation) -> Result<AlgebraElement> {
    let mut ps = Parser {
        src: text.as_bytes(),
        pos: 0,
        p,
    };
    ps.skip_ws();
    if ps.pos >= ps.src.len() {
        return Err(ps.error("empty expression"));
    }
    let e = ps.expr()?;
    ps.skip_ws();
    if ps.pos < ps.src.len() {
        return Err(ps.error(format!("unexpected '{}'", ps.src[ps.pos] as char)));
    }
    Ok(e)
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            column: self.pos + 1,
            message: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<AlgebraElement> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.scale(&Scalar::from_int(-1))
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<AlgebraElement> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.p.mul(&acc, &f);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let f = self.factor()?;
                    let c = self.as_scalar(&f).ok_or(Error::Syntax {
                        column: at + 1,
                        message: "can only divide by a nonzero scalar".into(),
                    })?;
                    if c.is_zero() {
                        return Err(Error::Syntax {
                            column: at + 1,
                            message: "division by zero".into(),
                        });
                    }
                    acc = acc.scale(&c.inv());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn as_scalar(&self, e: &AlgebraElement) -> Option<Scalar> {
        if e.is_zero() {
            return Some(Scalar::zero());
        }
        let (m, c) = e.leading()?;
        (e.len() == 1 && m.word.is_empty() && self.p.gamma().is_identity(&m.gamma)).then(|| c.clone())
    }

    fn factor(&mut self) -> Result<AlgebraElement> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer exponent"));
        }
        let k: u32 = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Syntax {
                column: start + 1,
                message: "exponent out of range".into(),
            })?;
        if !neg {
            return Ok(self.p.pow(&base, k));
        }
        let inv = self.invert(&base).ok_or(Error::Syntax {
            column: start + 1,
            message: "negative power of a non-invertible element".into(),
        })?;
        Ok(self.p.pow(&inv, k))
    }

    /// Inverse of a nonzero scalar multiple of a grouplike.
    fn invert(&self, e: &AlgebraElement) -> Option<AlgebraElement> {
        let (m, c) = e.leading()?;
        if e.len() != 1 || !m.word.is_empty() || c.is_zero() {
            return None;
        }
        Some(self.p.grouplike(self.p.gamma().inverse(&m.gamma)).scale(&c.inv()))
    }

    fn atom(&mut self) -> Result<AlgebraElement> {
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let s = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: num_bigint::BigInt = std::str::from_utf8(&self.src[s..self.pos]).unwrap().parse().unwrap();
                Ok(self.p.scalar(Scalar::from_bigint(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let s = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[s..self.pos]).unwrap();
                if let Some(i) = self.p.gen_index(name) {
                    return Ok(self.p.x(i));
                }
                if let Some(k) = self.p.gamma_names().iter().position(|n| n == name) {
                    return Ok(self.p.grouplike(self.p.gamma().generator(k)));
                }
                let sym = match name {
                    "q" => self.p.ctx().q(),
                    "zeta" => self.p.ctx().zeta(),
                    _ => Err(Error::invalid_input("unknown")),
                };
                sym.map(|c| self.p.scalar(c)).map_err(|_| Error::Syntax {
                    column: s + 1,
                    message: format!("unknown generator or symbol '{name}'"),
                })
            }
            Some(c) => Err(Error::Syntax {
                column: start.max(self.pos) + 1,
                message: format!("unexpected '{}'", c as char),
            }),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
