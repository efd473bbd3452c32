//! Recursive-descent parser for scalar literals.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? integer)?
//! atom  := integer | 'q' | 'zeta' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::{FieldCtx, Scalar};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a FieldCtx,
}

/// Parses a scalar literal in the given field. Columns in errors are 1-based.
pub fn parse_scalar(text: &str, ctx: &FieldCtx) -> Result<Scalar> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty scalar literal"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(format!("unexpected '{}'", p.peek_char())));
    }
    Ok(v)
}

impl<'a> Parser<'a> {
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
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            column: self.pos + 1,
            message: msg.into(),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
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

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(Error::Syntax {
                        column: at + 1,
                        message: "division by zero".into(),
                    });
                }
                acc = &acc / &d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            self.skip_ws();
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(self.error("expected integer exponent"));
            }
            let e = self.integer()?;
            let e: i64 = e
                .try_into()
                .map_err(|_| self.error("exponent out of range"))?;
            let e = if neg { -e } else { e };
            if e < 0 && base.is_zero() {
                return Err(self.error("negative power of zero"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        digits
            .parse::<BigInt>()
            .map_err(|_| Error::Syntax {
                column: start + 1,
                message: "malformed integer".into(),
            })
    }

    fn atom(&mut self) -> Result<Scalar> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Scalar::from_bigint(self.integer()?)),
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let column = start + 1;
                let wrap = |e: Error| match e {
                    Error::FieldMismatch(m) => Error::Syntax { column, message: m },
                    other => other,
                };
                match ident {
                    "q" => self.ctx.q().map_err(wrap),
                    "zeta" => self.ctx.zeta().map_err(wrap),
                    other => Err(Error::Syntax {
                        column,
                        message: format!("unknown symbol '{other}'"),
                    }),
                }
            }
            Some(_) => Err(self.error(format!("unexpected '{}'", self.peek_char()))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_q_expressions() {
        let k = FieldCtx::rational_function();
        let a = parse_scalar("1/(q - q^-1)", &k).unwrap();
        let q = k.q().unwrap();
        assert_eq!(a, (&q - &q.inv()).inv());
        assert_eq!(parse_scalar("q^2", &k).unwrap(), q.pow(2));
        assert_eq!(parse_scalar("-3/6", &k).unwrap(), Scalar::from_ratio(-1, 2));
    }

    #[test]
    fn double_caret_is_reported_at_second_caret() {
        let k = FieldCtx::rational_function();
        match parse_scalar("q^^2", &k) {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn zeta_outside_cyclotomic_is_rejected() {
        let k = FieldCtx::rational();
        assert!(matches!(
            parse_scalar("zeta + 1", &k),
            Err(Error::Syntax { column: 1, .. })
        ));
    }

    #[test]
    fn literal_round_trip() {
        let k = FieldCtx::cyclotomic(12).unwrap();
        let z = k.zeta().unwrap();
        let s = &(&z.pow(3) * &Scalar::from_ratio(2, 3)) - &z;
        assert_eq!(parse_scalar(&s.to_literal(), &k).unwrap(), s);
        let f = FieldCtx::rational_function();
        let q = f.q().unwrap();
        let t = &(&q.pow(3) - &Scalar::from_int(2)) / &(&q * &q + &Scalar::from_ratio(1, 2));
        assert_eq!(parse_scalar(&t.to_literal(), &f).unwrap(), t);
    }
}
