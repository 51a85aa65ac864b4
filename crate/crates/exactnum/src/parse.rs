//! Recursive-descent parser for scalar expressions.
//!
//! The accepted grammar covers everything the `Display` implementations
//! produce, plus general arithmetic:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | atom
//! atom  := INT | 'q' ('^' '-'? INT)? | '(' expr ')'
//! ```
//!
//! Integers are unbounded; exponents must fit in `i64`.

use num::BigInt;

use crate::{NumError, QRat, Scalar};

pub(crate) fn parse_scalar(text: &str) -> Result<Scalar, NumError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> NumError {
        NumError::Parse {
            at: self.pos,
            msg: msg.to_string(),
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

    fn expr(&mut self) -> Result<Scalar, NumError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, NumError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.unary()?;
                    let inv = rhs.recip().map_err(|_| NumError::Parse {
                        at,
                        msg: "division by zero in expression".to_string(),
                    })?;
                    acc = &acc * &inv;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, NumError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Scalar, NumError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'q') => {
                self.pos += 1;
                let mut exp: i64 = 1;
                if self.bytes.get(self.pos) == Some(&b'^') {
                    self.pos += 1;
                    exp = self.exponent()?;
                }
                Ok(Scalar::q_pow(exp))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Scalar::from_qrat(QRat::from(n)))
            }
            Some(_) => Err(self.error("expected a number, 'q' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, NumError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        BigInt::parse_bytes(&self.bytes[start..self.pos], 10)
            .ok_or_else(|| self.error("invalid integer"))
    }

    fn exponent(&mut self) -> Result<i64, NumError> {
        let negative = if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected exponent digits"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let mag: i64 = text
            .parse()
            .map_err(|_| self.error("exponent out of range"))?;
        Ok(if negative { -mag } else { mag })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(Scalar::parse("q^-1 - q^3").unwrap().to_string(), "q^-1 - q^3");
        assert_eq!(Scalar::parse("0").unwrap(), Scalar::zero());
        assert_eq!(Scalar::parse("q").unwrap(), Scalar::q());
        assert_eq!(Scalar::parse("-q^2").unwrap(), -Scalar::q_pow(2));
    }

    #[test]
    fn parses_arithmetic() {
        assert_eq!(
            Scalar::parse("(q^2 - 1)/(q - 1)").unwrap(),
            Scalar::parse("q + 1").unwrap()
        );
        assert_eq!(
            Scalar::parse("2*q/2").unwrap(),
            Scalar::q()
        );
        assert_eq!(
            Scalar::parse("1/2*q").unwrap(),
            Scalar::parse("q/2").unwrap()
        );
        assert_eq!(
            Scalar::parse("q^-2*q^5").unwrap(),
            Scalar::q_pow(3)
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Scalar::parse("").is_err());
        assert!(Scalar::parse("q^").is_err());
        assert!(Scalar::parse("(q").is_err());
        assert!(Scalar::parse("q +").is_err());
        assert!(Scalar::parse("1/0").is_err());
        assert!(Scalar::parse("x").is_err());
        assert!(Scalar::parse("q 1").is_err());
    }
}
