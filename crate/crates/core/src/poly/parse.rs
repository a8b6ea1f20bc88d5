use alloc::string::{String, ToString};

use num_traits::Zero;

use super::MultiPoly;
use crate::arith::{Integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub(super) fn parse(s: &str) -> Result<MultiPoly, ParseError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let Some(c) = d.as_constant() else {
                        return Err(ParseError { pos: at, msg: "division by a non-constant".into() });
                    };
                    if c.is_zero() {
                        return Err(ParseError { pos: at, msg: "division by zero".into() });
                    }
                    acc = acc.scale(&c.recip());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected exponent"));
            }
            let e: u32 = core::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if self.src.get(self.pos) == Some(&b'.') {
                    return Err(self.err("decimal literals are not allowed"));
                }
                let n: Integer = core::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap();
                Ok(MultiPoly::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Ok(MultiPoly::var(core::str::from_utf8(&self.src[start..self.pos]).unwrap()))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn parses_and_round_trips() {
        for s in ["m^2 - 5*n^2 - 5", "-3/2*g^2*h + g - 7/9", "x1^2 - 5*x2^2", "0"] {
            let p = parse(s).unwrap();
            assert_eq!(p.to_string(), s);
            assert_eq!(parse(&p.to_string()).unwrap(), p);
        }
        assert_eq!(parse("(1/2)^3").unwrap(), MultiPoly::constant(rat(1, 8)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse("1.5*x").is_err());
        assert!(parse("x/y").is_err());
        assert!(parse("x/0").is_err());
        assert!(parse("(x + 1").is_err());
        assert!(parse("x +").is_err());
        assert!(parse("x^").is_err());
    }
}
