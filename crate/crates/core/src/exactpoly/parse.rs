//! Recursive-descent parser for polynomial expressions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{MultiPoly, PolyError};

pub(super) fn parse(template: &MultiPoly, src: &str) -> Result<MultiPoly, PolyError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        template,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    template: &'a MultiPoly,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            if op == b'*' {
                acc = &acc * &rhs;
            } else {
                let k = rhs
                    .as_constant()
                    .ok_or_else(|| self.error("division by a non-constant"))?;
                if k.is_zero() {
                    return Err(PolyError::DivisionByZero);
                }
                acc = acc.scale(&k.recip());
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, PolyError> {
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

    fn power(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
            let n: u32 = text
                .parse()
                .map_err(|_| self.error("expected an exponent"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(ch) if ch.is_ascii_digit() || ch == b'.' => {
                let value = self.number()?;
                Ok(self.template.constant_like(value))
            }
            Some(ch) if ch.is_ascii_alphabetic() || ch == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                self.template.var_like(name)
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }

    fn number(&mut self) -> Result<BigRational, PolyError> {
        let start = self.pos;
        let mut int_part = BigInt::zero();
        let mut den = BigInt::one();
        let mut seen_dot = false;
        let mut digits = 0;
        while self.pos < self.src.len() {
            let ch = self.src[self.pos];
            if ch.is_ascii_digit() {
                int_part = int_part * 10 + BigInt::from(ch - b'0');
                if seen_dot {
                    den *= 10;
                }
                digits += 1;
            } else if ch == b'.' && !seen_dot {
                seen_dot = true;
            } else {
                break;
            }
            self.pos += 1;
        }
        if digits == 0 {
            self.pos = start;
            return Err(self.error("malformed number"));
        }
        Ok(BigRational::new(int_part, den))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, MultiPoly};

    #[test]
    fn precedence_and_decimals() {
        let p = MultiPoly::parse(&["x"], "2*x^2 - 3/4*x + 0.25").unwrap();
        assert_eq!(p.evaluate(&[rat(1, 2)]).unwrap(), rat(3, 8));
        let q = MultiPoly::parse(&["x"], "-(x+1)^2/2").unwrap();
        assert_eq!(q.evaluate(&[rat(1, 1)]).unwrap(), rat(-2, 1));
    }

    #[test]
    fn rejects_garbage() {
        assert!(MultiPoly::parse(&["x"], "x +").is_err());
        assert!(MultiPoly::parse(&["x"], "x / x").is_err());
        assert!(MultiPoly::parse(&["x"], "z").is_err());
        assert!(MultiPoly::parse(&["x"], "(x").is_err());
    }
}
