//! Parser for the textual scalar / polynomial grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! exp    := '-'? integer | '(' '-'? integer ')'
//! atom   := integer | 'q' | 'v' | 'x' | 's' | '(' expr ')'
//! ```
//!
//! `q` parses as `v^2`. Division and negative exponents are allowed only on
//! expressions free of `x` and `s`.

use num_bigint::BigInt;

use super::poly::Poly;
use super::scalar::Scalar;
use super::QError;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> QError {
        QError::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, QError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse::<BigInt>().map_err(|_| self.err("bad integer"))
    }

    fn expr(&mut self) -> Result<Poly, QError> {
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

    fn term(&mut self) -> Result<Poly, QError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                let d = d.as_scalar().ok_or(QError::Parse {
                    pos: at,
                    msg: "division by an expression involving x or s".into(),
                })?;
                acc = acc.div_scalar(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, QError> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn exponent(&mut self) -> Result<i64, QError> {
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let n = self.integer()?;
        if paren && !self.eat(b')') {
            return Err(self.err("expected ')'"));
        }
        let n: i64 = n.try_into().map_err(|_| self.err("exponent too large"))?;
        if n > 100_000 {
            return Err(self.err("exponent too large"));
        }
        Ok(if neg { -n } else { n })
    }

    fn power(&mut self) -> Result<Poly, QError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let e = self.exponent()?;
        if e >= 0 {
            return Ok(base.pow(e as u32));
        }
        let b = base.as_scalar().ok_or(QError::Parse {
            pos: at,
            msg: "negative exponent on an expression involving x or s".into(),
        })?;
        if b.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(Poly::constant(b.pow(e)))
    }

    fn atom(&mut self) -> Result<Poly, QError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly::constant(Scalar::from_bigint(self.integer()?))),
            Some(b'q') => {
                self.pos += 1;
                Ok(Poly::constant(Scalar::q()))
            }
            Some(b'v') => {
                self.pos += 1;
                Ok(Poly::constant(Scalar::v()))
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Poly::x())
            }
            Some(b's') => {
                self.pos += 1;
                Ok(Poly::s())
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parse a polynomial in `x`, `s` with coefficients in `Q(v)`.
pub fn parse_poly(text: &str) -> Result<Poly, QError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parse a scalar (an expression in `q`, `v` and integers only).
pub fn parse_scalar(text: &str) -> Result<Scalar, QError> {
    parse_poly(text)?.as_scalar().ok_or(QError::Parse {
        pos: 0,
        msg: "scalar expression may not involve x or s".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_q_as_v_squared() {
        assert_eq!(parse_scalar("q").unwrap(), parse_scalar("v^2").unwrap());
        assert_eq!(parse_scalar("q^-1").unwrap(), Scalar::v_pow(-2));
        assert_eq!(parse_scalar("q^(-2)").unwrap(), Scalar::v_pow(-4));
    }

    #[test]
    fn parses_fractions() {
        let s = parse_scalar("(1-q)/4").unwrap();
        assert_eq!(s, (Scalar::one() - Scalar::q()) / Scalar::from_int(4));
        assert_eq!(parse_scalar("(v^2-1)/(v-1)").unwrap(), Scalar::v() + Scalar::one());
    }

    #[test]
    fn parses_polynomials() {
        let p = parse_poly("x^3 - 3*s*x").unwrap();
        assert_eq!(p.render(), "x^3 - 3*s*x");
        let p = parse_poly("x^4 + q*(1+q+q^2)*s*x^2 + q^3*s^2").unwrap();
        assert_eq!(p.coeff(2, 1), parse_scalar("q+q^2+q^3").unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly("x/x").is_err());
        assert!(parse_poly("x^-1").is_err());
        assert!(parse_poly("2 +").is_err());
        assert!(parse_poly("y").is_err());
        assert!(parse_poly("(1").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("1/(q-q)").is_err());
    }
}
