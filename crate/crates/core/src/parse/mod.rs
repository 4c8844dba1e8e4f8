//! Polynomial expressions and problem files.
//!
//! Expression grammar (no implicit multiplication):
//!
//! ```text
//! fraction := expr [ '/' expr ]
//! expr     := term { ('+' | '-') term }
//! term     := unary { '*' unary }
//! unary    := ('+' | '-') unary | power
//! power    := atom [ '^' integer ]
//! atom     := integer | identifier | '(' expr ')'
//! ```

mod system;

pub use system::{load_problem, load_problem_file, ParamSystem, Parametrization};

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::coeff::QQ;
use crate::ring::{Polynomial, PowerProduct, Ring, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown indeterminate `{name}` at offset {pos}")]
    UnknownIndeterminate { name: String, pos: usize },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<ParseError>,
    },
    #[error("inconsistent problem: {0}")]
    InconsistentArity(String),
    #[error("zero denominator in coordinate {0}")]
    ZeroDenominator(String),
    #[error("invalid characteristic {0}")]
    BadCharacteristic(String),
    #[error("cannot read problem: {0}")]
    Io(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

impl ParseError {
    fn at_line(self, line: usize) -> Self {
        ParseError::AtLine {
            line,
            source: Box::new(self),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<Ring>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, ring: &'a Arc<Ring>) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            ring,
        }
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
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

    fn constant(&self, c: BigInt) -> Polynomial<QQ> {
        Polynomial::constant(self.ring, &QQ, BigRational::from_integer(c))
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.syntax("expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits form an integer"))
    }

    fn fraction(&mut self) -> Result<(Polynomial<QQ>, Polynomial<QQ>), ParseError> {
        let num = self.expr()?;
        let den = if self.eat(b'/') {
            self.expr()?
        } else {
            Polynomial::one(self.ring, &QQ)
        };
        if self.peek().is_some() {
            return self.syntax("unexpected trailing input");
        }
        Ok((num, den))
    }

    fn expr(&mut self) -> Result<Polynomial<QQ>, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<QQ>, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial<QQ>, ParseError> {
        if self.eat(b'-') {
            Ok(self.unary()?.neg())
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Polynomial<QQ>, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            let e: u32 = match e.try_into() {
                Ok(e) => e,
                Err(_) => return self.syntax("exponent too large"),
            };
            if self.peek() == Some(b'^') {
                return self.syntax("chained exponents need parentheses");
            }
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial<QQ>, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.syntax("expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.constant(n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.ring.index_of(name) {
                    Some(i) => Ok(Polynomial::monomial(
                        self.ring,
                        &QQ,
                        PowerProduct::var(i),
                        BigRational::from_integer(1.into()),
                    )),
                    None => Err(ParseError::UnknownIndeterminate {
                        name: name.to_string(),
                        pos: start,
                    }),
                }
            }
            Some(b'/') => self.syntax("`/` is only allowed once, at the top level"),
            Some(_) => self.syntax("unexpected character"),
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parse `numerator [/ denominator]`; the denominator defaults to 1.
pub fn parse_fraction(
    text: &str,
    ring: &Arc<Ring>,
) -> Result<(Polynomial<QQ>, Polynomial<QQ>), ParseError> {
    Parser::new(text, ring).fraction()
}

/// Parse a polynomial with rational coefficients. A top-level division by a
/// non-zero constant is accepted, so rendered polynomials such as
/// `(3*x - y)/2` parse back.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial<QQ>, ParseError> {
    let mut p = Parser::new(text, ring);
    let (num, den) = p.fraction()?;
    if !den.is_constant() || den.is_zero() {
        return Err(ParseError::Syntax {
            pos: 0,
            msg: "a polynomial may only be divided by a non-zero constant".into(),
        });
    }
    let c = den.constant_coeff();
    debug_assert!(!c.is_zero());
    Ok(num.scale(&c.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Zp;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn parses_examples() {
        let t = Ring::new(["t"]).unwrap();
        assert!(parse_polynomial("0", &t).unwrap().is_zero());
        let f = parse_polynomial("t^15 - 3*t^2 - t + 1", &t).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(f.coeff(&PowerProduct::from_exponents(&[2])), q(-3));
        assert_eq!(f.degree(), 15);
        let stu = Ring::new(["s", "t", "u"]).unwrap();
        let (n, d) = parse_fraction("(s^3 - t - u)/(t^2 - s - t)", &stu).unwrap();
        assert_eq!(n.to_string(), "s^3 - t - u");
        assert_eq!(d.to_string(), "t^2 - s - t");
    }

    #[test]
    fn precedence_and_signs() {
        let r = Ring::new(["x", "y"]).unwrap();
        let f = parse_polynomial("-x^2*y + -(x - y)*2 - 3^2", &r).unwrap();
        assert_eq!(f.to_string(), "-x^2*y - 2*x + 2*y - 9");
        let g = parse_polynomial("(3*x - y)/2", &r).unwrap();
        assert_eq!(g.coeff(&PowerProduct::var(0)), BigRational::new(3.into(), 2.into()));
    }

    #[test]
    fn errors_carry_positions() {
        let r = Ring::new(["x"]).unwrap();
        assert_eq!(
            parse_polynomial("x + z", &r),
            Err(ParseError::UnknownIndeterminate {
                name: "z".into(),
                pos: 4
            })
        );
        assert!(matches!(parse_polynomial("2x", &r), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_polynomial("x^", &r), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("(x", &r), Err(ParseError::Syntax { .. })));
        assert!(parse_polynomial("x/x", &r).is_err());
        assert!(parse_fraction("(x/2)/x", &r).is_err());
        assert!(parse_polynomial("x^2^3", &r).is_err());
    }

    #[test]
    fn render_round_trip_prime_field() {
        let r = Ring::new(["x", "y"]).unwrap();
        let f = parse_polynomial("5*x^2 - 3*y + 6", &r).unwrap();
        let zp = Zp::new(7).unwrap();
        let m = f.reduce_mod(&zp).unwrap();
        let back = parse_polynomial(&m.to_string(), &r).unwrap().reduce_mod(&zp).unwrap();
        assert_eq!(m, back);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn render_then_parse_is_identity(
                terms in prop::collection::vec((0u32..4, 0u32..4, 0u32..3, -50i64..50, 1i64..6), 0..8)
            ) {
                let r = Ring::new(["a", "b", "c"]).unwrap();
                let f = Polynomial::from_terms(&r, &QQ, terms.iter().map(|&(x, y, z, n, d)| {
                    (PowerProduct::from_exponents(&[x, y, z]), BigRational::new(n.into(), d.into()))
                }));
                let g = parse_polynomial(&f.to_string(), &r).unwrap();
                prop_assert_eq!(f, g);
            }
        }
    }
}
