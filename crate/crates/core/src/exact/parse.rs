//! Recursive-descent parser for the canonical polynomial rendering.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! poly   := ["-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := uint ["/" uint] | gen ["^" uint]
//! gen    := "T(p)" | "T(p^2)" | "T_" uint "(p^2)"
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::generator::Generator;
use super::polynomial::HeckePolynomial;
use crate::error::{Error, Result};

pub(crate) fn parse_polynomial(degree: usize, input: &str) -> Result<HeckePolynomial> {
    let compact: Vec<u8> = input.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
    let mut parser = Parser {
        src: &compact,
        pos: 0,
        degree,
    };
    let poly = parser.poly()?;
    if parser.pos != compact.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(poly)
}

/// Largest `j` appearing as `T_j(p^2)`, if any.
pub(crate) fn max_index(input: &str) -> Option<usize> {
    input
        .split("T_")
        .skip(1)
        .filter_map(|rest| {
            let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
            digits.parse().ok()
        })
        .max()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    degree: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::InvalidArgument(format!(
            "polynomial parse error at byte {}: {what}",
            self.pos
        ))
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn poly(&mut self) -> Result<HeckePolynomial> {
        let mut out = HeckePolynomial::zero(self.degree);
        let mut negative = self.eat("-");
        loop {
            let term = self.term()?;
            out = if negative { out - term } else { out + term };
            if self.eat("+") {
                negative = false;
            } else if self.eat("-") {
                negative = true;
            } else {
                return Ok(out);
            }
        }
    }

    fn term(&mut self) -> Result<HeckePolynomial> {
        let mut coeff = BigRational::one();
        let mut powers: Vec<(Generator, u32)> = Vec::new();
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_digit() => coeff *= self.rational()?,
                Some(b'T') => {
                    let g = self.generator()?;
                    let e = if self.eat("^") { self.uint()? } else { 1 };
                    let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
                    powers.push((g, e));
                }
                _ => return Err(self.error("expected a coefficient or a generator")),
            }
            if !self.eat("*") {
                break;
            }
        }
        HeckePolynomial::monomial(self.degree, &powers, coeff)
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.digits()?;
        if self.eat("/") {
            let den = self.digits()?;
            if den.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("ascii digits parse"))
    }

    fn uint(&mut self) -> Result<u64> {
        let value = self.digits()?;
        u64::try_from(value).map_err(|_| self.error("integer too large"))
    }

    fn generator(&mut self) -> Result<Generator> {
        if self.eat("T(p^2)") {
            Ok(Generator::Tp2)
        } else if self.eat("T(p)") {
            Ok(Generator::Tp)
        } else if self.eat("T_") {
            let j = self.uint()? as usize;
            if !self.eat("(p^2)") {
                return Err(self.error("expected `(p^2)`"));
            }
            Generator::Tj(j).validate(self.degree)
        } else {
            Err(self.error("unknown generator"))
        }
    }
}
