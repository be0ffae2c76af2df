//! The function-spec language:
//!
//! ```text
//! spec   := "0" | [sign] term (("+" | "-") term)*
//! term   := [coeff "*"] [("x" | "x^" int) "*"] "exp(-" [rate] "x)" ["*osc(" real "x)"]
//! coeff  := real | "(" real "," real ")"
//! rate   := real | "(" real "," real ")"
//! ```
//!
//! Whitespace is allowed between tokens. `osc(b x)` is the factor e^{ibx}.

use num_complex::Complex64;
use std::fmt;

use super::{Atom, Profile, Side};
use crate::error::{Error, Result};
use crate::special::ComplexOrder;

/// Parses a positive-side profile of order `order`.
pub fn parse_spec(text: &str, order: ComplexOrder) -> Result<Profile> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let atoms = p.spec()?;
    Ok(Profile::new(order, atoms, Side::Positive))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.pos, message: message.into() })
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected '{}'", c as char))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn spec(&mut self) -> Result<Vec<Atom>> {
        let save = self.pos;
        if self.eat(b'0') {
            if self.at_end() {
                return Ok(Vec::new());
            }
            self.pos = save;
        }
        let mut atoms = Vec::new();
        let mut sign = if self.eat(b'-') {
            -1.0
        } else {
            self.eat(b'+');
            1.0
        };
        loop {
            if let Some(atom) = self.term(sign)? {
                atoms.push(atom);
            }
            if self.at_end() {
                return Ok(atoms);
            }
            sign = if self.eat(b'+') {
                1.0
            } else if self.eat(b'-') {
                -1.0
            } else {
                return self.error("expected '+', '-' or end of input");
            };
        }
    }

    fn term(&mut self, sign: f64) -> Result<Option<Atom>> {
        let mut coeff = Complex64::new(sign, 0.0);
        let mut power = 0usize;
        let at_exp = |p: &mut Self| {
            p.skip_ws();
            p.src[p.pos..].starts_with(b"exp")
        };
        let at_x = |p: &mut Self| p.peek() == Some(b'x');
        if !at_exp(self) && !at_x(self) {
            coeff *= self.scalar()?;
            self.expect(b'*')?;
        }
        if at_x(self) {
            self.pos += 1;
            power = if self.eat(b'^') { self.integer()? } else { 1 };
            self.expect(b'*')?;
        }
        if !self.keyword("exp") {
            return self.error("expected 'exp'");
        }
        self.expect(b'(')?;
        self.expect(b'-')?;
        let rate_at = self.pos;
        let rate = if self.peek() == Some(b'x') { Complex64::new(1.0, 0.0) } else { self.scalar()? };
        self.expect(b'x')?;
        self.expect(b')')?;
        let mut modulation = 0.0;
        let save = self.pos;
        if self.eat(b'*') {
            if self.keyword("osc") {
                self.expect(b'(')?;
                modulation = self.real()?;
                self.expect(b'x')?;
                self.expect(b')')?;
            } else {
                self.pos = save;
                return self.error("expected 'osc' after '*'");
            }
        }
        if !(rate.re > 0.0) {
            return Err(Error::Semantic(format!(
                "decay rate at offset {rate_at} must have positive real part, got {rate}"
            )));
        }
        if coeff == Complex64::new(0.0, 0.0) {
            return Ok(None);
        }
        let mut coefficients = vec![Complex64::new(0.0, 0.0); power + 1];
        coefficients[power] = coeff;
        Atom::new(coefficients, rate, modulation).map(Some)
    }

    fn scalar(&mut self) -> Result<Complex64> {
        if self.eat(b'(') {
            let re = self.real()?;
            self.expect(b',')?;
            let im = self.real()?;
            self.expect(b')')?;
            Ok(Complex64::new(re, im))
        } else {
            Ok(Complex64::new(self.real()?, 0.0))
        }
    }

    fn integer(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        match text.parse::<usize>() {
            Ok(n) if n <= 64 => Ok(n),
            _ => {
                self.pos = start;
                self.error("power must be at most 64")
            }
        }
    }

    fn real(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let src = self.src;
        let digits = |mut i: usize| {
            while i < src.len() && src[i].is_ascii_digit() {
                i += 1;
            }
            i
        };
        let mut i = start;
        if i < src.len() && (src[i] == b'+' || src[i] == b'-') {
            i += 1;
        }
        let int_end = digits(i);
        let mut end = int_end;
        if end < src.len() && src[end] == b'.' {
            end = digits(end + 1);
        }
        if end == i || (end == i + 1 && src[i] == b'.') {
            return self.error("expected a number");
        }
        if end < src.len() && (src[end] == b'e' || src[end] == b'E') {
            let mut j = end + 1;
            if j < src.len() && (src[j] == b'+' || src[j] == b'-') {
                j += 1;
            }
            let exp_end = digits(j);
            if exp_end > j {
                end = exp_end;
            }
        }
        let text = std::str::from_utf8(&src[start..end]).unwrap_or_default();
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => {
                self.pos = end;
                Ok(v)
            }
            _ => self.error("invalid number"),
        }
    }
}

pub(super) fn print(p: &Profile, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for atom in p.atoms() {
        for (k, c) in atom.coefficients().iter().enumerate() {
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({:?},{:?})*", c.re, c.im)?;
            if k > 0 {
                write!(f, "x^{k}*")?;
            }
            let r = atom.rate();
            if r.im == 0.0 {
                write!(f, "exp(-{:?}x)", r.re)?;
            } else {
                write!(f, "exp(-({:?},{:?})x)", r.re, r.im)?;
            }
            if atom.modulation() != 0.0 {
                write!(f, "*osc({:?}x)", atom.modulation())?;
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nu() -> ComplexOrder {
        ComplexOrder::real(2.0).unwrap()
    }

    #[test]
    fn simple_exponential() {
        let p = parse_spec("exp(-1x)", nu()).unwrap();
        assert_eq!(p.atoms().len(), 1);
        let a = &p.atoms()[0];
        assert_eq!(a.coefficients(), &[Complex64::new(1.0, 0.0)]);
        assert_eq!(a.rate(), Complex64::new(1.0, 0.0));
        assert_eq!(a.modulation(), 0.0);
    }

    #[test]
    fn two_terms() {
        let p = parse_spec("(2,0)*x^1*exp(-0.5x) + exp(-2x)", nu()).unwrap();
        let degrees: Vec<usize> = p.atoms().iter().map(|a| a.degree()).collect();
        assert_eq!(degrees, vec![1, 0]);
        assert_eq!(p.atoms()[0].coefficients()[1], Complex64::new(2.0, 0.0));
    }

    #[test]
    fn full_grammar() {
        let p = parse_spec(
            " - 3e-1 * x * exp( -(1.5,-0.25) x ) * osc(-2x) + (0,1)*exp(-x)-x^2*exp(-x)",
            nu(),
        )
        .unwrap();
        assert_eq!(p.atoms().len(), 2);
        assert_eq!(p.atoms()[0].coefficients()[1], Complex64::new(-0.3, 0.0));
        assert_eq!(p.atoms()[0].rate(), Complex64::new(1.5, -0.25));
        assert_eq!(p.atoms()[0].modulation(), -2.0);
        assert_eq!(
            p.atoms()[1].coefficients(),
            &[Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)]
        );
        assert!(parse_spec("0", nu()).unwrap().is_zero());
    }

    #[test]
    fn syntax_errors_report_offsets() {
        let offset = |s: &str| match parse_spec(s, nu()) {
            Err(Error::Syntax { offset, .. }) => offset,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(offset("exp("), 4);
        assert_eq!(offset("exp(-1x"), 7);
        assert_eq!(offset("2*exp(-1x) +"), 12);
        assert_eq!(offset("2 exp(-1x)"), 2);
        assert_eq!(offset("exp(-1x)*cos(x)"), 8);
    }

    #[test]
    fn nonpositive_rate_is_semantic_error() {
        assert!(matches!(parse_spec("exp(-0x)", nu()), Err(Error::Semantic(_))));
        assert!(matches!(parse_spec("exp(--1x)", nu()), Err(Error::Semantic(_))));
        assert!(matches!(parse_spec("exp(-(0,1)x)", nu()), Err(Error::Semantic(_))));
    }

    #[test]
    fn round_trip() {
        let text = "(0.1,-2e-30)*x^3*exp(-(1.0,0.5)x)*osc(0.25x) + (1.0,0.0)*exp(-2.0x)";
        let p = parse_spec(text, nu()).unwrap();
        assert_eq!(p.to_string(), text);
        assert_eq!(parse_spec(&p.to_string(), nu()).unwrap(), p);
    }
}
