//! Element literals: integer polynomials in `z`, standing for `ζ_p`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := integer | 'z' | '(' expr ')'
//! ```

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::ring::{CycloElement, CycloRing};
use super::PadicError;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: CycloRing,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> PadicError {
        PadicError::Parse {
            pos: self.pos,
            message: msg.into(),
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

    fn integer(&mut self) -> Result<BigInt, PadicError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(BigInt::from_str(s).unwrap())
    }

    fn expr(&mut self) -> Result<CycloElement, PadicError> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<CycloElement, PadicError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<CycloElement, PadicError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<CycloElement, PadicError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let e = e.to_u64().ok_or_else(|| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CycloElement, PadicError> {
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                Ok(self.ring.zeta())
            }
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
                let n = self.integer()?;
                Ok(self.ring.from_bigint(&n))
            }
            Some(c) => Err(self.err(format!("unexpected {:?}", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Evaluates a literal in `ring`. The result is exact, so it carries the
/// ring's full coefficient precision.
pub fn parse_element(text: &str, ring: &CycloRing) -> Result<CycloElement, PadicError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring: *ring,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Canonical literal with balanced coefficients, e.g. `4 - 2*z`.
pub fn to_literal(x: &CycloElement) -> String {
    let mut out = String::new();
    for (i, c) in x.balanced_coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let one = mag == BigInt::from(1);
        match i {
            0 => out.push_str(&mag.to_string()),
            _ => {
                if !one {
                    out.push_str(&format!("{mag}*"));
                }
                if i == 1 {
                    out.push('z');
                } else {
                    out.push_str(&format!("z^{i}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_expressions() {
        let r = CycloRing::with_default_precision(3).unwrap();
        let t = parse_element("2 + 2*(1 - z)", &r).unwrap();
        assert_eq!(t, r.from_int(4).sub(&r.zeta().scale_int(2)));
        assert_eq!(to_literal(&t), "4 - 2*z");
        assert_eq!(parse_element("z^3", &r).unwrap(), r.one());
        assert_eq!(parse_element("-z^2", &r).unwrap(), r.one().add(&r.zeta()));
        assert_eq!(to_literal(&r.zero()), "0");
        assert_eq!(to_literal(&r.zeta().neg()), "-z");
    }

    #[test]
    fn round_trip() {
        let r = CycloRing::with_default_precision(7).unwrap();
        let x = r.from_int(-12).add(&r.zeta_pow(3).scale_int(5)).sub(&r.zeta_pow(5));
        assert_eq!(parse_element(&to_literal(&x), &r).unwrap(), x);
    }

    #[test]
    fn errors() {
        let r = CycloRing::with_default_precision(3).unwrap();
        assert!(matches!(parse_element("2 +", &r), Err(PadicError::Parse { .. })));
        assert!(matches!(parse_element("(z", &r), Err(PadicError::Parse { .. })));
        assert!(matches!(parse_element("2 y", &r), Err(PadicError::Parse { pos: 2, .. })));
    }
}
