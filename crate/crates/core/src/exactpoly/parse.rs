//! Plain-text polynomial format.
//!
//! A polynomial prints as a sum of terms in descending graded-lex order,
//! each term `c*x^i*y^j*...` with `c` an exact `num` or `num/den` rational.
//! `parse` accepts exactly this shape (plus optional whitespace and terms
//! with an implicit unit coefficient), so print -> parse -> print is
//! bit-exact.

use std::fmt;

use num::{BigInt, One, Signed};

use crate::error::Error;
use crate::Result;

use super::poly::{MultiPoly, Rat, VarSet};

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.vars().names();
        for (k, (mono, coeff)) in self.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
            let neg = coeff.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let c = coeff.abs();
            write!(f, "{}", format_rat(&c))?;
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e == 1 {
                    write!(f, "*{}", names[i])?;
                } else {
                    write!(f, "*{}^{}", names[i], e)?;
                }
            }
        }
        Ok(())
    }
}

fn format_rat(c: &Rat) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Formats a rational as `num` or `num/den`.
pub fn rat_to_string(c: &Rat) -> String {
    if c.is_negative() {
        format!("-{}", format_rat(&c.abs()))
    } else {
        format_rat(c)
    }
}

/// Parses `num`, `-num`, or `num/den` exactly.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    t.parse::<Rat>().map_err(|e| Error::Parse {
        offset: 0,
        message: format!("bad rational `{t}`: {e}"),
    })
}

/// Parses the textual polynomial format over the given variable set.
pub fn parse_poly(vars: &VarSet, input: &str) -> Result<MultiPoly> {
    let mut p = Parser {
        vars,
        src: input.as_bytes(),
        pos: 0,
    };
    p.parse()
}

struct Parser<'a> {
    vars: &'a VarSet,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn parse(&mut self) -> Result<MultiPoly> {
        self.skip_ws();
        let mut acc = MultiPoly::zero(self.vars);
        if self.peek() == Some(b'0') && self.pos + 1 == self.src.len() {
            return Ok(acc);
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                None if !first => break,
                None => return self.err("empty polynomial"),
                _ if first => 1,
                _ => return self.err("expected `+` or `-` between terms"),
            };
            first = false;
            let term = self.parse_term()?;
            let term = if sign < 0 { term.neg() } else { term };
            acc = acc.add(&term);
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<MultiPoly> {
        self.skip_ws();
        let mut coeff = Rat::one();
        let mut exps = vec![0u32; self.vars.len()];
        let mut saw_factor = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.parse_number()?;
            saw_factor = true;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.skip_ws();
                }
                Some(c) if c.is_ascii_alphabetic() && !saw_factor => {}
                _ => break,
            }
            let name = self.parse_ident()?;
            let idx = self
                .vars
                .index(&name)
                .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            let e = if self.peek() == Some(b'^') {
                self.pos += 1;
                let n = self.parse_number()?;
                if !n.denom().is_one() || n.is_negative() {
                    return self.err("exponent must be a nonnegative integer");
                }
                let v: BigInt = n.numer().clone();
                u32::try_from(v).map_err(|_| Error::Parse {
                    offset: self.pos,
                    message: "exponent too large".into(),
                })?
            } else {
                1
            };
            exps[idx] += e;
            saw_factor = true;
        }
        if !saw_factor {
            return self.err("expected a term");
        }
        Ok(MultiPoly::from_terms(self.vars, [(exps, coeff)]))
    }

    fn parse_number(&mut self) -> Result<Rat> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        let numer = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let dstart = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == dstart {
                return self.err("expected a denominator");
            }
            let denom = std::str::from_utf8(&self.src[dstart..self.pos]).unwrap();
            parse_rat(&format!("{numer}/{denom}"))
        } else {
            parse_rat(numer)
        }
    }

    fn parse_ident(&mut self) -> Result<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a variable name");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::poly::rat;

    #[test]
    fn print_parse_roundtrip() {
        let v = VarSet::xyz();
        let x = MultiPoly::var(&v, 0);
        let y = MultiPoly::var(&v, 1);
        let z = MultiPoly::var(&v, 2);
        let f = x
            .pow(3)
            .scale(&rat(80, 1))
            .sub(&x.pow(2).mul(&y).scale(&rat(107, 1)))
            .add(&z.scale(&rat(-3, 2)))
            .add(&MultiPoly::constant(&v, rat(7, 5)));
        let s = f.to_string();
        let g = parse_poly(&v, &s).unwrap();
        assert_eq!(f, g);
        assert_eq!(g.to_string(), s);
    }

    #[test]
    fn parse_zero_and_errors() {
        let v = VarSet::xyz();
        assert!(parse_poly(&v, "0").unwrap().is_zero());
        assert!(parse_poly(&v, "q + 1").is_err());
        assert!(parse_poly(&v, "").is_err());
    }

    #[test]
    fn parse_implicit_unit_coefficient() {
        let v = VarSet::xyz();
        let f = parse_poly(&v, "x^2*y - z").unwrap();
        let x = MultiPoly::var(&v, 0);
        let y = MultiPoly::var(&v, 1);
        let z = MultiPoly::var(&v, 2);
        assert_eq!(f, x.pow(2).mul(&y).sub(&z));
    }
}
