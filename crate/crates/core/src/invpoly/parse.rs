//! Recursive-descent parser for coefficient-free polynomial text.
//!
//! ```text
//! poly   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := var ('^' uint)?
//! var    := 'x' uint
//! ```

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, VarSet};
use crate::scalar::{CycField, CycNum};

/// Monomials in input order together with the variable count (largest index).
pub fn parse_monomials(text: &str) -> Result<(usize, Vec<Monomial>)> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let raw = parser.poly()?;
    let n = raw
        .iter()
        .flat_map(|t| t.iter().map(|&(v, _)| v + 1))
        .max()
        .unwrap_or(0);
    let monomials = raw
        .into_iter()
        .map(|factors| {
            let mut exps = vec![0u32; n];
            for (v, e) in factors {
                exps[v] += e;
            }
            Monomial::from_exponents(exps)
        })
        .collect();
    Ok((n, monomials))
}

/// Parses text into a polynomial with all coefficients 1.
pub fn parse(text: &str) -> Result<Poly> {
    let (n, monomials) = parse_monomials(text)?;
    let field = CycField::get(1);
    let mut p = Poly::zero(VarSet::single(n), &field);
    for (k, m) in monomials.iter().enumerate() {
        if monomials[..k].contains(m) {
            // a repeated monomial would carry coefficient 2
            return Err(Error::NonUnitCoefficient(0));
        }
        p.add_term(m.clone(), CycNum::one(&field));
    }
    Ok(p)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

type Factor = (usize, u32);

impl Parser<'_> {
    fn poly(&mut self) -> Result<Vec<Vec<Factor>>> {
        let mut terms = vec![self.term()?];
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Ok(terms),
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                Some(c) => return Err(self.error(format!("unexpected '{}'", c as char))),
            }
        }
    }

    fn term(&mut self) -> Result<Vec<Factor>> {
        let mut factors = vec![self.factor()?];
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                factors.push(self.factor()?);
            } else {
                return Ok(factors);
            }
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        self.skip_ws();
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let idx = self.uint()?;
                if idx == 0 {
                    return Err(self.error("variables are numbered from x1".into()));
                }
                self.skip_ws();
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    self.uint()?
                } else {
                    1
                };
                let exp =
                    u32::try_from(exp).map_err(|_| self.error("exponent too large".into()))?;
                Ok((idx - 1, exp))
            }
            Some(c) if c.is_ascii_digit() || c == b'-' => Err(Error::NonUnitCoefficient(self.pos)),
            Some(c) => Err(self.error(format!("expected variable, found '{}'", c as char))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }

    fn uint(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits".into()));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("number too large".into()))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error(&self, msg: String) -> Error {
        Error::SyntaxError { pos: self.pos, msg }
    }
}
