//! Text DSL for rings, polynomials and maps.
//!
//! ```text
//! field := "QQ" | "F" <prime>
//! ring  := field "[" ident ("," ident)* "]" [ "/" "(" [poly ("," poly)*] ")" ]
//! poly  := ["+"|"-"] term (("+"|"-") term)*
//! term  := [uint ["/" uint]] ( ["*"] ident ["^" uint] )*
//! map   := "{" ident "->" poly ("," ident "->" poly)* "}"
//! ```
//!
//! Whitespace is insignificant. Identifiers are an ASCII letter followed by
//! ASCII alphanumerics.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Field, Monomial, PolyRing, Polynomial, RingPresentation};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { src: text.as_bytes(), pos: 0 }
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

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
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
            match self.peek() {
                Some(found) => self.err(format!("expected `{}`, found `{}`", c as char, found as char)),
                None => self.err(format!("expected `{}`, found end of input", c as char)),
            }
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return self.err("expected identifier"),
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        Ok((start, String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()))
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected unsigned integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse::<BigInt>().unwrap())
    }

    fn small_uint(&mut self) -> Result<u32> {
        let start = self.pos;
        let n = self.uint()?;
        u32::try_from(n).map_err(|_| Error::Syntax { pos: start, msg: "exponent too large".into() })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn parse_field(c: &mut Cursor) -> Result<Field> {
    if c.eat_str("QQ") {
        return Ok(Field::Rational);
    }
    if c.eat_str("F") {
        let start = c.pos;
        let p = c.uint()?;
        let p = u64::try_from(p).map_err(|_| Error::NonPrimeModulus(u64::MAX))?;
        return Field::prime(p).map_err(|e| match e {
            Error::NonPrimeModulus(_) => e,
            _ => Error::Syntax { pos: start, msg: e.to_string() },
        });
    }
    c.err("expected field `QQ` or `F<prime>`")
}

fn parse_term(c: &mut Cursor, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let field = ring.field();
    let mut coef = field.one();
    let mut saw_coef = false;
    if matches!(c.peek(), Some(d) if d.is_ascii_digit()) {
        let num = c.uint()?;
        let den = if c.eat(b'/') { c.uint()? } else { BigInt::from(1) };
        coef = match field.from_fraction(&num, &den) {
            Some(s) => s,
            None => return c.err("coefficient denominator vanishes in the field"),
        };
        saw_coef = true;
    }
    let mut exps = vec![0u32; ring.nvars()];
    let mut saw_factor = false;
    loop {
        let star = c.peek() == Some(b'*');
        if star {
            if !saw_coef && !saw_factor {
                return c.err("unexpected `*`");
            }
            c.pos += 1;
        } else if !matches!(c.peek(), Some(l) if l.is_ascii_alphabetic()) {
            break;
        }
        let (at, name) = c.ident()?;
        let idx = match ring.var_index(&name) {
            Some(i) => i,
            None => {
                let _ = at;
                return Err(Error::UnknownVariable(name));
            }
        };
        let e = if c.eat(b'^') { c.small_uint()? } else { 1 };
        exps[idx] += e;
        saw_factor = true;
    }
    if !saw_coef && !saw_factor {
        return c.err("expected a term");
    }
    Ok(Polynomial::term(ring, Monomial::new(exps), coef))
}

fn parse_poly_at(c: &mut Cursor, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(ring);
    let mut negate = if c.eat(b'-') {
        true
    } else {
        c.eat(b'+');
        false
    };
    loop {
        let t = parse_term(c, ring)?;
        acc = if negate { acc.sub(&t) } else { acc.add(&t) };
        if c.eat(b'+') {
            negate = false;
        } else if c.eat(b'-') {
            negate = true;
        } else {
            break;
        }
    }
    Ok(acc)
}

/// Parses a ring such as `QQ[x,y]/(x*y)` and validates the presentation.
pub fn parse_ring(text: &str) -> Result<Arc<RingPresentation>> {
    let mut c = Cursor::new(text);
    let field = parse_field(&mut c)?;
    c.expect(b'[')?;
    let mut vars: Vec<String> = Vec::new();
    loop {
        let (at, name) = c.ident()?;
        if vars.contains(&name) {
            return Err(Error::Syntax { pos: at, msg: format!("variable `{name}` declared twice") });
        }
        vars.push(name);
        if !c.eat(b',') {
            break;
        }
    }
    c.expect(b']')?;
    let ring = PolyRing::new(field, vars);
    let mut gens = Vec::new();
    if c.eat(b'/') {
        c.expect(b'(')?;
        if !c.eat(b')') {
            loop {
                gens.push(parse_poly_at(&mut c, &ring)?);
                if !c.eat(b',') {
                    break;
                }
            }
            c.expect(b')')?;
        }
    }
    if !c.at_end() {
        return c.err("trailing input");
    }
    RingPresentation::new(ring, gens)
}

/// Parses a polynomial in the variables of `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let mut c = Cursor::new(text);
    let p = parse_poly_at(&mut c, ring)?;
    if !c.at_end() {
        return c.err("trailing input");
    }
    Ok(p)
}

/// Parses `{x->..., y->...}`: one image per source variable, written in the
/// target's variables. Returns images in source-variable order.
pub fn parse_map(text: &str, source: &RingPresentation, target: &RingPresentation) -> Result<Vec<Polynomial>> {
    let mut c = Cursor::new(text);
    c.expect(b'{')?;
    let mut images: Vec<Option<Polynomial>> = vec![None; source.nvars()];
    if !c.eat(b'}') {
        loop {
            let (_, name) = c.ident()?;
            let idx = source.ring().var_index(&name).ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            if !c.eat_str("->") {
                return c.err("expected `->`");
            }
            let img = parse_poly_at(&mut c, target.ring())?;
            if images[idx].is_some() {
                return Err(Error::DuplicateAssignment(name));
            }
            images[idx] = Some(img);
            if !c.eat(b',') {
                break;
            }
        }
        c.expect(b'}')?;
    }
    if !c.at_end() {
        return c.err("trailing input");
    }
    images
        .into_iter()
        .enumerate()
        .map(|(i, img)| img.ok_or_else(|| Error::MissingAssignment(source.var_names()[i].clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_worked_rings() {
        let r = parse_ring("F2[x]/(x^2)").unwrap();
        assert_eq!(r.field(), Field::Prime(2));
        assert_eq!((r.nvars(), r.generators().len()), (1, 1));
        let r = parse_ring("QQ[x,y]/(x*y)").unwrap();
        assert_eq!((r.field(), r.nvars()), (Field::Rational, 2));
        let r = parse_ring("QQ[x]/()").unwrap();
        assert!(r.generators().is_empty());
        let r = parse_ring(" QQ [ x , y ] ").unwrap();
        assert_eq!(r.to_dsl(), "QQ[x,y]");
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(matches!(parse_ring("F4[x]/(x^2)"), Err(Error::NonPrimeModulus(4))));
        assert!(matches!(parse_ring("QQ[x,y]/(x^2+y)"), Err(Error::Inhomogeneous(_))));
        assert!(matches!(parse_ring("QQ[x,y]/(x)"), Err(Error::NotMinimal(_))));
        assert!(matches!(parse_ring("QQ[x]/(z^2)"), Err(Error::UnknownVariable(v)) if v == "z"));
        assert!(matches!(parse_ring("QQ[x]/(x^2"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_ring("ZZ[x]"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_ring("QQ[x,x]"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn coefficients_and_juxtaposition() {
        let r = parse_ring("QQ[x,y]").unwrap();
        let p = parse_polynomial("-2x^2 + 1/2*x*y - y x", r.ring()).unwrap();
        assert_eq!(p.to_string(), "-2*x^2 - 1/2*x*y");
        let r7 = parse_ring("F7[x]").unwrap();
        assert_eq!(parse_polynomial("1/2 x", r7.ring()).unwrap().to_string(), "4*x");
        assert!(parse_polynomial("1/7 x", r7.ring()).is_err());
    }

    #[test]
    fn map_parsing() {
        let r = parse_ring("QQ[x,y]/(y^3)").unwrap();
        let imgs = parse_map("{x->x, y->y^2}", &r, &r).unwrap();
        assert_eq!(imgs.iter().map(|p| p.to_string()).collect::<Vec<_>>(), ["x", "y^2"]);
        let imgs = parse_map("{y->y,x->x}", &r, &r).unwrap();
        assert_eq!(imgs, r.variables());
        assert!(matches!(parse_map("{x->x}", &r, &r), Err(Error::MissingAssignment(v)) if v == "y"));
        assert!(matches!(parse_map("{x->x,x->y,y->y}", &r, &r), Err(Error::DuplicateAssignment(_))));
        assert!(matches!(parse_map("{x->z,y->y}", &r, &r), Err(Error::UnknownVariable(_))));
        let f2 = parse_ring("F2[x]/(x^2)").unwrap();
        assert_eq!(parse_map("{x->x^2}", &f2, &f2).unwrap()[0].to_string(), "x^2");
    }
}
