//! Text and JSON forms of polynomials.
//!
//! Surface grammar (scalar coefficients only, embedded as `c * 1`):
//!
//! ```text
//! poly  := term (("+" | "-") term)*
//! term  := ["-"] (coeff ["*" mono] | mono)
//! mono  := "X" ["^" digits]
//! coeff := digits ["/" digits]
//! ```
//!
//! Whitespace is free between tokens. Repeated powers are summed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::poly::NcPoly;
use crate::ring::Ring;

pub fn parse_poly(ring: &Ring, text: &str) -> Result<NcPoly> {
    let mut p = Parser { text: text.as_bytes(), pos: 0 };
    let terms = p.poly()?;
    let top = terms.iter().map(|(k, _, _)| *k).max().unwrap_or(0);
    let mut sums = vec![BigRational::zero(); top + 1];
    for (k, c, _) in &terms {
        sums[*k] += c;
    }
    let mut coeffs = Vec::with_capacity(sums.len());
    for (k, c) in sums.iter().enumerate() {
        let at = terms.iter().find(|(d, _, _)| *d == k).map_or(0, |t| t.2);
        coeffs.push(ring.from_rational(c).map_err(|e| Error::parse(at, e.to_string()))?);
    }
    NcPoly::new(ring.clone(), coeffs)
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn fail<T>(&mut self, what: &str) -> Result<T> {
        let found = match self.peek() {
            Some(b) => format!("`{}`", b as char),
            None => "end of input".to_string(),
        };
        Err(Error::parse(self.pos, format!("expected {what}, found {found}")))
    }

    /// (power, coefficient, start position) per term.
    fn poly(&mut self) -> Result<Vec<(usize, BigRational, usize)>> {
        let mut terms = Vec::new();
        let mut sign = BigRational::one();
        if self.eat(b'-') {
            sign = -sign;
        } else {
            self.eat(b'+');
        }
        loop {
            let start = self.pos;
            let (k, c) = self.term()?;
            terms.push((k, sign * c, start));
            match self.peek() {
                None => return Ok(terms),
                Some(b'+') => sign = BigRational::one(),
                Some(b'-') => sign = -BigRational::one(),
                Some(b'*') => {
                    return Err(Error::parse(self.pos, "products are not part of the grammar; expand to a sum of monomials"))
                }
                Some(_) => return self.fail("`+`, `-` or end of input"),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(usize, BigRational)> {
        match self.peek() {
            Some(b'X') => Ok((self.mono()?, BigRational::one())),
            Some(b) if b.is_ascii_digit() => {
                let c = self.coeff()?;
                if self.eat(b'*') {
                    if self.peek() != Some(b'X') {
                        return self.fail("`X`");
                    }
                    Ok((self.mono()?, c))
                } else {
                    Ok((0, c))
                }
            }
            _ => self.fail("a coefficient or `X`"),
        }
    }

    fn mono(&mut self) -> Result<usize> {
        self.pos += 1;
        if self.eat(b'^') {
            self.skip_ws();
            let at = self.pos;
            let d = self.digits()?;
            d.try_into().map_err(|_| Error::parse(at, "exponent out of range"))
        } else {
            Ok(1)
        }
    }

    fn coeff(&mut self) -> Result<BigRational> {
        let p = self.digits()?;
        if self.eat(b'/') {
            self.skip_ws();
            let at = self.pos;
            let q = self.digits()?;
            if q.is_zero() {
                return Err(Error::parse(at, "zero denominator"));
            }
            Ok(BigRational::new(p, q))
        } else {
            Ok(BigRational::from_integer(p))
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("digits");
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("ascii digits parse"))
    }
}

impl NcPoly {
    /// `{"ring": <spec>, "coeffs": [low .. high]}`.
    pub fn to_json(&self) -> Json {
        json!({
            "ring": self.ring().to_string(),
            "coeffs": self.coeffs().iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(json: &Json) -> Result<NcPoly> {
        let ring = json_ring(json)?;
        let coeffs = json
            .get("coeffs")
            .and_then(Json::as_array)
            .ok_or_else(|| Error::Json("polynomial needs a `coeffs` array".into()))?;
        let coeffs = coeffs.iter().map(|c| ring.parse_value(c)).collect::<Result<_>>()?;
        NcPoly::new(ring, coeffs)
    }
}

pub(crate) fn json_ring(json: &Json) -> Result<Ring> {
    let spec = json
        .get("ring")
        .and_then(Json::as_str)
        .ok_or_else(|| Error::Json("missing `ring` string".into()))?;
    Ring::parse_spec(spec)
}

/// A polynomial argument: JSON when it starts with `{`, otherwise the
/// surface grammar over `ring`.
pub fn parse_poly_arg(ring: Option<&Ring>, text: &str) -> Result<NcPoly> {
    if text.trim_start().starts_with('{') {
        let json: Json = serde_json::from_str(text).map_err(|e| Error::parse(e.column().saturating_sub(1), e.to_string()))?;
        let p = NcPoly::from_json(&json)?;
        if let Some(r) = ring {
            if r != p.ring() {
                return Err(Error::RingMismatch { left: r.to_string(), right: p.ring().to_string() });
            }
        }
        return Ok(p);
    }
    let ring = ring.ok_or_else(|| Error::Json("a ring is required for the text form".into()))?;
    parse_poly(ring, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars_embed_as_multiples_of_one() {
        let ring = Ring::parse_spec("Mat:3:Z").unwrap();
        let p = parse_poly(&ring, "X^3 - 4").unwrap();
        assert_eq!(p.coeffs(), &[ring.from_int(-4), ring.zero(), ring.zero(), ring.one()]);
        assert_eq!(parse_poly(&ring, "X^0").unwrap(), NcPoly::one(&ring));
    }

    #[test]
    fn products_are_rejected_with_position() {
        let ring = Ring::int();
        match parse_poly(&ring, "X^2*(X-1)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly(&ring, "X^3 - "), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse_poly(&ring, "2 X"), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn rationals_and_repeats() {
        let q = Ring::rat();
        let p = parse_poly(&q, "1/2*X + X - 3/4 + 1").unwrap();
        assert_eq!(p.to_string(), "3/2*X + 1/4");
        assert!(parse_poly(&Ring::int(), "1/2*X").is_err());
        let z5 = Ring::residue(5).unwrap();
        assert_eq!(parse_poly(&z5, "1/2").unwrap().coeffs(), &[crate::Value::Residue(3)]);
    }

    #[test]
    fn text_round_trip() {
        for (spec, text) in [("Z", "X^3 - X^2"), ("Mat:3:Z", "X^3 - 4"), ("Q", "-X^2 + 1/3*X"), ("Table:@ut2:Zmod:5", "X^2 + 3")] {
            let ring = Ring::parse_spec(spec).unwrap();
            let p = parse_poly(&ring, text).unwrap();
            assert_eq!(p.to_string(), text);
            assert_eq!(parse_poly(&ring, &p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn json_round_trip() {
        let ring = Ring::parse_spec("UT:2:Q").unwrap();
        let a = ring.parse_value(&json!([[1, "1/2"], [0, -3]])).unwrap();
        let p = NcPoly::linear(&ring, &a);
        let back = NcPoly::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
        let text = p.to_json().to_string();
        assert_eq!(parse_poly_arg(None, &text).unwrap(), p);
        assert!(parse_poly_arg(Some(&Ring::int()), &text).is_err());
    }
}
