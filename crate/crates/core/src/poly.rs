//! Polynomials `f_0 + f_1 X + ... + f_n X^n` over a possibly noncommutative
//! ring, with `X` central.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Ring, Value};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcPoly {
    ring: Ring,
    coeffs: Vec<Value>,
}

impl NcPoly {
    /// Coefficients low to high; trailing zeros are stripped.
    pub fn new(ring: Ring, coeffs: Vec<Value>) -> Result<Self> {
        for c in &coeffs {
            ring.validate(c)?;
        }
        Ok(NcPoly::trusted(ring, coeffs))
    }

    pub(crate) fn trusted(ring: Ring, mut coeffs: Vec<Value>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        NcPoly { ring, coeffs }
    }

    pub fn zero(ring: &Ring) -> Self {
        NcPoly { ring: ring.clone(), coeffs: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: Value) -> Self {
        NcPoly::trusted(ring.clone(), vec![c])
    }

    pub fn one(ring: &Ring) -> Self {
        NcPoly::constant(ring, ring.one())
    }

    /// `X - a`.
    pub fn linear(ring: &Ring, a: &Value) -> Self {
        NcPoly::trusted(ring.clone(), vec![ring.neg(a), ring.one()])
    }

    /// `c X^k`.
    pub fn monomial(ring: &Ring, c: Value, k: usize) -> Self {
        let mut coeffs = vec![ring.zero(); k];
        coeffs.push(c);
        NcPoly::trusted(ring.clone(), coeffs)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Value] {
        &self.coeffs
    }

    /// `f_i`, zero above the degree.
    pub fn coeff(&self, i: usize) -> Value {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Value> {
        self.coeffs.last()
    }

    fn check(&self, other: &NcPoly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.ring.to_string(), right: other.ring.to_string() })
        }
    }

    pub fn add(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.ring.add(&self.coeff(i), &other.coeff(i))).collect();
        Ok(NcPoly::trusted(self.ring.clone(), coeffs))
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly::trusted(self.ring.clone(), self.coeffs.iter().map(|c| self.ring.neg(c)).collect())
    }

    pub fn sub(&self, other: &NcPoly) -> Result<NcPoly> {
        self.add(&other.neg())
    }

    /// `(f g)_k = sum_{i+j=k} f_i g_j`, with `f`'s coefficient on the left.
    pub fn mul(&self, other: &NcPoly) -> Result<NcPoly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(NcPoly::zero(&self.ring));
        }
        let r = &self.ring;
        let mut coeffs = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, f) in self.coeffs.iter().enumerate() {
            if r.is_zero(f) {
                continue;
            }
            for (j, g) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = r.add(&coeffs[i + j], &r.mul(f, g));
            }
        }
        Ok(NcPoly::trusted(r.clone(), coeffs))
    }

    /// `c f`, multiplying every coefficient on the left.
    pub fn scale_left(&self, c: &Value) -> NcPoly {
        NcPoly::trusted(self.ring.clone(), self.coeffs.iter().map(|f| self.ring.mul(c, f)).collect())
    }

    /// The unique `(q, r)` with `f = q (X - a) + r`.
    pub fn right_divide_linear(&self, a: &Value) -> Result<(NcPoly, Value)> {
        self.ring.validate(a)?;
        let r = &self.ring;
        let Some(n) = self.degree() else {
            return Ok((NcPoly::zero(r), r.zero()));
        };
        let mut q = vec![r.zero(); n];
        let mut carry = self.coeffs[n].clone();
        for j in (1..=n).rev() {
            q[j - 1] = carry;
            carry = r.add(&self.coeffs[j - 1], &r.mul(&q[j - 1], a));
        }
        Ok((NcPoly::trusted(r.clone(), q), carry))
    }

    /// The unique `(q, r)` with `f = (X - a) q + r`.
    pub fn left_divide_linear(&self, a: &Value) -> Result<(NcPoly, Value)> {
        self.ring.validate(a)?;
        let r = &self.ring;
        let Some(n) = self.degree() else {
            return Ok((NcPoly::zero(r), r.zero()));
        };
        let mut q = vec![r.zero(); n];
        let mut carry = self.coeffs[n].clone();
        for j in (1..=n).rev() {
            q[j - 1] = carry;
            carry = r.add(&self.coeffs[j - 1], &r.mul(a, &q[j - 1]));
        }
        Ok((NcPoly::trusted(r.clone(), q), carry))
    }

    /// `sum f_i a^i`.
    pub fn right_eval(&self, a: &Value) -> Result<Value> {
        self.ring.validate(a)?;
        let r = &self.ring;
        let mut power = r.one();
        let mut acc = r.zero();
        for f in &self.coeffs {
            acc = r.add(&acc, &r.mul(f, &power));
            power = r.mul(&power, a);
        }
        Ok(acc)
    }

    /// `sum a^i f_i`.
    pub fn left_eval(&self, a: &Value) -> Result<Value> {
        self.ring.validate(a)?;
        let r = &self.ring;
        let mut power = r.one();
        let mut acc = r.zero();
        for f in &self.coeffs {
            acc = r.add(&acc, &r.mul(&power, f));
            power = r.mul(&power, a);
        }
        Ok(acc)
    }

    /// Index of the first coefficient that does not commute with `a`.
    pub fn first_noncommuting(&self, a: &Value) -> Option<usize> {
        self.coeffs.iter().position(|f| !self.ring.commute(f, a))
    }

    pub fn commutes_with_element(&self, a: &Value) -> bool {
        self.first_noncommuting(a).is_none()
    }

    /// Value of the substitution homomorphism `X -> a`, defined when every
    /// coefficient commutes with `a`.
    pub fn eval_commuting(&self, a: &Value) -> Result<Value> {
        if let Some(index) = self.first_noncommuting(a) {
            return Err(Error::Hypothesis { index, with: a.to_string() });
        }
        self.right_eval(a)
    }

    /// `f g == g f` as polynomials.
    pub fn commutes_with(&self, other: &NcPoly) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// Reduces every coefficient into `target` (for example Z into Z/n).
    pub fn reduce_into(&self, target: &Ring) -> Result<NcPoly> {
        let coeffs = self.coeffs.iter().map(|c| target.reduce_from(&self.ring, c)).collect::<Result<_>>()?;
        Ok(NcPoly::trusted(target.clone(), coeffs))
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let r = &self.ring;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if r.is_zero(c) {
                continue;
            }
            let (sign, body) = match r.scalar_multiple(c) {
                Some(s) => {
                    let base = r.scalar_base().expect("scalar multiples live over a scalar base");
                    let (sign, mag) = if is_negative_scalar(&s) { ("-", base.neg(&s)) } else { ("+", s) };
                    (sign, if base.is_one(&mag) { String::new() } else { mag.to_string() })
                }
                None => ("+", c.to_string()),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let x = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            match (body.is_empty(), x.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{x}")?,
                (false, true) => write!(f, "{body}")?,
                (false, false) => write!(f, "{body}*{x}")?,
            }
        }
        Ok(())
    }
}

fn is_negative_scalar(v: &Value) -> bool {
    use num_traits::Signed;
    match v {
        Value::Int(i) => i.is_negative(),
        Value::Rat(q) => q.is_negative(),
        _ => false,
    }
}
