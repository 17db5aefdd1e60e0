use num_traits::{One, Signed, Zero};

use super::{residue_inverse, Ring, RingKind, Value};
use crate::error::{Error, Result};
use crate::linalg::{adjugate, determinant};

/// Largest ring searched exhaustively for inverses when no determinant
/// criterion applies.
const SEARCH_LIMIT: u128 = 1 << 20;

impl Ring {
    pub fn is_unit(&self, v: &Value) -> Result<bool> {
        match self.inverse(v) {
            Ok(_) => Ok(true),
            Err(Error::NotInvertible(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Two-sided inverse. Matrices over a commutative base use
    /// `det^-1 * adj`; table-algebra elements invert their left-regular
    /// matrix; other finite rings are searched.
    pub fn inverse(&self, v: &Value) -> Result<Value> {
        let not = || Error::NotInvertible(format!("{v} in {self}"));
        match (self.kind(), v) {
            (RingKind::Int, Value::Int(x)) => {
                if x.abs().is_one() {
                    Ok(v.clone())
                } else {
                    Err(not())
                }
            }
            (RingKind::Rat, Value::Rat(x)) => {
                if x.is_zero() {
                    Err(not())
                } else {
                    Ok(Value::Rat(x.recip()))
                }
            }
            (RingKind::Residue(n), Value::Residue(x)) => residue_inverse(*x, *n).map(Value::Residue).ok_or_else(not),
            (RingKind::Matrix { size, base } | RingKind::UpperTriangular { size, base }, Value::Matrix(xs))
                if base.is_commutative() =>
            {
                let k = *size;
                let m: Vec<Vec<Value>> = xs.chunks(k).map(<[Value]>::to_vec).collect();
                let det = determinant(base, &m);
                let d_inv = base.inverse(&det).map_err(|_| not())?;
                let adj = adjugate(base, &m);
                Ok(Value::Matrix(adj.into_iter().flatten().map(|x| base.mul(&d_inv, &x)).collect()))
            }
            (RingKind::Table(t), _) => {
                let base = t.base();
                let l = self.left_regular(v).expect("table algebras have coordinates");
                let det = determinant(base, &l);
                let d_inv = base.inverse(&det).map_err(|_| not())?;
                let adj = adjugate(base, &l);
                let unit = t.unit();
                let coords: Vec<Value> = adj
                    .iter()
                    .map(|row| {
                        let s = row.iter().zip(unit).fold(base.zero(), |acc, (a, u)| base.add(&acc, &base.mul(a, u)));
                        base.mul(&d_inv, &s)
                    })
                    .collect();
                Ok(self.from_coords(&coords))
            }
            _ => self.search_inverse(v).and_then(|w| w.ok_or_else(not)),
        }
    }

    fn search_inverse(&self, v: &Value) -> Result<Option<Value>> {
        let size = self.size().ok_or_else(|| Error::Unsupported(format!("inverse in infinite ring {self}")))?;
        if size > SEARCH_LIMIT {
            return Err(Error::TooLarge { estimate: size, limit: SEARCH_LIMIT });
        }
        Ok(self.elements()?.find(|w| self.is_one(&self.mul(v, w)) && self.is_one(&self.mul(w, v))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn brute_unit(ring: &Ring, v: &Value) -> bool {
        ring.elements().unwrap().any(|w| ring.is_one(&ring.mul(v, &w)) && ring.is_one(&ring.mul(&w, v)))
    }

    #[test]
    fn determinant_criterion_matches_search() {
        for spec in ["Zmod:12", "Mat:2:Zmod:2", "Mat:2:Zmod:3", "UT:2:Zmod:4", "Table:@ut2:Zmod:3"] {
            let ring = Ring::parse_spec(spec).unwrap();
            for v in ring.elements().unwrap() {
                let expected = brute_unit(&ring, &v);
                assert_eq!(ring.is_unit(&v).unwrap(), expected, "{spec} {v}");
                if expected {
                    let w = ring.inverse(&v).unwrap();
                    assert!(ring.is_one(&ring.mul(&v, &w)) && ring.is_one(&ring.mul(&w, &v)));
                }
            }
        }
    }

    #[test]
    fn nested_matrices_fall_back_to_search() {
        let ring = Ring::parse_spec("Mat:1:Mat:2:Zmod:2").unwrap();
        let units = ring.elements().unwrap().filter(|v| ring.is_unit(v).unwrap()).count();
        assert_eq!(units, 6);
    }

    #[test]
    fn rational_matrix_inverse() {
        let ring = Ring::parse_spec("Mat:2:Q").unwrap();
        let v = ring.parse_value(&json!([[1, 2], [3, 4]])).unwrap();
        let w = ring.inverse(&v).unwrap();
        assert_eq!(w, ring.parse_value(&json!([[-2, 1], ["3/2", "-1/2"]])).unwrap());
        let singular = ring.parse_value(&json!([[1, 2], [2, 4]])).unwrap();
        assert!(!ring.is_unit(&singular).unwrap());
    }

    #[test]
    fn integer_units() {
        let z = Ring::int();
        assert!(z.is_unit(&z.from_int(-1)).unwrap());
        assert!(!z.is_unit(&z.from_int(2)).unwrap());
    }
}
