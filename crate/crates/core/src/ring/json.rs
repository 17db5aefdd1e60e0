//! Element JSON: integers, `"p/q"` strings, or nested arrays matching the
//! payload shape (rows of a matrix, coordinates of a table-algebra element).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde_json::Value as Json;

use super::{matrix_side, reduce_bigint, Ring, RingKind, Value};
use crate::error::{Error, Result};

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Int(x) => match x.to_i64() {
                Some(v) => s.serialize_i64(v),
                None => s.serialize_str(&x.to_string()),
            },
            Value::Rat(x) => {
                if x.is_integer() {
                    Value::Int(x.to_integer()).serialize(s)
                } else {
                    s.serialize_str(&format!("{}/{}", x.numer(), x.denom()))
                }
            }
            Value::Residue(x) => s.serialize_u64(*x),
            Value::Matrix(xs) => {
                let k = matrix_side(xs.len());
                let mut seq = s.serialize_seq(Some(k))?;
                for row in xs.chunks(k.max(1)) {
                    seq.serialize_element(row)?;
                }
                seq.end()
            }
            Value::Vector(xs) => xs.serialize(s),
        }
    }
}

impl Value {
    pub fn to_json(&self) -> Json {
        serde_json::to_value(self).expect("values always serialize")
    }
}

impl Ring {
    /// Reads an element payload for this ring. Residues accept any integer and
    /// are reduced; rationals accept integers and `"p/q"` strings.
    pub fn parse_value(&self, json: &Json) -> Result<Value> {
        let bad = |reason: String| Error::InvalidElement { ring: self.to_string(), reason };
        let value = match self.kind() {
            RingKind::Int => Value::Int(json_integer(json).ok_or_else(|| bad(format!("expected an integer, got {json}")))?),
            RingKind::Rat => Value::Rat(json_rational(json).ok_or_else(|| bad(format!("expected a rational, got {json}")))?),
            RingKind::Residue(n) => {
                let x = json_integer(json).ok_or_else(|| bad(format!("expected an integer, got {json}")))?;
                Value::Residue(reduce_bigint(&x, *n))
            }
            RingKind::Matrix { size, base } | RingKind::UpperTriangular { size, base } => {
                let rows = json.as_array().ok_or_else(|| bad(format!("expected {size} rows, got {json}")))?;
                if rows.len() != *size {
                    return Err(bad(format!("expected {size} rows, got {}", rows.len())));
                }
                let mut entries = Vec::with_capacity(size * size);
                for row in rows {
                    let row = row.as_array().filter(|r| r.len() == *size).ok_or_else(|| {
                        bad(format!("expected rows of length {size}, got {row}"))
                    })?;
                    for x in row {
                        entries.push(base.parse_value(x)?);
                    }
                }
                Value::Matrix(entries)
            }
            RingKind::Table(t) => {
                let xs = json
                    .as_array()
                    .filter(|xs| xs.len() == t.basis_size())
                    .ok_or_else(|| bad(format!("expected {} coordinates, got {json}", t.basis_size())))?;
                Value::Vector(xs.iter().map(|x| t.base().parse_value(x)).collect::<Result<_>>()?)
            }
        };
        self.validate(&value)?;
        Ok(value)
    }

    pub fn parse_value_str(&self, text: &str) -> Result<Value> {
        let json: Json = serde_json::from_str(text).map_err(|e| Error::parse(e.column().saturating_sub(1), e.to_string()))?;
        self.parse_value(&json)
    }
}

fn json_integer(json: &Json) -> Option<BigInt> {
    match json {
        Json::Number(n) => n.as_i64().map(BigInt::from).or_else(|| n.as_u64().map(BigInt::from)),
        Json::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

fn json_rational(json: &Json) -> Option<BigRational> {
    if let Some(i) = json_integer(json) {
        return Some(BigRational::from_integer(i));
    }
    let s = json.as_str()?;
    let (p, q) = s.split_once('/')?;
    let p: BigInt = p.trim().parse().ok()?;
    let q: BigInt = q.trim().parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(BigRational::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn matrices_round_trip() {
        let ring = Ring::parse_spec("Mat:3:Q").unwrap();
        let j = json!([[0, "1/2", 0], [-3, 0, "-5/7"], [1, 0, 0]]);
        let v = ring.parse_value(&j).unwrap();
        assert_eq!(v.to_json(), j);
    }

    #[test]
    fn residues_reduce_on_input() {
        let ring = Ring::parse_spec("Zmod:5").unwrap();
        assert_eq!(ring.parse_value(&json!(-1)).unwrap(), Value::Residue(4));
    }

    #[test]
    fn shape_errors() {
        let ring = Ring::parse_spec("UT:2:Z").unwrap();
        assert!(ring.parse_value(&json!([[1, 2], [3, 4]])).is_err());
        assert!(ring.parse_value(&json!([[1, 2]])).is_err());
        assert!(Ring::rat().parse_value(&json!("1/0")).is_err());
    }

    #[test]
    fn big_integers_serialize_as_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let v = Value::Int(big.clone());
        assert_eq!(v.to_json(), json!("123456789012345678901234567890"));
        assert_eq!(Ring::int().parse_value(&v.to_json()).unwrap(), v);
    }
}
