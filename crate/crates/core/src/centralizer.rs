//! Centralizers `{x : x g = g x for all g in gens}`.
//!
//! Rings with coordinates over a scalar base reduce to a linear system in
//! the coordinates of `x`. Over Z/n the system is diagonalized over Z and
//! solved exactly; over Z the kernel is a saturated lattice; over Q it is a
//! vector space. Other finite rings are filtered exhaustively.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{diagonalize, integer_kernel, rational_kernel};
use crate::ring::{Ring, RingKind, Value};

/// Largest solution set materialized as an explicit list.
pub const ELEMENT_LIMIT: u128 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "items", rename_all = "snake_case")]
pub enum CentralizerDescription {
    /// Every element, in canonical order (finite rings).
    Elements(Vec<Value>),
    /// A basis of the solution space over Q.
    VectorBasis(Vec<Value>),
    /// A basis of the saturated solution lattice over Z, in Hermite form.
    LatticeBasis(Vec<Value>),
}

impl CentralizerDescription {
    pub fn elements(&self) -> Option<&[Value]> {
        match self {
            CentralizerDescription::Elements(xs) => Some(xs),
            _ => None,
        }
    }

    pub fn basis(&self) -> Option<&[Value]> {
        match self {
            CentralizerDescription::VectorBasis(xs) | CentralizerDescription::LatticeBasis(xs) => Some(xs),
            CentralizerDescription::Elements(_) => None,
        }
    }

    /// True when the centralizer is exactly the scalar multiples of one.
    pub fn is_scalars(&self, ring: &Ring) -> bool {
        match self {
            CentralizerDescription::Elements(xs) => {
                let Some(base) = ring.scalar_base() else { return false };
                let Ok(scalars) = base.element_list(ELEMENT_LIMIT) else { return false };
                let mut expected: Vec<Value> =
                    scalars.iter().map(|c| ring.scale(c, &ring.one())).collect();
                expected.sort();
                expected.dedup();
                *xs == expected
            }
            CentralizerDescription::VectorBasis(xs) | CentralizerDescription::LatticeBasis(xs) => {
                xs.len() == 1 && (xs[0] == ring.one() || xs[0] == ring.neg(&ring.one()))
            }
        }
    }
}

pub fn centralizer_of_set(ring: &Ring, gens: &[Value]) -> Result<CentralizerDescription> {
    for g in gens {
        ring.validate(g)?;
    }
    let Some(base) = ring.scalar_base() else {
        return centralizer_exhaustive(ring, gens).map(CentralizerDescription::Elements);
    };
    let m = ring.rank().expect("rank exists with a scalar base");
    let system = commutator_system(ring, gens, m);
    match base.kind() {
        RingKind::Residue(n) => solve_residue(ring, &system, m, *n).map(CentralizerDescription::Elements),
        RingKind::Int => {
            let rows: Vec<Vec<BigInt>> = system.iter().map(|r| r.iter().map(as_int).collect()).collect();
            let basis = integer_kernel(rows, m);
            Ok(CentralizerDescription::LatticeBasis(
                basis.iter().map(|v| ring.from_coords(&v.iter().cloned().map(Value::Int).collect::<Vec<_>>())).collect(),
            ))
        }
        RingKind::Rat => {
            let rows: Vec<Vec<BigRational>> = system.iter().map(|r| r.iter().map(as_rat).collect()).collect();
            let basis = rational_kernel(&rows, m);
            Ok(CentralizerDescription::VectorBasis(
                basis.iter().map(|v| ring.from_coords(&v.iter().cloned().map(Value::Rat).collect::<Vec<_>>())).collect(),
            ))
        }
        _ => Err(Error::Unsupported(format!("centralizer over {ring}"))),
    }
}

/// Brute-force filter over every element; the oracle for the linear path.
pub fn centralizer_exhaustive(ring: &Ring, gens: &[Value]) -> Result<Vec<Value>> {
    let size = ring.size().ok_or_else(|| Error::Unsupported(format!("centralizer over infinite ring {ring}")))?;
    if size > ELEMENT_LIMIT {
        return Err(Error::TooLarge { estimate: size, limit: ELEMENT_LIMIT });
    }
    Ok(ring.elements()?.filter(|x| gens.iter().all(|g| ring.commute(x, g))).collect())
}

/// Rows of the linear map `x -> (x g - g x)_g` in the coordinates of `x`.
fn commutator_system(ring: &Ring, gens: &[Value], m: usize) -> Vec<Vec<Value>> {
    let base = ring.scalar_base().expect("scalar base");
    let basis: Vec<Value> = (0..m)
        .map(|j| {
            let mut e = vec![base.zero(); m];
            e[j] = base.one();
            ring.from_coords(&e)
        })
        .collect();
    let mut rows = Vec::with_capacity(m * gens.len());
    for g in gens {
        let cols: Vec<Vec<Value>> = basis.iter().map(|e| ring.coords(&ring.commutator(e, g))).collect();
        for i in 0..cols[0].len() {
            rows.push(cols.iter().map(|c| c[i].clone()).collect());
        }
    }
    rows
}

fn solve_residue(ring: &Ring, system: &[Vec<Value>], m: usize, n: u64) -> Result<Vec<Value>> {
    let rows: Vec<Vec<BigInt>> = system
        .iter()
        .map(|r| r.iter().map(|x| BigInt::from(as_residue(x))).collect())
        .collect();
    let (d, v) = diagonalize(rows, m);
    // y_i ranges over the multiples of n / gcd(d_i, n); free coordinates over all of Z/n
    let steps: Vec<(u64, u64)> = (0..m)
        .map(|i| {
            let g = if i < d.len() {
                (&d[i] % n).to_u64().expect("reduced").gcd(&n)
            } else {
                n
            };
            (n / g, g)
        })
        .collect();
    let count = steps.iter().fold(1u128, |acc, &(_, g)| acc.saturating_mul(g as u128));
    if count > ELEMENT_LIMIT {
        return Err(Error::TooLarge { estimate: count, limit: ELEMENT_LIMIT });
    }
    let vmod: Vec<Vec<u64>> = v
        .iter()
        .map(|row| row.iter().map(|x| x.mod_floor(&BigInt::from(n)).to_u64().expect("reduced")).collect())
        .collect();
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0u64; m];
    loop {
        let y: Vec<u64> = digits.iter().zip(&steps).map(|(&k, &(step, _))| k * step).collect();
        let x: Vec<Value> = vmod
            .iter()
            .map(|row| {
                let s = row.iter().zip(&y).fold(0u128, |acc, (&a, &b)| (acc + a as u128 * b as u128) % n as u128);
                Value::Residue(s as u64)
            })
            .collect();
        out.push(ring.from_coords(&x));
        let mut i = m;
        loop {
            if i == 0 {
                out.sort();
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < steps[i].1 {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn as_residue(x: &Value) -> u64 {
    match x {
        Value::Residue(r) => *r,
        other => panic!("expected a residue, got {other}"),
    }
}

fn as_int(x: &Value) -> BigInt {
    match x {
        Value::Int(i) => i.clone(),
        other => panic!("expected an integer, got {other}"),
    }
}

fn as_rat(x: &Value) -> BigRational {
    match x {
        Value::Rat(q) => q.clone(),
        other => panic!("expected a rational, got {other}"),
    }
}

/// Membership test that works for every description kind.
pub fn contains(ring: &Ring, desc: &CentralizerDescription, x: &Value) -> Result<bool> {
    match desc {
        CentralizerDescription::Elements(xs) => Ok(xs.binary_search(x).is_ok()),
        CentralizerDescription::VectorBasis(basis) | CentralizerDescription::LatticeBasis(basis) => {
            let integral = matches!(desc, CentralizerDescription::LatticeBasis(_));
            let m = ring.rank().ok_or_else(|| Error::Unsupported(format!("coordinates of {ring}")))?;
            let q = |v: &Value| -> Vec<BigRational> {
                ring.coords(v)
                    .iter()
                    .map(|c| match c {
                        Value::Int(i) => BigRational::from_integer(i.clone()),
                        Value::Rat(r) => r.clone(),
                        other => panic!("unexpected coordinate {other}"),
                    })
                    .collect()
            };
            // solve sum c_j b_j = x: kernel of [b_1 .. b_k | -x]
            let cols: Vec<Vec<BigRational>> = basis.iter().map(q).chain(std::iter::once(q(x).into_iter().map(|c| -c).collect())).collect();
            let rows: Vec<Vec<BigRational>> = (0..m).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
            let k = basis.len();
            let kernel = rational_kernel(&rows, k + 1);
            let Some(sol) = kernel.iter().find(|v| !v[k].is_zero()) else {
                return Ok(false);
            };
            let scale = sol[k].clone();
            Ok(!integral || sol[..k].iter().all(|c| (c / &scale).is_integer()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn values(ring: &Ring, xs: &[serde_json::Value]) -> Vec<Value> {
        xs.iter().map(|x| ring.parse_value(x).unwrap()).collect()
    }

    #[test]
    fn linear_solve_matches_exhaustive_filter() {
        for spec in ["Mat:2:Zmod:2", "Mat:2:Zmod:4", "Mat:2:Zmod:6", "UT:2:Zmod:6", "Table:@ut2:Zmod:4"] {
            let ring = Ring::parse_spec(spec).unwrap();
            let all: Vec<Value> = ring.elements().unwrap().collect();
            for (i, j) in [(1usize, 2usize), (5, 9), (3, 3), (7, 11)] {
                let gens = vec![all[i % all.len()].clone(), all[j % all.len()].clone()];
                let fast = centralizer_of_set(&ring, &gens).unwrap();
                let slow = centralizer_exhaustive(&ring, &gens).unwrap();
                assert_eq!(fast.elements().unwrap(), slow.as_slice(), "{spec} {i} {j}");
            }
        }
    }

    #[test]
    fn empty_generators_give_whole_ring() {
        let ring = Ring::parse_spec("UT:2:Zmod:3").unwrap();
        let c = centralizer_of_set(&ring, &[]).unwrap();
        assert_eq!(c.elements().unwrap().len(), 27);
        let q = Ring::parse_spec("Mat:2:Q").unwrap();
        assert_eq!(centralizer_of_set(&q, &[]).unwrap().basis().unwrap().len(), 4);
    }

    #[test]
    fn example_one_centralizer_is_scalars() {
        for spec in ["UT:2:Zmod:5", "UT:2:Z", "UT:2:Q"] {
            let ring = Ring::parse_spec(spec).unwrap();
            let gens = values(&ring, &[json!([[0, 0], [0, 1]]), json!([[0, -1], [0, 0]]), json!([[1, 1], [0, 0]])]);
            let c = centralizer_of_set(&ring, &gens).unwrap();
            assert!(c.is_scalars(&ring), "{spec}: {c:?}");
        }
        let ring = Ring::parse_spec("UT:2:Zmod:5").unwrap();
        let gens = values(&ring, &[json!([[0, 0], [0, 1]]), json!([[0, -1], [0, 0]]), json!([[1, 1], [0, 0]])]);
        assert_eq!(centralizer_of_set(&ring, &gens).unwrap().elements().unwrap().len(), 5);
    }

    #[test]
    fn integer_lattice_is_saturated() {
        // x commutes with diag(1, 3) iff x is diagonal
        let ring = Ring::parse_spec("Mat:2:Z").unwrap();
        let g = ring.parse_value(&json!([[1, 0], [0, 3]])).unwrap();
        let c = centralizer_of_set(&ring, &[g]).unwrap();
        let basis = c.basis().unwrap();
        assert_eq!(basis.len(), 2);
        let e11 = ring.parse_value(&json!([[1, 0], [0, 0]])).unwrap();
        let half = ring.parse_value(&json!([[2, 0], [0, 0]])).unwrap();
        assert!(contains(&ring, &c, &e11).unwrap());
        assert!(contains(&ring, &c, &half).unwrap());
        let off = ring.parse_value(&json!([[0, 1], [0, 0]])).unwrap();
        assert!(!contains(&ring, &c, &off).unwrap());
    }

    #[test]
    fn nested_rings_filter_exhaustively() {
        let ring = Ring::parse_spec("Mat:1:Mat:2:Zmod:2").unwrap();
        let g = ring.elements().unwrap().nth(6).unwrap();
        let c = centralizer_of_set(&ring, std::slice::from_ref(&g)).unwrap();
        assert!(c.elements().unwrap().iter().all(|x| ring.commute(x, &g)));
    }
}
