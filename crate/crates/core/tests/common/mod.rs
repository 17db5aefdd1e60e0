#![allow(dead_code)]

use ncsplit::ring::{Ring, RingKind, Value};
use ncsplit::NcPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring(spec: &str) -> Ring {
    Ring::parse_spec(spec).unwrap()
}

/// Uniform on finite rings; small entries on Z and Q.
pub fn random_value(ring: &Ring, rng: &mut ChaCha8Rng) -> Value {
    match ring.kind() {
        RingKind::Int => Value::Int(BigInt::from(rng.gen_range(-9i64..=9))),
        RingKind::Rat => Value::Rat(BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into())),
        RingKind::Residue(n) => Value::Residue(rng.gen_range(0..*n)),
        RingKind::Matrix { size, base } => Value::Matrix((0..size * size).map(|_| random_value(base, rng)).collect()),
        RingKind::UpperTriangular { size, base } => {
            let c: Vec<Value> = (0..size * (size + 1) / 2).map(|_| random_value(base, rng)).collect();
            ring.from_coords(&c)
        }
        RingKind::Table(t) => {
            let c: Vec<Value> = (0..t.basis_size()).map(|_| random_value(t.base(), rng)).collect();
            ring.from_coords(&c)
        }
    }
}

pub fn random_poly(ring: &Ring, max_degree: usize, rng: &mut ChaCha8Rng) -> NcPoly {
    let d = rng.gen_range(0..=max_degree);
    NcPoly::new(ring.clone(), (0..=d).map(|_| random_value(ring, rng)).collect()).unwrap()
}

/// Rings exercised by the sampled law tests.
pub const SAMPLED_RINGS: &[&str] = &[
    "Z",
    "Q",
    "Zmod:12",
    "Mat:2:Z",
    "Mat:2:Q",
    "Mat:3:Zmod:5",
    "UT:3:Z",
    "UT:2:Zmod:4",
    "Table:@ut2:Z",
    "Table:@ut2:Zmod:7",
    "Mat:2:Mat:2:Zmod:2",
];

/// Finite rings small enough for exhaustive triples.
pub const SMALL_RINGS: &[&str] = &[
    "Zmod:2",
    "Zmod:6",
    "Zmod:12",
    "Mat:2:Zmod:2",
    "UT:2:Zmod:2",
    "UT:2:Zmod:3",
    "UT:2:Zmod:4",
    "Table:@ut2:Zmod:2",
    "Table:@ut2:Zmod:3",
];
