//! A small tower of exact rings: integers, rationals, residues, full and
//! upper-triangular matrix rings, and finite-basis table algebras.
//!
//! Elements are plain [`Value`] payloads interpreted by a [`Ring`]. The hot
//! loops in search and enumeration work on `(Ring, Value)` directly; the
//! [`Element`] wrapper pairs the two and checks ring agreement on every
//! operation.

mod element;
mod enumerate;
mod json;
mod spec;
pub mod table;
mod units;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use element::Element;
pub use enumerate::Elements;
pub use table::TableAlgebra;

/// Payload of a ring element.
///
/// The derived ordering is the canonical order used by enumeration and by
/// every sorted output: numeric on scalars, lexicographic on matrix entries
/// (row-major) and on table-algebra coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Int(BigInt),
    /// Always in lowest terms with a positive denominator.
    Rat(BigRational),
    /// Least nonnegative representative.
    Residue(u64),
    /// Row-major `k*k` entries over the base ring.
    Matrix(Vec<Value>),
    /// Coordinates over the distinguished basis of a table algebra.
    Vector(Vec<Value>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Int,
    Rat,
    Residue(u64),
    Matrix { size: usize, base: Ring },
    UpperTriangular { size: usize, base: Ring },
    Table(TableAlgebra),
}

/// A concrete ring. Cheap to clone; compared structurally.
#[derive(Clone)]
pub struct Ring(Arc<RingKind>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({self})")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RingKind::Int => write!(f, "Z"),
            RingKind::Rat => write!(f, "Q"),
            RingKind::Residue(n) => write!(f, "Zmod:{n}"),
            RingKind::Matrix { size, base } => write!(f, "Mat:{size}:{base}"),
            RingKind::UpperTriangular { size, base } => write!(f, "UT:{size}:{base}"),
            RingKind::Table(t) => write!(f, "Table:{}", t.label()),
        }
    }
}

impl Ring {
    fn from_kind(kind: RingKind) -> Self {
        Ring(Arc::new(kind))
    }

    pub fn int() -> Self {
        Self::from_kind(RingKind::Int)
    }

    pub fn rat() -> Self {
        Self::from_kind(RingKind::Rat)
    }

    pub fn residue(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidRing(format!("modulus must be at least 2, got {modulus}")));
        }
        Ok(Self::from_kind(RingKind::Residue(modulus)))
    }

    pub fn matrix(size: usize, base: Ring) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidRing("matrix size must be at least 1".into()));
        }
        Ok(Self::from_kind(RingKind::Matrix { size, base }))
    }

    pub fn upper_triangular(size: usize, base: Ring) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidRing("matrix size must be at least 1".into()));
        }
        Ok(Self::from_kind(RingKind::UpperTriangular { size, base }))
    }

    pub fn table(algebra: TableAlgebra) -> Self {
        Self::from_kind(RingKind::Table(algebra))
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    /// Integer, rational or residue ring.
    pub fn is_scalar(&self) -> bool {
        matches!(self.kind(), RingKind::Int | RingKind::Rat | RingKind::Residue(_))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self.kind() {
            RingKind::Residue(n) => Some(*n),
            _ => None,
        }
    }

    pub fn zero(&self) -> Value {
        match self.kind() {
            RingKind::Int => Value::Int(BigInt::zero()),
            RingKind::Rat => Value::Rat(BigRational::zero()),
            RingKind::Residue(_) => Value::Residue(0),
            RingKind::Matrix { size, base } | RingKind::UpperTriangular { size, base } => {
                Value::Matrix(vec![base.zero(); size * size])
            }
            RingKind::Table(t) => Value::Vector(vec![t.base().zero(); t.basis_size()]),
        }
    }

    pub fn one(&self) -> Value {
        self.from_int(1)
    }

    /// The image of an integer under the unique unital map from Z.
    pub fn from_int(&self, c: i64) -> Value {
        self.from_bigint(&BigInt::from(c))
    }

    pub fn from_bigint(&self, c: &BigInt) -> Value {
        match self.kind() {
            RingKind::Int => Value::Int(c.clone()),
            RingKind::Rat => Value::Rat(BigRational::from_integer(c.clone())),
            RingKind::Residue(n) => Value::Residue(reduce_bigint(c, *n)),
            RingKind::Matrix { size, base } | RingKind::UpperTriangular { size, base } => {
                let mut entries = vec![base.zero(); size * size];
                let d = base.from_bigint(c);
                for i in 0..*size {
                    entries[i * size + i] = d.clone();
                }
                Value::Matrix(entries)
            }
            RingKind::Table(t) => {
                let s = t.base().from_bigint(c);
                Value::Vector(t.unit().iter().map(|u| t.base().mul(&s, u)).collect())
            }
        }
    }

    /// Embeds a rational scalar `c` as `c * 1`. Fails when the scalar base
    /// cannot hold `c` (non-integral `c` over Z; non-invertible denominator
    /// over a residue ring).
    pub fn from_rational(&self, c: &BigRational) -> Result<Value> {
        match self.kind() {
            RingKind::Rat => Ok(Value::Rat(c.clone())),
            RingKind::Int => {
                if c.is_integer() {
                    Ok(Value::Int(c.to_integer()))
                } else {
                    Err(Error::Unsupported(format!("{c} is not an integer")))
                }
            }
            RingKind::Residue(n) => {
                let num = reduce_bigint(c.numer(), *n);
                let den = reduce_bigint(c.denom(), *n);
                let inv = residue_inverse(den, *n)
                    .ok_or_else(|| Error::NotInvertible(format!("denominator of {c} in Zmod:{n}")))?;
                Ok(Value::Residue(mul_mod(num, inv, *n)))
            }
            _ => {
                let base = self.scalar_base().ok_or_else(|| {
                    Error::Unsupported(format!("rational scalars in {self}"))
                })?;
                let s = base.from_rational(c)?;
                Ok(self.scale(&s, &self.one()))
            }
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (self.kind(), a, b) {
            (RingKind::Int, Value::Int(x), Value::Int(y)) => Value::Int(x + y),
            (RingKind::Rat, Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
            (RingKind::Residue(n), Value::Residue(x), Value::Residue(y)) => {
                Value::Residue(add_mod(*x, *y, *n))
            }
            (
                RingKind::Matrix { base, .. } | RingKind::UpperTriangular { base, .. },
                Value::Matrix(x),
                Value::Matrix(y),
            ) => Value::Matrix(x.iter().zip(y).map(|(p, q)| base.add(p, q)).collect()),
            (RingKind::Table(t), Value::Vector(x), Value::Vector(y)) => {
                Value::Vector(x.iter().zip(y).map(|(p, q)| t.base().add(p, q)).collect())
            }
            _ => panic!("malformed operands for {self}: {a:?}, {b:?}"),
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match (self.kind(), a) {
            (RingKind::Int, Value::Int(x)) => Value::Int(-x),
            (RingKind::Rat, Value::Rat(x)) => Value::Rat(-x),
            (RingKind::Residue(n), Value::Residue(x)) => Value::Residue(neg_mod(*x, *n)),
            (RingKind::Matrix { base, .. } | RingKind::UpperTriangular { base, .. }, Value::Matrix(x)) => {
                Value::Matrix(x.iter().map(|p| base.neg(p)).collect())
            }
            (RingKind::Table(t), Value::Vector(x)) => {
                Value::Vector(x.iter().map(|p| t.base().neg(p)).collect())
            }
            _ => panic!("malformed operand for {self}: {a:?}"),
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        self.add(a, &self.neg(b))
    }

    /// The ring product `a * b`; never assumed commutative.
    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (self.kind(), a, b) {
            (RingKind::Int, Value::Int(x), Value::Int(y)) => Value::Int(x * y),
            (RingKind::Rat, Value::Rat(x), Value::Rat(y)) => Value::Rat(x * y),
            (RingKind::Residue(n), Value::Residue(x), Value::Residue(y)) => {
                Value::Residue(mul_mod(*x, *y, *n))
            }
            (
                RingKind::Matrix { size, base } | RingKind::UpperTriangular { size, base },
                Value::Matrix(x),
                Value::Matrix(y),
            ) => Value::Matrix(matmul(base, *size, x, y)),
            (RingKind::Table(t), Value::Vector(x), Value::Vector(y)) => Value::Vector(t.mul_coords(x, y)),
            _ => panic!("malformed operands for {self}: {a:?}, {b:?}"),
        }
    }

    /// Left multiplication by a scalar of the coordinate base ring.
    pub fn scale(&self, s: &Value, a: &Value) -> Value {
        match (self.kind(), a) {
            (RingKind::Int | RingKind::Rat | RingKind::Residue(_), _) => self.mul(s, a),
            (RingKind::Matrix { base, .. } | RingKind::UpperTriangular { base, .. }, Value::Matrix(x)) => {
                Value::Matrix(x.iter().map(|p| base.scale(s, p)).collect())
            }
            (RingKind::Table(t), Value::Vector(x)) => {
                Value::Vector(x.iter().map(|p| t.base().mul(s, p)).collect())
            }
            _ => panic!("malformed operand for {self}: {a:?}"),
        }
    }

    pub fn is_zero(&self, a: &Value) -> bool {
        match a {
            Value::Int(x) => x.is_zero(),
            Value::Rat(x) => x.is_zero(),
            Value::Residue(x) => *x == 0,
            Value::Matrix(xs) | Value::Vector(xs) => {
                let base = self.entry_ring();
                xs.iter().all(|x| base.is_zero(x))
            }
        }
    }

    pub fn is_one(&self, a: &Value) -> bool {
        *a == self.one()
    }

    pub fn pow(&self, a: &Value, mut e: u64) -> Value {
        let mut result = self.one();
        let mut square = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &square);
            }
            e >>= 1;
            if e > 0 {
                square = self.mul(&square, &square);
            }
        }
        result
    }

    /// `ab - ba`.
    pub fn commutator(&self, a: &Value, b: &Value) -> Value {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    pub fn commute(&self, a: &Value, b: &Value) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Ring of the entries (matrix kinds), coordinates (table algebras), or self.
    fn entry_ring(&self) -> &Ring {
        match self.kind() {
            RingKind::Matrix { base, .. } | RingKind::UpperTriangular { base, .. } => base,
            RingKind::Table(t) => t.base(),
            _ => self,
        }
    }

    /// Checks that `v` has the payload shape and normal form this ring expects.
    pub fn validate(&self, v: &Value) -> Result<()> {
        let bad = |reason: String| Err(Error::InvalidElement { ring: self.to_string(), reason });
        match (self.kind(), v) {
            (RingKind::Int, Value::Int(_)) => Ok(()),
            (RingKind::Rat, Value::Rat(x)) => {
                if x.denom().is_positive() && *x == BigRational::new(x.numer().clone(), x.denom().clone()) {
                    Ok(())
                } else {
                    bad(format!("{x} is not in lowest terms"))
                }
            }
            (RingKind::Residue(n), Value::Residue(x)) => {
                if x < n {
                    Ok(())
                } else {
                    bad(format!("residue {x} not reduced modulo {n}"))
                }
            }
            (RingKind::Matrix { size, base }, Value::Matrix(xs)) => {
                if xs.len() != size * size {
                    return bad(format!("expected {} entries, got {}", size * size, xs.len()));
                }
                xs.iter().try_for_each(|x| base.validate(x))
            }
            (RingKind::UpperTriangular { size, base }, Value::Matrix(xs)) => {
                if xs.len() != size * size {
                    return bad(format!("expected {} entries, got {}", size * size, xs.len()));
                }
                for i in 0..*size {
                    for j in 0..*size {
                        let x = &xs[i * size + j];
                        base.validate(x)?;
                        if i > j && !base.is_zero(x) {
                            return bad(format!("nonzero entry below the diagonal at ({i},{j})"));
                        }
                    }
                }
                Ok(())
            }
            (RingKind::Table(t), Value::Vector(xs)) => {
                if xs.len() != t.basis_size() {
                    return bad(format!("expected {} coordinates, got {}", t.basis_size(), xs.len()));
                }
                xs.iter().try_for_each(|x| t.base().validate(x))
            }
            _ => bad(format!("payload kind does not match: {v}")),
        }
    }

    /// Commutativity of the ring itself (decided from its construction).
    pub fn is_commutative(&self) -> bool {
        match self.kind() {
            RingKind::Int | RingKind::Rat | RingKind::Residue(_) => true,
            RingKind::Matrix { size, base } | RingKind::UpperTriangular { size, base } => {
                *size == 1 && base.is_commutative()
            }
            RingKind::Table(t) => t.is_commutative(),
        }
    }

    /// Number of elements, `None` for infinite rings. Saturates at `u128::MAX`.
    pub fn size(&self) -> Option<u128> {
        match self.kind() {
            RingKind::Int | RingKind::Rat => None,
            RingKind::Residue(n) => Some(*n as u128),
            RingKind::Matrix { size, base } => base.size().map(|b| sat_pow(b, size * size)),
            RingKind::UpperTriangular { size, base } => {
                base.size().map(|b| sat_pow(b, size * (size + 1) / 2))
            }
            RingKind::Table(t) => t.base().size().map(|b| sat_pow(b, t.basis_size())),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// The scalar ring over which this ring is a free module with explicit
    /// coordinates, when there is one (one level of matrices or a table
    /// algebra over Z, Q or Z/n, or a scalar ring itself).
    pub fn scalar_base(&self) -> Option<&Ring> {
        match self.kind() {
            RingKind::Int | RingKind::Rat | RingKind::Residue(_) => Some(self),
            RingKind::Matrix { base, .. } | RingKind::UpperTriangular { base, .. } => {
                base.is_scalar().then_some(base)
            }
            RingKind::Table(t) => Some(t.base()),
        }
    }

    /// Number of coordinates over [`Ring::scalar_base`].
    pub fn rank(&self) -> Option<usize> {
        self.scalar_base()?;
        Some(match self.kind() {
            RingKind::Int | RingKind::Rat | RingKind::Residue(_) => 1,
            RingKind::Matrix { size, .. } => size * size,
            RingKind::UpperTriangular { size, .. } => size * (size + 1) / 2,
            RingKind::Table(t) => t.basis_size(),
        })
    }

    /// Coordinates over [`Ring::scalar_base`]; upper-triangular matrices use
    /// their upper entries in row-major order.
    pub fn coords(&self, v: &Value) -> Vec<Value> {
        match (self.kind(), v) {
            (RingKind::UpperTriangular { size, .. }, Value::Matrix(xs)) => (0..*size)
                .flat_map(|i| (i..*size).map(move |j| (i, j)))
                .map(|(i, j)| xs[i * size + j].clone())
                .collect(),
            (_, Value::Matrix(xs)) | (_, Value::Vector(xs)) => xs.clone(),
            (_, scalar) => vec![scalar.clone()],
        }
    }

    pub fn from_coords(&self, c: &[Value]) -> Value {
        match self.kind() {
            RingKind::Int | RingKind::Rat | RingKind::Residue(_) => c[0].clone(),
            RingKind::Matrix { .. } => Value::Matrix(c.to_vec()),
            RingKind::UpperTriangular { size, base } => {
                let mut entries = vec![base.zero(); size * size];
                let mut it = c.iter();
                for i in 0..*size {
                    for j in i..*size {
                        entries[i * size + j] = it.next().expect("coordinate count").clone();
                    }
                }
                Value::Matrix(entries)
            }
            RingKind::Table(_) => Value::Vector(c.to_vec()),
        }
    }

    /// Matrix of left multiplication by `v` on coordinates (column `j` holds
    /// the coordinates of `v * e_j`).
    pub fn left_regular(&self, v: &Value) -> Option<Vec<Vec<Value>>> {
        let base = self.scalar_base()?;
        let m = self.rank()?;
        let mut cols = Vec::with_capacity(m);
        for j in 0..m {
            let mut e = vec![base.zero(); m];
            e[j] = base.one();
            cols.push(self.coords(&self.mul(v, &self.from_coords(&e))));
        }
        Some((0..m).map(|i| (0..m).map(|j| cols[j][i].clone()).collect()).collect())
    }

    /// `Some(c)` when `v = c * 1` for a scalar `c` of [`Ring::scalar_base`].
    pub fn scalar_multiple(&self, v: &Value) -> Option<Value> {
        let base = self.scalar_base()?;
        let c = match (self.kind(), v) {
            (RingKind::Int | RingKind::Rat | RingKind::Residue(_), _) => return Some(v.clone()),
            (RingKind::Matrix { .. } | RingKind::UpperTriangular { .. }, Value::Matrix(xs)) => xs[0].clone(),
            (RingKind::Table(t), Value::Vector(xs)) => {
                let i = t.unit().iter().position(|u| base.is_one(u))?;
                xs[i].clone()
            }
            _ => return None,
        };
        (self.scale(&c, &self.one()) == *v).then_some(c)
    }

    /// Reduction of an integer-coefficient element into this ring, entrywise.
    /// Used for the mod-n degeneration checks.
    pub fn reduce_from(&self, source: &Ring, v: &Value) -> Result<Value> {
        match (self.kind(), source.kind(), v) {
            (RingKind::Residue(n), RingKind::Int, Value::Int(x)) => Ok(Value::Residue(reduce_bigint(x, *n))),
            (_, _, _) if self == source => Ok(v.clone()),
            (RingKind::Int | RingKind::Rat | RingKind::Residue(_), _, _) => Ok(self.from_bigint(&scalar_to_bigint(v)?)),
            (
                RingKind::Matrix { size: a, base: ba },
                RingKind::Matrix { size: b, base: bb },
                Value::Matrix(xs),
            )
            | (
                RingKind::UpperTriangular { size: a, base: ba },
                RingKind::UpperTriangular { size: b, base: bb },
                Value::Matrix(xs),
            ) if a == b => Ok(Value::Matrix(
                xs.iter().map(|x| ba.reduce_from(bb, x)).collect::<Result<_>>()?,
            )),
            _ => Err(Error::Unsupported(format!("reduce {source} into {self}"))),
        }
    }
}

fn scalar_to_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Int(x) => Ok(x.clone()),
        Value::Residue(x) => Ok(BigInt::from(*x)),
        Value::Rat(x) if x.is_integer() => Ok(x.to_integer()),
        _ => Err(Error::Unsupported(format!("{v} is not an integer scalar"))),
    }
}

fn matmul(base: &Ring, k: usize, x: &[Value], y: &[Value]) -> Vec<Value> {
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut acc = base.zero();
            for l in 0..k {
                let a = &x[i * k + l];
                let b = &y[l * k + j];
                if base.is_zero(a) || base.is_zero(b) {
                    continue;
                }
                acc = base.add(&acc, &base.mul(a, b));
            }
            out.push(acc);
        }
    }
    out
}

fn sat_pow(b: u128, e: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(b);
    }
    acc
}

pub(crate) fn add_mod(x: u64, y: u64, n: u64) -> u64 {
    ((x as u128 + y as u128) % n as u128) as u64
}

pub(crate) fn neg_mod(x: u64, n: u64) -> u64 {
    if x == 0 {
        0
    } else {
        n - x
    }
}

pub(crate) fn mul_mod(x: u64, y: u64, n: u64) -> u64 {
    ((x as u128 * y as u128) % n as u128) as u64
}

pub(crate) fn reduce_bigint(c: &BigInt, n: u64) -> u64 {
    let m = BigInt::from(n);
    let r = ((c % &m) + &m) % &m;
    r.to_u64().expect("residue fits in u64")
}

/// Inverse of `x` modulo `n` by the extended Euclidean algorithm.
pub(crate) fn residue_inverse(x: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, x as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(n as i128) as u64)
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(x) => write!(f, "{x}"),
            Value::Rat(x) => {
                if x.is_integer() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Value::Residue(x) => write!(f, "{x}"),
            Value::Matrix(xs) => {
                let k = matrix_side(xs.len());
                write!(f, "[")?;
                for i in 0..k {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "[")?;
                    for j in 0..k {
                        if j > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{}", xs[i * k + j])?;
                    }
                    write!(f, "]")?;
                }
                write!(f, "]")
            }
            Value::Vector(xs) => {
                write!(f, "(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

pub(crate) fn matrix_side(len: usize) -> usize {
    let k = (len as f64).sqrt().round() as usize;
    debug_assert_eq!(k * k, len);
    k
}
