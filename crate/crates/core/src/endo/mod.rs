//! Endomorphisms of `K ⊂ A` for the three-dimensional algebra `A` with basis
//! `a1, a2, a3` over `K = Z/p`, together with the root and cycle families of
//! `X^3 - X^2` and the order they carry.

mod export;
mod families;
mod poset;
mod tables;

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::ring::{Ring, TableAlgebra, Value};

pub use export::{Battery, Format};
pub use families::{CycleFamily, CycleKind, RootFamily, RootKind};
pub use poset::{
    minpoly, verify_poset, verify_translates, MinPoly, OrderFailure, PosetReport, TranslateReport,
};
pub use tables::{
    classify_cycles, classify_roots, determine_composition_order, verify_action_tables, verify_monoid_table, OrderScore,
    ActionCell, ActionReport, CycleRecord, CycleReport, MonoidCell, MonoidReport, RootRecord, RootReport,
};

/// `A` over `Z/p`.
#[derive(Clone, Debug)]
pub struct Extension {
    p: u64,
    ring: Ring,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl Extension {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Unsupported(format!("the endomorphism explorer needs a prime modulus, got {p}")));
        }
        let ring = Ring::table(TableAlgebra::upper2(Ring::residue(p)?)?);
        Ok(Extension { p, ring })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn scalars(&self) -> std::ops::Range<u64> {
        0..self.p
    }

    pub fn units(&self) -> impl Iterator<Item = u64> {
        1..self.p
    }

    pub(crate) fn k(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub(crate) fn add(&self, x: u64, y: u64) -> u64 {
        (x + y) % self.p
    }

    pub(crate) fn mul(&self, x: u64, y: u64) -> u64 {
        (x * y) % self.p
    }

    /// `1 - x - y`.
    pub(crate) fn one_minus(&self, x: u64, y: u64) -> u64 {
        (1 + 2 * self.p - x - y) % self.p
    }

    /// `c1 a1 + c2 a2 + c3 a3`.
    pub fn vec(&self, c: [u64; 3]) -> Value {
        Value::Vector(c.iter().map(|&x| Value::Residue(x % self.p)).collect())
    }

    pub fn coords(&self, v: &Value) -> [u64; 3] {
        match v {
            Value::Vector(xs) => {
                let r = |x: &Value| match x {
                    Value::Residue(r) => *r,
                    other => panic!("expected a residue, got {other}"),
                };
                [r(&xs[0]), r(&xs[1]), r(&xs[2])]
            }
            other => panic!("expected a coordinate vector, got {other}"),
        }
    }

    /// Basis element `a_i`, `i` in 1..=3.
    pub fn a(&self, i: usize) -> Value {
        let mut c = [0; 3];
        c[i - 1] = 1;
        self.vec(c)
    }

    pub fn unit(&self) -> Value {
        self.ring.one()
    }

    /// `x1 a1 + x2 a2 + x3 a3` as `"a1 + 2a2"`, `"0"`, `"1"` for the unit.
    pub fn show(&self, v: &Value) -> String {
        let c = self.coords(v);
        if c == [1, 1, 1] {
            return "1".into();
        }
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| if x == 1 { format!("a{}", i + 1) } else { format!("{x}a{}", i + 1) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// The four families of endomorphisms, by their images of `a1, a2, a3`:
///
/// | family      | a1                | a2     | a3                   |
/// |-------------|-------------------|--------|----------------------|
/// | eps         | 1                 | 0      | 0                    |
/// | eps'        | 0                 | 0      | 1                    |
/// | eps^σ_s     | a1 + s a2         | σ a2   | (1 - σ - s) a2 + a3  |
/// | eps_s       | (1 - s) a2 + a3   | 0      | a1 + s a2            |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndoFamily {
    Epsilon,
    EpsilonPrime,
    Upper { sigma: u64, s: u64 },
    Lower { s: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndoKind {
    Epsilon,
    EpsilonPrime,
    Upper,
    Lower,
}

impl EndoKind {
    pub const ALL: [EndoKind; 4] = [EndoKind::Epsilon, EndoKind::EpsilonPrime, EndoKind::Upper, EndoKind::Lower];

    pub fn label(self) -> &'static str {
        match self {
            EndoKind::Epsilon => "eps",
            EndoKind::EpsilonPrime => "eps'",
            EndoKind::Upper => "eps^σ_s",
            EndoKind::Lower => "eps_s",
        }
    }
}

impl EndoFamily {
    pub fn kind(self) -> EndoKind {
        match self {
            EndoFamily::Epsilon => EndoKind::Epsilon,
            EndoFamily::EpsilonPrime => EndoKind::EpsilonPrime,
            EndoFamily::Upper { .. } => EndoKind::Upper,
            EndoFamily::Lower { .. } => EndoKind::Lower,
        }
    }

    pub fn all(ext: &Extension) -> Vec<EndoFamily> {
        let mut out = vec![EndoFamily::Epsilon, EndoFamily::EpsilonPrime];
        for sigma in ext.scalars() {
            for s in ext.scalars() {
                out.push(EndoFamily::Upper { sigma, s });
            }
        }
        out.extend(ext.scalars().map(|s| EndoFamily::Lower { s }));
        out
    }

    pub fn images(self, ext: &Extension) -> [Value; 3] {
        let v = |c| ext.vec(c);
        match self {
            EndoFamily::Epsilon => [ext.unit(), v([0, 0, 0]), v([0, 0, 0])],
            EndoFamily::EpsilonPrime => [v([0, 0, 0]), v([0, 0, 0]), ext.unit()],
            EndoFamily::Upper { sigma, s } => [v([1, s, 0]), v([0, sigma, 0]), v([0, ext.one_minus(sigma, s), 1])],
            EndoFamily::Lower { s } => [v([0, ext.one_minus(s, 0), 1]), v([0, 0, 0]), v([1, s, 0])],
        }
    }

    pub fn map(self, ext: &Extension) -> EndoMap {
        EndoMap { images: self.images(ext), family: Some(self) }
    }

    pub fn is_identity(self) -> bool {
        self == EndoFamily::Upper { sigma: 1, s: 0 }
    }
}

impl fmt::Display for EndoFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndoFamily::Epsilon => write!(f, "eps"),
            EndoFamily::EpsilonPrime => write!(f, "eps'"),
            EndoFamily::Upper { sigma, s } => write!(f, "eps^{sigma}_{s}"),
            EndoFamily::Lower { s } => write!(f, "eps_{s}"),
        }
    }
}

/// A `K`-linear map given by the images of `a1, a2, a3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EndoMap {
    pub images: [Value; 3],
    pub family: Option<EndoFamily>,
}

impl EndoMap {
    pub fn apply(&self, ext: &Extension, x: &Value) -> Value {
        let r = ext.ring();
        let c = ext.coords(x);
        (0..3).fold(r.zero(), |acc, i| r.add(&acc, &r.scale(&Value::Residue(c[i]), &self.images[i])))
    }

    /// Matrix of the map on coordinates has a unit determinant.
    pub fn is_automorphism(&self, ext: &Extension) -> bool {
        let base = ext.ring().scalar_base().expect("table over Z/p");
        let rows: Vec<Vec<Value>> = self.images.iter().map(|v| ext.ring().coords(v)).collect();
        !base.is_zero(&determinant(base, &rows))
    }

    pub fn label(&self) -> String {
        self.family.map_or_else(|| "unclassified".to_string(), |f| f.to_string())
    }
}

/// Order in which a product `x * y` of endomorphisms is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CompositionOrder {
    /// `x * y = y ∘ x`: the row element acts first (endomorphisms acting
    /// from the right).
    RowThenColumn,
    /// `x * y = x ∘ y`.
    ColumnThenRow,
}

impl CompositionOrder {
    pub fn name(self) -> &'static str {
        match self {
            CompositionOrder::RowThenColumn => "row-then-column (x*y = y∘x)",
            CompositionOrder::ColumnThenRow => "column-then-row (x*y = x∘y)",
        }
    }
}

/// Fixed by [`determine_composition_order`] over Z/2 and Z/3.
pub const FROZEN_ORDER: CompositionOrder = CompositionOrder::RowThenColumn;

pub fn compose(ext: &Extension, x: &EndoMap, y: &EndoMap, order: CompositionOrder) -> EndoMap {
    let (first, second) = match order {
        CompositionOrder::RowThenColumn => (x, y),
        CompositionOrder::ColumnThenRow => (y, x),
    };
    let images = [0, 1, 2].map(|i| second.apply(ext, &first.images[i]));
    let family = classify_endo(ext, &images);
    EndoMap { images, family }
}

pub fn classify_endo(ext: &Extension, images: &[Value; 3]) -> Option<EndoFamily> {
    EndoFamily::all(ext).into_iter().find(|f| f.images(ext) == *images)
}

/// All unital `K`-algebra endomorphisms, found by trying every image of
/// `a1` and `a2` (the image of `a3` is forced by the unit) and checking the
/// nine basis products. Sorted by images.
pub fn enumerate_endos(ext: &Extension) -> Result<Vec<EndoMap>> {
    let ring = ext.ring();
    let elements = ring.element_list(1 << 20)?;
    let table = match ring.kind() {
        crate::ring::RingKind::Table(t) => t.clone(),
        _ => unreachable!("extension ring is a table algebra"),
    };
    let unit = ext.unit();
    let mut found: Vec<EndoMap> = elements
        .par_iter()
        .filter(|i1| ring.mul(i1, i1) == **i1)
        .flat_map_iter(|i1| {
            let elements = &elements;
            let unit = &unit;
            let table = &table;
            elements.iter().filter_map(move |i2| {
                let i3 = ring.sub(&ring.sub(unit, i1), i2);
                let images = [i1.clone(), i2.clone(), i3];
                let ok = (0..3).all(|i| {
                    (0..3).all(|j| {
                        let lhs = ring.mul(&images[i], &images[j]);
                        let prod = table.product(i, j);
                        let rhs = (0..3).fold(ring.zero(), |acc, k| {
                            ring.add(&acc, &ring.scale(&prod[k], &images[k]))
                        });
                        lhs == rhs
                    })
                });
                ok.then(|| {
                    let family = classify_endo(ext, &images);
                    EndoMap { images, family }
                })
            })
        })
        .collect();
    found.sort_by(|a, b| a.images.cmp(&b.images));
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_only() {
        assert!(Extension::new(4).is_err());
        assert!(Extension::new(1).is_err());
        assert!(Extension::new(7).is_ok());
    }

    #[test]
    fn counts_and_classification() {
        for p in [2u64, 3, 5] {
            let ext = Extension::new(p).unwrap();
            let endos = enumerate_endos(&ext).unwrap();
            assert_eq!(endos.len() as u64, p * p + p + 2, "p={p}");
            assert!(endos.iter().all(|e| e.family.is_some()));
            let autos: Vec<_> = endos.iter().filter(|e| e.is_automorphism(&ext)).collect();
            assert_eq!(autos.len() as u64, p * (p - 1));
            assert!(autos.iter().all(|e| matches!(e.family, Some(EndoFamily::Upper { sigma, .. }) if sigma != 0)));
        }
    }

    #[test]
    fn identity_is_eps_1_0() {
        let ext = Extension::new(3).unwrap();
        let images = [ext.a(1), ext.a(2), ext.a(3)];
        assert_eq!(classify_endo(&ext, &images), Some(EndoFamily::Upper { sigma: 1, s: 0 }));
    }

    #[test]
    fn composition_orders_differ() {
        let ext = Extension::new(3).unwrap();
        let x = EndoFamily::Upper { sigma: 2, s: 1 }.map(&ext);
        let y = EndoFamily::Upper { sigma: 2, s: 2 }.map(&ext);
        let xy = compose(&ext, &x, &y, CompositionOrder::RowThenColumn);
        let yx = compose(&ext, &x, &y, CompositionOrder::ColumnThenRow);
        // matrix rule: (σ 0; s 1)(τ 0; t 1) = (στ 0; sτ + t 1)
        assert_eq!(xy.family, Some(EndoFamily::Upper { sigma: 1, s: 1 }));
        assert_eq!(yx.family, Some(EndoFamily::Upper { sigma: 1, s: 2 }));
    }

    #[test]
    fn display_of_elements() {
        let ext = Extension::new(5).unwrap();
        assert_eq!(ext.show(&ext.unit()), "1");
        assert_eq!(ext.show(&ext.vec([1, 4, 0])), "a1 + 4a2");
        assert_eq!(ext.show(&ext.vec([0, 0, 0])), "0");
    }
}
