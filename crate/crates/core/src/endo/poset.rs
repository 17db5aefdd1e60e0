//! Minimal polynomials of the roots of `X^3 - X^2`, the partial order they
//! induce, and reachability of roots and cycles under endomorphisms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::families::{CycleFamily, RootFamily};
use super::tables::target;
use super::{enumerate_endos, EndoFamily, EndoKind, EndoMap, Extension};
use crate::error::{Error, Result};
use crate::poly::NcPoly;
use crate::ring::Value;
use crate::search::{cycle_representative, find_roots};

/// Monic divisor `X^i (X-1)^j` of `X^2 (X-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinPoly {
    pub x: u8,
    pub x_minus_one: u8,
}

impl MinPoly {
    pub const DIVISORS: [MinPoly; 6] = [
        MinPoly { x: 0, x_minus_one: 0 },
        MinPoly { x: 1, x_minus_one: 0 },
        MinPoly { x: 0, x_minus_one: 1 },
        MinPoly { x: 2, x_minus_one: 0 },
        MinPoly { x: 1, x_minus_one: 1 },
        MinPoly { x: 2, x_minus_one: 1 },
    ];

    pub fn degree(self) -> u8 {
        self.x + self.x_minus_one
    }

    pub fn divides(self, other: MinPoly) -> bool {
        self.x <= other.x && self.x_minus_one <= other.x_minus_one
    }

    pub fn poly(self, ext: &Extension) -> NcPoly {
        let ring = ext.ring();
        let mut p = NcPoly::one(ring);
        for _ in 0..self.x {
            p = p.mul(&NcPoly::linear(ring, &ring.zero())).expect("same ring");
        }
        for _ in 0..self.x_minus_one {
            p = p.mul(&NcPoly::linear(ring, &ring.one())).expect("same ring");
        }
        p
    }
}

impl fmt::Display for MinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = match self.x {
            0 => "",
            1 => "X",
            _ => "X^2",
        };
        match (x, self.x_minus_one) {
            ("", 0) => f.write_str("1"),
            ("", _) => f.write_str("X-1"),
            (x, 0) => f.write_str(x),
            (x, _) => write!(f, "{x}(X-1)"),
        }
    }
}

/// Divisibility-least divisor of `X^2 (X-1)` vanishing at `v`.
pub fn minpoly(ext: &Extension, v: &Value) -> Result<MinPoly> {
    let ring = ext.ring();
    let mut killing = Vec::new();
    for m in MinPoly::DIVISORS {
        if ring.is_zero(&m.poly(ext).right_eval(v)?) {
            killing.push(m);
        }
    }
    killing
        .iter()
        .copied()
        .find(|m| killing.iter().all(|k| m.divides(*k)))
        .ok_or_else(|| Error::Postcondition(format!("{} is not a root of X^2(X-1)", ext.show(v))))
}

/// Position of a root in the displayed diagram: `r^0` is kept apart from
/// `r^τ`, `τ ≠ 0`.
pub fn poset_label(ext: &Extension, v: &Value) -> &'static str {
    match RootFamily::classify(ext, v) {
        Some(RootFamily::Upper { tau: 0 }) => "r^0",
        Some(RootFamily::Upper { .. }) => "r^τ",
        Some(RootFamily::UpperLower { .. }) => "r^τ_t",
        Some(RootFamily::Lower { .. }) => "r_t",
        Some(RootFamily::Unit) => "r",
        None => "?",
    }
}

/// The displayed minimal-polynomial table.
pub fn expected_minpoly(label: &str) -> Option<MinPoly> {
    Some(match label {
        "r^0" => MinPoly { x: 1, x_minus_one: 0 },
        "r^τ" => MinPoly { x: 2, x_minus_one: 0 },
        "r^τ_t" | "r_t" => MinPoly { x: 1, x_minus_one: 1 },
        "r" => MinPoly { x: 0, x_minus_one: 1 },
        _ => return None,
    })
}

/// `x ≻ y` but `φ(x) ⋡ φ(y)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrderFailure {
    pub endo: EndoFamily,
    pub x: Value,
    pub y: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetReport {
    pub p: u64,
    /// Label, minimal polynomial, and whether it matches the displayed table.
    pub table: Vec<(&'static str, MinPoly, bool)>,
    /// `minpoly(φ(x))` divides `minpoly(x)` for every `φ` and root `x`.
    pub monotone: bool,
    pub monotone_counterexample: Option<(EndoFamily, Value)>,
    /// Every automorphism maps `x ≻ y` to `φ(x) ≻ φ(y)`.
    pub automorphisms_strict: bool,
    pub failures: Vec<OrderFailure>,
    /// Kinds of the endomorphisms with a failing pair.
    pub failing_kinds: BTreeSet<EndoKind>,
    /// Failing pairs grouped as (endomorphism kind, label of x, label of y).
    pub failing_patterns: BTreeSet<(EndoKind, &'static str, &'static str)>,
    /// Every endomorphism maps a lower level to a level no higher.
    pub levels_preserved: bool,
}

impl PosetReport {
    pub fn table_ok(&self) -> bool {
        self.table.iter().all(|t| t.2)
    }

    pub fn expected_patterns() -> BTreeSet<(EndoKind, &'static str, &'static str)> {
        [
            (EndoKind::EpsilonPrime, "r^0", "r^τ_t"),
            (EndoKind::Epsilon, "r^0", "r_t"),
            (EndoKind::Epsilon, "r", "r^τ_t"),
            (EndoKind::EpsilonPrime, "r", "r_t"),
        ]
        .into_iter()
        .collect()
    }

    pub fn exceptions_ok(&self) -> bool {
        self.failing_kinds == [EndoKind::Epsilon, EndoKind::EpsilonPrime].into_iter().collect()
            && self.failing_patterns == Self::expected_patterns()
    }

    pub fn all_pass(&self) -> bool {
        self.table_ok() && self.monotone && self.automorphisms_strict && self.exceptions_ok() && self.levels_preserved
    }
}

fn endos_with_family(ext: &Extension) -> Result<Vec<(EndoMap, EndoFamily)>> {
    enumerate_endos(ext)?
        .into_iter()
        .map(|e| match e.family {
            Some(f) => Ok((e, f)),
            None => Err(Error::Postcondition(format!("unclassified endomorphism {:?}", e.images))),
        })
        .collect()
}

pub fn verify_poset(ext: &Extension) -> Result<PosetReport> {
    let roots = find_roots(&target(ext))?;
    let mp: BTreeMap<Value, MinPoly> = roots.iter().map(|r| Ok((r.clone(), minpoly(ext, r)?))).collect::<Result<_>>()?;
    let above = |x: &Value, y: &Value| mp[x] != mp[y] && mp[x].divides(mp[y]);
    let at_least = |x: &Value, y: &Value| mp[x].divides(mp[y]);

    let mut table: Vec<(&'static str, MinPoly, bool)> = Vec::new();
    for r in &roots {
        let label = poset_label(ext, r);
        let entry = (label, mp[r], expected_minpoly(label) == Some(mp[r]));
        if !table.contains(&entry) {
            table.push(entry);
        }
    }
    table.sort_by_key(|t| ["r^0", "r^τ", "r^τ_t", "r_t", "r"].iter().position(|l| *l == t.0));

    let endos = endos_with_family(ext)?;
    let mut monotone_counterexample = None;
    let mut automorphisms_strict = true;
    let mut levels_preserved = true;
    let mut failures = Vec::new();
    for (map, fam) in &endos {
        let image: BTreeMap<&Value, Value> = roots.iter().map(|r| (r, map.apply(ext, r))).collect();
        for x in &roots {
            let fx = &image[x];
            let m = mp.get(fx).copied().ok_or_else(|| {
                Error::Postcondition(format!("{fam} maps {} to a non-root", ext.show(x)))
            })?;
            if !m.divides(mp[x]) && monotone_counterexample.is_none() {
                monotone_counterexample = Some((*fam, x.clone()));
            }
        }
        let auto = map.is_automorphism(ext);
        for x in &roots {
            for y in &roots {
                let (fx, fy) = (&image[x], &image[y]);
                if mp[x].degree() < mp[y].degree() && mp[fx].degree() > mp[fy].degree() {
                    levels_preserved = false;
                }
                if !above(x, y) {
                    continue;
                }
                if auto && !above(fx, fy) {
                    automorphisms_strict = false;
                }
                if !at_least(fx, fy) {
                    failures.push(OrderFailure { endo: *fam, x: x.clone(), y: y.clone() });
                }
            }
        }
    }
    failures.sort();
    let failing_kinds = failures.iter().map(|f| f.endo.kind()).collect();
    let failing_patterns =
        failures.iter().map(|f| (f.endo.kind(), poset_label(ext, &f.x), poset_label(ext, &f.y))).collect();
    Ok(PosetReport {
        p: ext.p(),
        table,
        monotone: monotone_counterexample.is_none(),
        monotone_counterexample,
        automorphisms_strict,
        failures,
        failing_kinds,
        failing_patterns,
        levels_preserved,
    })
}

/// One reachability property, under single application and under the
/// closure of repeated application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslateCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub single: bool,
    pub closure: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslateReport {
    pub p: u64,
    pub checks: Vec<TranslateCheck>,
}

impl TranslateReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.single)
    }
}

/// Everything reachable from `seeds` by repeated application of `step`.
fn closure<T: Ord + Clone>(seeds: Vec<T>, step: impl Fn(&T) -> Vec<T>) -> BTreeSet<T> {
    let mut seen: BTreeSet<T> = seeds.iter().cloned().collect();
    let mut frontier = seeds;
    while let Some(x) = frontier.pop() {
        for y in step(&x) {
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

pub fn verify_translates(ext: &Extension) -> Result<TranslateReport> {
    let f = target(ext);
    let roots: BTreeSet<Value> = find_roots(&f)?.into_iter().collect();
    let maps: Vec<EndoMap> = endos_with_family(ext)?.into_iter().map(|(m, _)| m).collect();
    let root_step = |v: &Value| maps.iter().map(|m| m.apply(ext, v)).collect::<Vec<_>>();
    let cycle_step = |c: &Vec<Value>| {
        maps.iter().map(|m| cycle_representative(&c.iter().map(|v| m.apply(ext, v)).collect::<Vec<_>>())).collect::<Vec<_>>()
    };
    let classes: BTreeSet<Vec<Value>> = CycleFamily::instances(ext).iter().map(|c| c.representative(ext)).collect();
    let show_root = |v: &Value| RootFamily::classify(ext, v).map_or_else(|| ext.show(v), |r| r.to_string());
    let show_cycle = |c: &Vec<Value>| {
        CycleFamily::classify(ext, c).first().map_or_else(|| format!("{c:?}"), |x| x.to_string())
    };

    let root_sources = [RootFamily::Upper { tau: 1 }.element(ext), RootFamily::UpperLower { tau: 1, t: 0 }.element(ext)];
    let root_sinks: BTreeSet<Value> = [RootFamily::Upper { tau: 0 }.element(ext), RootFamily::Unit.element(ext)].into();
    let cycle_sources =
        [CycleFamily::Upper { tau: 1 }.representative(ext), CycleFamily::UpperLower { tau: 1, t: 0 }.representative(ext)];
    let cycle_sink = CycleFamily::Upper { tau: 0 }.representative(ext);

    let mut checks = Vec::new();

    let single: BTreeSet<Value> = root_sources.iter().flat_map(root_step).collect();
    let closed = closure(root_sources.to_vec(), root_step);
    let missing = roots.iter().find(|r| !single.contains(r));
    checks.push(TranslateCheck {
        name: "c",
        statement: "every root is a translate of r^1 or r^1_0",
        single: missing.is_none(),
        closure: roots.is_subset(&closed),
        counterexample: missing.map(show_root),
    });

    let stuck = roots.iter().find(|r| root_step(r).iter().all(|x| !root_sinks.contains(x)));
    let stuck_closed = roots.iter().any(|r| closure(vec![r.clone()], root_step).is_disjoint(&root_sinks));
    checks.push(TranslateCheck {
        name: "d",
        statement: "every root can be translated to r^0 or r",
        single: stuck.is_none(),
        closure: !stuck_closed,
        counterexample: stuck.map(show_root),
    });

    let single: BTreeSet<Vec<Value>> = cycle_sources.iter().flat_map(cycle_step).collect();
    let closed = closure(cycle_sources.to_vec(), cycle_step);
    let missing = classes.iter().find(|c| !single.contains(*c));
    checks.push(TranslateCheck {
        name: "e",
        statement: "every cycle is a translate of c^1 or c^1_0",
        single: missing.is_none(),
        closure: classes.is_subset(&closed),
        counterexample: missing.map(show_cycle),
    });

    let stuck = classes.iter().find(|c| !cycle_step(c).contains(&cycle_sink));
    let stuck_closed = classes.iter().any(|c| !closure(vec![c.clone()], cycle_step).contains(&cycle_sink));
    checks.push(TranslateCheck {
        name: "f",
        statement: "every cycle can be translated to c^0",
        single: stuck.is_none(),
        closure: !stuck_closed,
        counterexample: stuck.map(show_cycle),
    });

    Ok(TranslateReport { p: ext.p(), checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minpoly_table() {
        let ext = Extension::new(3).unwrap();
        assert_eq!(minpoly(&ext, &ext.unit()).unwrap().to_string(), "X-1");
        assert_eq!(minpoly(&ext, &ext.vec([0, 2, 0])).unwrap().to_string(), "X^2");
        assert_eq!(minpoly(&ext, &ext.vec([0, 0, 0])).unwrap().to_string(), "X");
        assert_eq!(minpoly(&ext, &ext.a(1)).unwrap().to_string(), "X(X-1)");
        assert!(minpoly(&ext, &ext.vec([2, 0, 0])).is_err());
    }

    #[test]
    fn poset_claims() {
        for p in [2u64, 3, 5] {
            let ext = Extension::new(p).unwrap();
            let rep = verify_poset(&ext).unwrap();
            assert!(rep.all_pass(), "p={p}: {rep:?}");
        }
    }

    #[test]
    fn eps_prime_exception() {
        let ext = Extension::new(2).unwrap();
        let rep = verify_poset(&ext).unwrap();
        assert!(rep.failures.iter().any(|f| f.endo == EndoFamily::EpsilonPrime
            && poset_label(&ext, &f.x) == "r^0"
            && poset_label(&ext, &f.y) == "r^τ_t"));
    }

    #[test]
    fn translates() {
        for p in [2u64, 3] {
            let ext = Extension::new(p).unwrap();
            let rep = verify_translates(&ext).unwrap();
            assert!(rep.checks.iter().all(|c| c.single && c.closure), "p={p}: {rep:?}");
        }
    }
}
