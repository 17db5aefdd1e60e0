//! Roots, cycles, the composition table and both action tables, each
//! checked entrywise against the family formulas for every parameter value.

use std::collections::{BTreeMap, BTreeSet};

use super::families::{CycleFamily, CycleKind, RootFamily, RootKind};
use super::poset::{minpoly, MinPoly};
use super::{compose, enumerate_endos, CompositionOrder, EndoFamily, EndoKind, EndoMap, Extension};
use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::notation::parse_poly;
use crate::poly::NcPoly;
use crate::ring::Value;
use crate::search::{cycle_representative, enumerate_splittings, find_roots, SearchMode, SearchTask};

pub(crate) fn target(ext: &Extension) -> NcPoly {
    parse_poly(ext.ring(), "X^3 - X^2").expect("fixed polynomial")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootRecord {
    pub element: Value,
    pub family: RootFamily,
    pub minpoly: MinPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReport {
    pub roots: Vec<RootRecord>,
    /// Distinct elements named by the four family formulas.
    pub family_elements: usize,
    /// The roots found are exactly the elements named by the families.
    pub families_cover: bool,
}

impl RootReport {
    pub fn count(&self) -> usize {
        self.roots.len()
    }
}

/// Every root of `X^3 - X^2`, matched to its family.
pub fn classify_roots(ext: &Extension) -> Result<RootReport> {
    let found = find_roots(&target(ext))?;
    let mut roots = Vec::with_capacity(found.len());
    for v in found {
        let family = RootFamily::classify(ext, &v)
            .ok_or_else(|| Error::Postcondition(format!("root {} matches no family", ext.show(&v))))?;
        let minpoly = minpoly(ext, &v)?;
        roots.push(RootRecord { element: v, family, minpoly });
    }
    let mut named: Vec<Value> = RootFamily::instances(ext).iter().map(|r| r.element(ext)).collect();
    named.sort();
    named.dedup();
    let families_cover = named == roots.iter().map(|r| r.element.clone()).collect::<Vec<_>>();
    Ok(RootReport { family_elements: named.len(), roots, families_cover })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleRecord {
    /// Least rotation.
    pub roots: Vec<Value>,
    pub family: CycleFamily,
    /// The three roots form a basis of `A` over `K`.
    pub basis: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleReport {
    pub cycles: Vec<CycleRecord>,
    /// Ordered splittings found by the search.
    pub splittings: usize,
    /// Every family instance is a splitting and every class has a family.
    pub families_match: bool,
    /// The roots are the union of the cycle supports.
    pub property_a: bool,
    /// The basis-forming cycles are exactly `c^τ_t` with `τ` a unit.
    pub property_b: bool,
}

pub fn classify_cycles(ext: &Extension) -> Result<CycleReport> {
    let f = target(ext);
    let outcome = enumerate_splittings(&SearchTask::new(f.clone(), SearchMode::AllSplittings)?)?;
    let reps: BTreeSet<Vec<Value>> = outcome.splittings.iter().map(|s| s.representative.clone()).collect();
    let base = ext.ring().scalar_base().expect("table over Z/p").clone();
    let mut cycles = Vec::with_capacity(reps.len());
    for rep in &reps {
        let tags = CycleFamily::classify(ext, rep);
        let family = *tags.first().ok_or_else(|| {
            Error::Postcondition(format!(
                "cycle ({}) matches no family",
                rep.iter().map(|v| ext.show(v)).collect::<Vec<_>>().join(", ")
            ))
        })?;
        let rows: Vec<Vec<Value>> = rep.iter().map(|v| ext.ring().coords(v)).collect();
        let basis = base.is_unit(&determinant(&base, &rows))?;
        cycles.push(CycleRecord { roots: rep.clone(), family, basis });
    }
    let family_reps: BTreeSet<Vec<Value>> = CycleFamily::instances(ext).iter().map(|c| c.representative(ext)).collect();
    let all_split = CycleFamily::instances(ext).iter().all(|c| {
        crate::splitting::SplittingWitness::monic(ext.ring().clone(), c.tuple(ext)).map(|w| w.expand() == f).unwrap_or(false)
    });
    let roots: BTreeSet<Value> = find_roots(&f)?.into_iter().collect();
    let support: BTreeSet<Value> = reps.iter().flatten().cloned().collect();
    let property_b = cycles
        .iter()
        .all(|c| c.basis == matches!(c.family, CycleFamily::UpperLower { tau, .. } if tau != 0));
    Ok(CycleReport {
        splittings: outcome.splittings.len(),
        families_match: all_split && family_reps == reps,
        property_a: roots == support,
        property_b,
        cycles,
    })
}

/// Printed value of `row * col`. `Err` when the printed formula uses a
/// parameter its row does not bind.
pub fn printed_product(ext: &Extension, row: EndoFamily, col: EndoFamily) -> std::result::Result<EndoFamily, &'static str> {
    use EndoFamily::*;
    Ok(match (row, col) {
        (Epsilon, _) => Epsilon,
        (EpsilonPrime, _) => EpsilonPrime,
        (Upper { .. }, Epsilon) => Epsilon,
        (Upper { .. }, EpsilonPrime) => EpsilonPrime,
        (Upper { sigma, s }, Upper { sigma: tau, s: t }) => Upper { sigma: ext.mul(tau, sigma), s: ext.add(ext.mul(t, sigma), s) },
        (Upper { .. }, Lower { s: t }) => Lower { s: t },
        (Lower { .. }, Epsilon) => EpsilonPrime,
        (Lower { .. }, EpsilonPrime) => Epsilon,
        (Lower { .. }, Upper { .. }) => return Err("formula eps_{tσ+s} uses σ, which the row eps_s does not bind"),
        (Lower { .. }, Lower { s: t }) => Upper { sigma: 0, s: t },
    })
}

/// Value of `row * col` under [`super::FROZEN_ORDER`].
pub fn corrected_product(ext: &Extension, row: EndoFamily, col: EndoFamily) -> EndoFamily {
    use EndoFamily::*;
    match (row, col) {
        (Upper { sigma, s }, Upper { sigma: tau, s: t }) => Upper { sigma: ext.mul(sigma, tau), s: ext.add(ext.mul(s, tau), t) },
        (Lower { s }, Upper { sigma: tau, s: t }) => Lower { s: ext.add(ext.mul(s, tau), t) },
        _ => printed_product(ext, row, col).expect("bound formula"),
    }
}

pub(crate) fn printed_product_formula(row: EndoKind, col: EndoKind) -> &'static str {
    use EndoKind::*;
    match (row, col) {
        (Epsilon, _) => "eps",
        (EpsilonPrime, _) => "eps'",
        (Upper, Epsilon) => "eps",
        (Upper, EpsilonPrime) => "eps'",
        (Upper, Upper) => "eps^{τσ}_{tσ+s}",
        (Upper, Lower) => "eps_t",
        (Lower, Epsilon) => "eps'",
        (Lower, EpsilonPrime) => "eps",
        (Lower, Upper) => "eps_{tσ+s}",
        (Lower, Lower) => "eps^0_t",
    }
}

pub(crate) fn corrected_product_formula(row: EndoKind, col: EndoKind) -> &'static str {
    match (row, col) {
        (EndoKind::Upper, EndoKind::Upper) => "eps^{στ}_{sτ+t}",
        (EndoKind::Lower, EndoKind::Upper) => "eps_{sτ+t}",
        _ => printed_product_formula(row, col),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidCell {
    pub row: EndoKind,
    pub col: EndoKind,
    pub printed: &'static str,
    pub corrected: &'static str,
    pub instances: usize,
    pub literal_failures: usize,
    pub corrected_failures: usize,
    /// First failing instance: row, column, actual product, printed value.
    pub example: Option<[String; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidReport {
    pub p: u64,
    pub order: CompositionOrder,
    pub endomorphisms: usize,
    pub automorphisms: Vec<EndoFamily>,
    pub neutral: Vec<EndoFamily>,
    pub cells: Vec<MonoidCell>,
}

impl MonoidReport {
    pub fn literal_ok(&self) -> bool {
        self.cells.iter().all(|c| c.literal_failures == 0)
    }

    pub fn corrected_ok(&self) -> bool {
        self.cells.iter().all(|c| c.corrected_failures == 0)
    }

    pub fn failing_cells(&self) -> Vec<&MonoidCell> {
        self.cells.iter().filter(|c| c.literal_failures > 0).collect()
    }
}

fn classified(ext: &Extension) -> Result<Vec<(EndoMap, EndoFamily)>> {
    enumerate_endos(ext)?
        .into_iter()
        .map(|e| {
            let f = e.family.ok_or_else(|| Error::Postcondition(format!("unclassified endomorphism {:?}", e.images)))?;
            Ok((e, f))
        })
        .collect()
}

pub fn verify_monoid_table(ext: &Extension, order: CompositionOrder) -> Result<MonoidReport> {
    let endos = classified(ext)?;
    let mut cells: BTreeMap<(EndoKind, EndoKind), MonoidCell> = BTreeMap::new();
    for row in EndoKind::ALL {
        for col in EndoKind::ALL {
            cells.insert(
                (row, col),
                MonoidCell {
                    row,
                    col,
                    printed: printed_product_formula(row, col),
                    corrected: corrected_product_formula(row, col),
                    instances: 0,
                    literal_failures: 0,
                    corrected_failures: 0,
                    example: None,
                },
            );
        }
    }
    for (x, fx) in &endos {
        for (y, fy) in &endos {
            let prod = compose(ext, x, y, order);
            let actual = prod.family.ok_or_else(|| Error::Postcondition(format!("{fx} * {fy} is not classified")))?;
            let cell = cells.get_mut(&(fx.kind(), fy.kind())).expect("all kinds present");
            cell.instances += 1;
            let printed = printed_product(ext, *fx, *fy);
            if printed != Ok(actual) {
                cell.literal_failures += 1;
                if cell.example.is_none() {
                    let shown = printed.map_or_else(|e| format!("undefined ({e})"), |f| f.to_string());
                    cell.example = Some([fx.to_string(), fy.to_string(), actual.to_string(), shown]);
                }
            }
            if corrected_product(ext, *fx, *fy) != actual {
                cell.corrected_failures += 1;
            }
        }
    }
    let neutral = endos
        .iter()
        .filter(|(e, _)| {
            endos.iter().all(|(x, _)| compose(ext, e, x, order).images == x.images && compose(ext, x, e, order).images == x.images)
        })
        .map(|(_, f)| *f)
        .collect();
    let automorphisms = endos.iter().filter(|(e, _)| e.is_automorphism(ext)).map(|(_, f)| *f).collect();
    Ok(MonoidReport {
        p: ext.p(),
        order,
        endomorphisms: endos.len(),
        automorphisms,
        neutral,
        cells: cells.into_values().collect(),
    })
}

/// How well one application order reproduces the printed table over Z/2
/// and Z/3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderScore {
    pub order: CompositionOrder,
    /// Cells (per prime) in which every product agrees.
    pub cells_agreeing: usize,
    pub cells: usize,
    pub products_agreeing: usize,
    pub products: usize,
}

/// Scores of both orders and the best one, by agreeing cells and then by
/// agreeing products.
pub fn determine_composition_order() -> Result<(CompositionOrder, Vec<OrderScore>)> {
    let mut scores = Vec::new();
    for order in [CompositionOrder::RowThenColumn, CompositionOrder::ColumnThenRow] {
        let mut score = OrderScore { order, cells_agreeing: 0, cells: 0, products_agreeing: 0, products: 0 };
        for p in [2, 3] {
            let rep = verify_monoid_table(&Extension::new(p)?, order)?;
            for c in &rep.cells {
                score.cells += 1;
                score.cells_agreeing += usize::from(c.literal_failures == 0);
                score.products += c.instances;
                score.products_agreeing += c.instances - c.literal_failures;
            }
        }
        scores.push(score);
    }
    let best = scores.iter().max_by_key(|s| (s.cells_agreeing, s.products_agreeing)).expect("two orders").order;
    Ok((best, scores))
}

pub fn printed_root_action(ext: &Extension, e: EndoFamily, r: RootFamily) -> RootFamily {
    use EndoFamily as E;
    use RootFamily as R;
    let zero = R::Upper { tau: 0 };
    match (e, r) {
        (_, R::Unit) => R::Unit,
        (E::Epsilon, R::Upper { .. } | R::UpperLower { .. }) => zero,
        (E::Epsilon, R::Lower { .. }) => R::Unit,
        (E::EpsilonPrime, R::Upper { .. } | R::Lower { .. }) => zero,
        (E::EpsilonPrime, R::UpperLower { .. }) => R::Unit,
        (E::Upper { sigma, .. }, R::Upper { tau }) => R::Upper { tau: ext.mul(tau, sigma) },
        (E::Upper { sigma, s }, R::UpperLower { tau, t }) => {
            R::UpperLower { tau: ext.mul(tau, sigma), t: ext.add(ext.mul(t, sigma), s) }
        }
        (E::Upper { sigma, s }, R::Lower { t }) => R::Lower { t: ext.add(ext.mul(t, sigma), s) },
        (E::Lower { .. }, R::Upper { .. }) => zero,
        (E::Lower { s }, R::UpperLower { .. }) => R::Lower { t: s },
        (E::Lower { s }, R::Lower { .. }) => R::UpperLower { tau: 0, t: s },
    }
}

pub(crate) fn printed_root_formula(e: EndoKind, r: RootKind) -> &'static str {
    use EndoKind as E;
    use RootKind as R;
    match (e, r) {
        (_, R::Unit) => "r",
        (E::Epsilon, R::Upper | R::UpperLower) => "r^0",
        (E::Epsilon, R::Lower) => "r",
        (E::EpsilonPrime, R::Upper | R::Lower) => "r^0",
        (E::EpsilonPrime, R::UpperLower) => "r",
        (E::Upper, R::Upper) => "r^{τσ}",
        (E::Upper, R::UpperLower) => "r^{τσ}_{tσ+s}",
        (E::Upper, R::Lower) => "r_{tσ+s}",
        (E::Lower, R::Upper) => "r^0",
        (E::Lower, R::UpperLower) => "r_s",
        (E::Lower, R::Lower) => "r^0_s",
    }
}

pub fn printed_cycle_action(ext: &Extension, e: EndoFamily, c: CycleFamily) -> CycleFamily {
    use CycleFamily as C;
    use EndoFamily as E;
    let zero = C::Upper { tau: 0 };
    match (e, c) {
        (E::Epsilon | E::EpsilonPrime, _) => zero,
        (E::Upper { sigma, .. }, C::Upper { tau }) => C::Upper { tau: ext.mul(tau, sigma) },
        (E::Upper { sigma, s }, C::UpperLower { tau, t }) => {
            C::UpperLower { tau: ext.mul(tau, sigma), t: ext.add(ext.mul(t, sigma), s) }
        }
        (E::Upper { .. }, C::Lower { t }) => C::Lower { t },
        (E::Lower { .. }, C::Upper { .. }) => zero,
        (E::Lower { s }, C::UpperLower { .. }) => C::Lower { t: s },
        (E::Lower { s }, C::Lower { .. }) => C::UpperLower { tau: 0, t: s },
    }
}

pub fn corrected_cycle_action(ext: &Extension, e: EndoFamily, c: CycleFamily) -> CycleFamily {
    match (e, c) {
        (EndoFamily::Upper { sigma, s }, CycleFamily::Lower { t }) => CycleFamily::Lower { t: ext.add(ext.mul(t, sigma), s) },
        _ => printed_cycle_action(ext, e, c),
    }
}

pub(crate) fn printed_cycle_formula(e: EndoKind, c: CycleKind) -> &'static str {
    use CycleKind as C;
    use EndoKind as E;
    match (e, c) {
        (E::Epsilon | E::EpsilonPrime, _) => "c^0",
        (E::Upper, C::Upper) => "c^{τσ}",
        (E::Upper, C::UpperLower) => "c^{τσ}_{tσ+s}",
        (E::Upper, C::Lower) => "c_t",
        (E::Lower, C::Upper) => "c^0",
        (E::Lower, C::UpperLower) => "c_s",
        (E::Lower, C::Lower) => "c^0_s",
    }
}

pub(crate) fn corrected_cycle_formula(e: EndoKind, c: CycleKind) -> &'static str {
    match (e, c) {
        (EndoKind::Upper, CycleKind::Lower) => "c_{tσ+s}",
        _ => printed_cycle_formula(e, c),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionCell {
    pub row: EndoKind,
    pub col: &'static str,
    pub printed: &'static str,
    pub corrected: &'static str,
    pub instances: usize,
    pub literal_failures: usize,
    pub corrected_failures: usize,
    /// First failing instance: endomorphism, argument, actual image, printed image.
    pub example: Option<[String; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionReport {
    pub p: u64,
    pub roots: Vec<ActionCell>,
    pub cycles: Vec<ActionCell>,
}

impl ActionReport {
    pub fn roots_literal_ok(&self) -> bool {
        self.roots.iter().all(|c| c.literal_failures == 0)
    }

    pub fn cycles_literal_ok(&self) -> bool {
        self.cycles.iter().all(|c| c.literal_failures == 0)
    }

    pub fn corrected_ok(&self) -> bool {
        self.roots.iter().chain(&self.cycles).all(|c| c.corrected_failures == 0)
    }
}

fn cell(row: EndoKind, col: &'static str, printed: &'static str, corrected: &'static str) -> ActionCell {
    ActionCell { row, col, printed, corrected, instances: 0, literal_failures: 0, corrected_failures: 0, example: None }
}

fn show_cycle(ext: &Extension, t: &[Value]) -> String {
    let names: Vec<String> = t
        .iter()
        .map(|v| RootFamily::classify(ext, v).map_or_else(|| ext.show(v), |r| r.to_string()))
        .collect();
    format!("({})", names.join(", "))
}

/// Applies every endomorphism to every parameter instance of every root and
/// cycle family and compares with the tables. An image that is not a root
/// (or not a splitting cycle) is a hard failure.
pub fn verify_action_tables(ext: &Extension) -> Result<ActionReport> {
    let endos = classified(ext)?;
    let f = target(ext);
    let ring = ext.ring();
    let mut roots: BTreeMap<(EndoKind, RootKind), ActionCell> = BTreeMap::new();
    let mut cycles: BTreeMap<(EndoKind, CycleKind), ActionCell> = BTreeMap::new();
    for e in EndoKind::ALL {
        for r in RootKind::ALL {
            roots.insert((e, r), cell(e, r.label(), printed_root_formula(e, r), printed_root_formula(e, r)));
        }
        for c in CycleKind::ALL {
            cycles.insert((e, c), cell(e, c.label(), printed_cycle_formula(e, c), corrected_cycle_formula(e, c)));
        }
    }
    for (map, fam) in &endos {
        for r in RootFamily::instances(ext) {
            let image = map.apply(ext, &r.element(ext));
            if !ring.is_zero(&f.right_eval(&image)?) {
                return Err(Error::Postcondition(format!("{fam}({r}) = {} is not a root", ext.show(&image))));
            }
            let c = roots.get_mut(&(fam.kind(), r.kind())).expect("all kinds present");
            c.instances += 1;
            let printed = printed_root_action(ext, *fam, r);
            if printed.element(ext) != image {
                c.literal_failures += 1;
                c.corrected_failures += 1;
                if c.example.is_none() {
                    let actual = RootFamily::classify(ext, &image).map_or_else(|| ext.show(&image), |x| x.to_string());
                    c.example = Some([fam.to_string(), r.to_string(), actual, printed.to_string()]);
                }
            }
        }
        for cyc in CycleFamily::instances(ext) {
            let image: Vec<Value> = cyc.tuple(ext).iter().map(|v| map.apply(ext, v)).collect();
            let w = crate::splitting::SplittingWitness::monic(ring.clone(), image.clone())?;
            if w.expand() != f {
                return Err(Error::Postcondition(format!("{fam}({cyc}) is not a splitting cycle")));
            }
            let rep = cycle_representative(&image);
            let c = cycles.get_mut(&(fam.kind(), cyc.kind())).expect("all kinds present");
            c.instances += 1;
            let printed = printed_cycle_action(ext, *fam, cyc);
            if printed.representative(ext) != rep {
                c.literal_failures += 1;
                if c.example.is_none() {
                    let actual = CycleFamily::classify(ext, &image)
                        .first()
                        .map_or_else(|| show_cycle(ext, &image), |x| x.to_string());
                    c.example = Some([fam.to_string(), cyc.to_string(), actual, printed.to_string()]);
                }
            }
            if corrected_cycle_action(ext, *fam, cyc).representative(ext) != rep {
                c.corrected_failures += 1;
            }
        }
    }
    Ok(ActionReport { p: ext.p(), roots: roots.into_values().collect(), cycles: cycles.into_values().collect() })
}
