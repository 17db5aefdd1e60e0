//! Exhaustive root and splitting search over finite rings.
//!
//! A splitting `f = f_n (X - a_1) ... (X - a_n)` is found by choosing `a_n`
//! with zero right remainder and recursing on the quotient, which again has
//! leading coefficient `f_n`. Work is split across threads by the choice of
//! `a_n`; results are sorted canonically so the output does not depend on
//! the worker count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::poly::NcPoly;
use crate::ring::{Ring, Value};
use crate::splitting::{expand_factors, SplittingWitness};

/// Nodes (trial divisions) one branch may visit before giving up.
pub const NODE_LIMIT: u128 = 100_000_000;
/// Largest ring whose element list is materialized.
pub const RING_LIMIT: u128 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchMode {
    AllSplittings,
    CommutingSplittings,
    RootsOnly,
    CounterexampleHunt,
}

impl SearchMode {
    pub fn name(self) -> &'static str {
        match self {
            SearchMode::AllSplittings => "all_splittings",
            SearchMode::CommutingSplittings => "commuting_splittings_only",
            SearchMode::RootsOnly => "roots_only",
            SearchMode::CounterexampleHunt => "counterexample_hunt",
        }
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" | "all_splittings" => SearchMode::AllSplittings,
            "commuting" | "commuting_splittings_only" => SearchMode::CommutingSplittings,
            "roots" | "roots_only" => SearchMode::RootsOnly,
            "counterexample" | "counterexample_hunt" => SearchMode::CounterexampleHunt,
            _ => {
                return Err(Error::parse(
                    0,
                    format!("unknown mode `{s}` (all_splittings, commuting_splittings_only, roots_only, counterexample_hunt)"),
                ))
            }
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchTask {
    pub target: NcPoly,
    pub n: usize,
    pub mode: SearchMode,
    /// Threads; 0 means the rayon default.
    pub workers: usize,
}

impl SearchTask {
    pub fn new(target: NcPoly, mode: SearchMode) -> Result<Self> {
        let n = target.degree().ok_or_else(|| Error::Unsupported("search for the zero polynomial".into()))?;
        Ok(SearchTask { target, n, mode, workers: 0 })
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn ring(&self) -> &Ring {
        self.target.ring()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoundSplitting {
    pub witness: SplittingWitness,
    /// Index of the cycle class among the classes of this result, ordered
    /// by their representatives.
    pub class: usize,
    /// Lexicographically least rotation.
    pub representative: Vec<Value>,
}

impl FoundSplitting {
    pub fn to_json(&self) -> Json {
        json!({
            "pseudoroots": self.witness.pseudoroots().iter().map(Value::to_json).collect::<Vec<_>>(),
            "cycle_class": self.class,
            "class_representative": self.representative.iter().map(Value::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub mode: SearchMode,
    pub target: NcPoly,
    pub splittings: Vec<FoundSplitting>,
    pub roots: Vec<Value>,
    pub cycle_classes: usize,
}

impl SearchOutcome {
    pub fn summary_json(&self) -> Json {
        json!({
            "summary": {
                "ring": self.target.ring().to_string(),
                "target": self.target.to_string(),
                "mode": self.mode.name(),
                "splittings": self.splittings.len(),
                "cycle_classes": self.cycle_classes,
                "roots": self.roots.len(),
            }
        })
    }

    /// One JSON document per line: each witness (or root), then the summary.
    pub fn json_lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = if self.mode == SearchMode::RootsOnly {
            self.roots.iter().map(|r| json!({"root": r.to_json()}).to_string()).collect()
        } else {
            self.splittings.iter().map(|s| s.to_json().to_string()).collect()
        };
        lines.push(self.summary_json().to_string());
        lines
    }
}

/// Lexicographically least rotation of a tuple.
pub fn cycle_representative(roots: &[Value]) -> Vec<Value> {
    let n = roots.len();
    (0..n)
        .map(|k| {
            let mut r = roots.to_vec();
            r.rotate_left(k);
            r
        })
        .min()
        .unwrap_or_default()
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))
}

fn all_elements(ring: &Ring) -> Result<Vec<Value>> {
    ring.element_list(RING_LIMIT)
}

/// Elements `a` with `right_eval(f, a) = 0` and `left_eval(f, a) = 0`, in
/// canonical order.
pub fn find_roots(f: &NcPoly) -> Result<Vec<Value>> {
    find_roots_with(f, 0)
}

pub fn find_roots_with(f: &NcPoly, workers: usize) -> Result<Vec<Value>> {
    let ring = f.ring();
    let elements = all_elements(ring)?;
    pool(workers)?.install(|| {
        Ok(elements
            .par_iter()
            .filter(|a| {
                ring.is_zero(&f.right_eval(a).expect("ring element"))
                    && ring.is_zero(&f.left_eval(a).expect("ring element"))
            })
            .cloned()
            .collect())
    })
}

struct Budget(u128);

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.0 += 1;
        if self.0 > NODE_LIMIT {
            Err(Error::TooLarge { estimate: self.0, limit: NODE_LIMIT })
        } else {
            Ok(())
        }
    }
}

/// Tuples `(a_1 .. a_k)` with `f = f_k (X - a_1) ... (X - a_k)`, drawing
/// each `a_i` from `candidates`.
fn split_from(f: &NcPoly, candidates: &[Value], budget: &mut Budget) -> Result<Vec<Vec<Value>>> {
    let ring = f.ring();
    if f.degree() == Some(0) {
        return Ok(vec![Vec::new()]);
    }
    let mut out = Vec::new();
    for a in candidates {
        budget.tick()?;
        let (q, r) = f.right_divide_linear(a)?;
        if !ring.is_zero(&r) {
            continue;
        }
        for mut prefix in split_from(&q, candidates, budget)? {
            prefix.push(a.clone());
            out.push(prefix);
        }
    }
    Ok(out)
}

fn splittings_parallel(f: &NcPoly, candidates: &[Value], workers: usize) -> Result<Vec<Vec<Value>>> {
    let ring = f.ring();
    let branches: Vec<Result<Vec<Vec<Value>>>> = pool(workers)?.install(|| {
        candidates
            .par_iter()
            .map(|a| {
                let mut budget = Budget(1);
                let (q, r) = f.right_divide_linear(a)?;
                if !ring.is_zero(&r) {
                    return Ok(Vec::new());
                }
                let mut found = split_from(&q, candidates, &mut budget)?;
                for t in &mut found {
                    t.push(a.clone());
                }
                Ok(found)
            })
            .collect()
    });
    let mut all = Vec::new();
    for b in branches {
        all.extend(b?);
    }
    all.sort();
    Ok(all)
}

fn tag(ring: &Ring, leading: &Value, tuples: Vec<Vec<Value>>) -> (Vec<FoundSplitting>, usize) {
    let reps: Vec<Vec<Value>> = tuples.iter().map(|t| cycle_representative(t)).collect();
    let mut ids: BTreeMap<&Vec<Value>, usize> = reps.iter().map(|r| (r, 0)).collect();
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    let classes = ids.len();
    let found = tuples
        .iter()
        .zip(&reps)
        .map(|(t, rep)| FoundSplitting {
            witness: SplittingWitness::new(ring.clone(), leading.clone(), t.clone()).expect("validated elements"),
            class: ids[rep],
            representative: rep.clone(),
        })
        .collect();
    (found, classes)
}

pub fn enumerate_splittings(task: &SearchTask) -> Result<SearchOutcome> {
    let f = &task.target;
    let ring = f.ring();
    let degree = f.degree().ok_or_else(|| Error::Unsupported("search for the zero polynomial".into()))?;
    if task.n != degree {
        return Err(Error::Unsupported(format!("{} linear factors cannot multiply to degree {degree}", task.n)));
    }
    if !ring.is_finite() {
        return Err(Error::Infinite(ring.to_string()));
    }
    if task.mode == SearchMode::RootsOnly {
        let roots = find_roots_with(f, task.workers)?;
        return Ok(SearchOutcome { mode: task.mode, target: f.clone(), splittings: Vec::new(), roots, cycle_classes: 0 });
    }
    let mut candidates = all_elements(ring)?;
    if task.mode == SearchMode::CommutingSplittings {
        candidates.retain(|a| f.commutes_with_element(a));
    }
    let mut tuples = splittings_parallel(f, &candidates, task.workers)?;
    if task.mode == SearchMode::CounterexampleHunt {
        tuples.retain(|t| is_counterexample(f, t));
        tuples.truncate(1);
    }
    let leading = f.leading().expect("nonzero target").clone();
    let (splittings, cycle_classes) = tag(ring, &leading, tuples);
    Ok(SearchOutcome { mode: task.mode, target: f.clone(), splittings, roots: Vec::new(), cycle_classes })
}

fn is_counterexample(f: &NcPoly, roots: &[Value]) -> bool {
    roots.iter().any(|a| !f.ring().is_zero(&f.right_eval(a).expect("ring element")))
}

/// First splitting of `f` (canonical order) with a pseudoroot that is not a
/// right root of `f`.
pub fn counterexample_hunt(f: &NcPoly) -> Result<Option<SplittingWitness>> {
    let task = SearchTask::new(f.clone(), SearchMode::CounterexampleHunt)?;
    Ok(enumerate_splittings(&task)?.splittings.into_iter().next().map(|s| s.witness))
}

/// First pair `(a, b)` in canonical order with `a` not a right root of
/// `(X - a)(X - b)`.
pub fn quadratic_counterexample(ring: &Ring) -> Result<Option<SplittingWitness>> {
    let elements = all_elements(ring)?;
    for a in &elements {
        for b in &elements {
            let f = expand_factors(ring, &ring.one(), &[a.clone(), b.clone()]);
            if !ring.is_zero(&f.right_eval(a)?) {
                return Ok(Some(SplittingWitness::monic(ring.clone(), vec![a.clone(), b.clone()])?));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_poly;
    use crate::splitting::verify_cyclic_theorem;
    use serde_json::json;

    fn example1_roots(ring: &Ring) -> Vec<Value> {
        [json!([1, 0, 0]), json!([0, 1, 0]), json!([0, 0, 1])].iter().map(|x| ring.parse_value(x).unwrap()).collect()
    }

    #[test]
    fn example_one_commuting_search() {
        let ring = Ring::parse_spec("Table:@ut2:Zmod:2").unwrap();
        let f = parse_poly(&ring, "X^3 - X^2").unwrap();
        let out = enumerate_splittings(&SearchTask::new(f, SearchMode::CommutingSplittings).unwrap()).unwrap();
        let w = example1_roots(&ring);
        let hit = out.splittings.iter().find(|s| s.witness.pseudoroots() == w.as_slice()).expect("example witness");
        for k in 1..3 {
            let rot = SplittingWitness::monic(ring.clone(), w.clone()).unwrap().rotate(k);
            let other = out.splittings.iter().find(|s| s.witness == rot).expect("rotation present");
            assert_eq!(other.class, hit.class);
        }
        assert_eq!(out.splittings.len(), 24);
        assert_eq!(out.cycle_classes, 8);
        for s in &out.splittings {
            assert!(verify_cyclic_theorem(&s.witness).all_pass());
        }
    }

    #[test]
    fn commutative_square_zero() {
        let ring = Ring::residue(4).unwrap();
        let f = parse_poly(&ring, "X^2").unwrap();
        let out = enumerate_splittings(&SearchTask::new(f, SearchMode::AllSplittings).unwrap()).unwrap();
        let tuples: Vec<&[Value]> = out.splittings.iter().map(|s| s.witness.pseudoroots()).collect();
        assert!(tuples.contains(&[Value::Residue(0), Value::Residue(0)].as_slice()));
        assert!(tuples.contains(&[Value::Residue(2), Value::Residue(2)].as_slice()));
        assert_eq!(tuples.len(), 2);
    }

    #[test]
    fn linear_target() {
        let ring = Ring::parse_spec("UT:2:Zmod:3").unwrap();
        let c = ring.elements().unwrap().nth(13).unwrap();
        let f = NcPoly::linear(&ring, &c);
        let out = enumerate_splittings(&SearchTask::new(f.clone(), SearchMode::AllSplittings).unwrap()).unwrap();
        assert_eq!(out.splittings.len(), 1);
        assert_eq!(out.splittings[0].witness.pseudoroots(), &[c.clone()]);
        assert_eq!(find_roots(&f).unwrap(), vec![c]);
    }

    #[test]
    fn deterministic_across_workers() {
        let ring = Ring::parse_spec("Mat:2:Zmod:2").unwrap();
        let f = parse_poly(&ring, "X^2 + X").unwrap();
        let one = enumerate_splittings(&SearchTask::new(f.clone(), SearchMode::AllSplittings).unwrap().with_workers(1)).unwrap();
        let four = enumerate_splittings(&SearchTask::new(f, SearchMode::AllSplittings).unwrap().with_workers(4)).unwrap();
        assert_eq!(one.json_lines(), four.json_lines());
    }

    #[test]
    fn counterexamples() {
        let m = Ring::parse_spec("Mat:2:Zmod:2").unwrap();
        let w = quadratic_counterexample(&m).unwrap().expect("noncommutative counterexample");
        let f = w.expand();
        assert!(!m.is_zero(&f.right_eval(&w.pseudoroots()[0]).unwrap()));
        assert!(m.is_zero(&f.right_eval(&w.pseudoroots()[1]).unwrap()));
        assert!(counterexample_hunt(&f).unwrap().is_some());
        for spec in ["Zmod:2", "Zmod:4", "Zmod:6"] {
            assert!(quadratic_counterexample(&Ring::parse_spec(spec).unwrap()).unwrap().is_none());
        }
    }

    #[test]
    fn example_witness_is_not_a_counterexample() {
        let ring = Ring::parse_spec("Table:@ut2:Zmod:2").unwrap();
        let f = parse_poly(&ring, "X^3 - X^2").unwrap();
        let w = example1_roots(&ring);
        assert!(!is_counterexample(&f, &w));
    }

    #[test]
    fn infinite_rings_refuse() {
        let f = parse_poly(&Ring::int(), "X - 1").unwrap();
        assert!(matches!(find_roots(&f), Err(Error::Infinite(_))));
    }

    #[test]
    fn mode_names() {
        for m in [SearchMode::AllSplittings, SearchMode::CommutingSplittings, SearchMode::RootsOnly, SearchMode::CounterexampleHunt] {
            assert_eq!(m.name().parse::<SearchMode>().unwrap(), m);
        }
        assert!("bogus".parse::<SearchMode>().is_err());
    }
}
