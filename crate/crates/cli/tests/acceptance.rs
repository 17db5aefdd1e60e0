//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs as a plain binary (`harness = false`).

use std::time::{Duration, Instant};

use ncsplit::catalog::{
    centralizer_shape, check_identities, example1_witness, example2_roots, word_span_rank,
};
use ncsplit::centralizer::{centralizer_exhaustive, centralizer_of_set};
use ncsplit::endo::{
    classify_cycles, classify_roots, enumerate_endos, verify_action_tables, verify_monoid_table, verify_poset,
    verify_translates, EndoFamily, Extension, MinPoly, FROZEN_ORDER,
};
use ncsplit::notation::parse_poly;
use ncsplit::ring::{Ring, RingKind, Value};
use ncsplit::search::quadratic_counterexample;
use ncsplit::splitting::{lemma2_factor, vandermonde, SplittingWitness};
use ncsplit::{verify_cyclic_theorem, Error, NcPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

type Outcome = Result<(bool, String), Error>;

fn ring(spec: &str) -> Ring {
    Ring::parse_spec(spec).expect("ring spec")
}

fn mat(r: &Ring, rows: serde_json::Value) -> Value {
    r.parse_value(&rows).expect("matrix literal")
}

/// `(X - a)(X - b)(X - c)` with a central variable, coefficient by coefficient.
fn cubic_by_hand(r: &Ring, a: &Value, b: &Value, c: &Value) -> Vec<Value> {
    let (ab, bc, ac) = (r.mul(a, b), r.mul(b, c), r.mul(a, c));
    vec![
        r.neg(&r.mul(&ab, c)),
        r.add(&r.add(&ab, &ac), &bc),
        r.neg(&r.add(&r.add(a, b), c)),
        r.one(),
    ]
}

/// `sum f_i a^i` and `sum a^i f_i` straight from the definition.
fn evals_by_definition(f: &NcPoly, a: &Value) -> (Value, Value) {
    let r = f.ring();
    let mut right = r.zero();
    let mut left = r.zero();
    for (i, c) in f.coeffs().iter().enumerate() {
        let p = r.pow(a, i as u64);
        right = r.add(&right, &r.mul(c, &p));
        left = r.add(&left, &r.mul(&p, c));
    }
    (right, left)
}

fn ac1() -> Outcome {
    let r = ring("UT:2:Z");
    let a = [mat(&r, json!([[0, 0], [0, 1]])), mat(&r, json!([[0, -1], [0, 0]])), mat(&r, json!([[1, 1], [0, 0]]))];
    let w = SplittingWitness::monic(r.clone(), a.to_vec())?;
    let target = parse_poly(&r, "X^3 - X^2")?;
    let by_hand = |i: usize| cubic_by_hand(&r, &a[i % 3], &a[(i + 1) % 3], &a[(i + 2) % 3]);
    let rotations_equal = (0..3).all(|k| by_hand(k) == target.coeffs() && w.rotate(k as i64).expand() == target);
    let roots = a.iter().all(|x| {
        let (re, le) = evals_by_definition(&target, x);
        r.is_zero(&re) && r.is_zero(&le) && r.is_zero(&target.right_eval(x).unwrap()) && r.is_zero(&target.left_eval(x).unwrap())
    });
    let minus_a2 = r.neg(&a[1]);
    let commutators = (0..3).all(|i| r.commutator(&a[i], &a[(i + 1) % 3]) == minus_a2) && !r.is_zero(&minus_a2);
    let swaps = (0..3).all(|i| {
        let mut t = a.clone();
        t.swap(i, (i + 1) % 3);
        cubic_by_hand(&r, &t[0], &t[1], &t[2]) != target.coeffs()
    });
    Ok((
        w.expand() == target && rotations_equal && roots && commutators && swaps,
        format!("expansion {}, rotations {rotations_equal}, roots {roots}, commutators {commutators}, swaps {swaps}", w.expand()),
    ))
}

fn ac2() -> Outcome {
    let frozen: [[i64; 6]; 6] = [
        [0, 0, 0, 0, 1, 1],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 0, -1, 1, 1],
        [0, 1, 0, 0, 0, 0],
        [1, 0, 1, 0, 1, 0],
        [0, 1, 0, 1, 0, 1],
    ];
    let z = Ring::int();
    let rep = vandermonde(&example1_witness(&ring("Mat:2:Z"))?)?;
    let shown: Vec<Vec<Value>> = frozen.iter().map(|row| row.iter().map(|&x| z.from_int(x)).collect()).collect();
    let equal = rep.matrix == shown;
    let singular = z.is_zero(&rep.determinant) && !rep.invertible;
    Ok((equal && singular, format!("entries equal {equal}, determinant {}", rep.determinant)))
}

fn ac3() -> Outcome {
    let r = ring("Mat:3:Z");
    let a = example2_roots(&r)?;
    let w = SplittingWitness::monic(r.clone(), a.clone())?;
    let target = parse_poly(&r, "X^3 - 4")?;
    let rotations = (0..3).all(|k| cubic_by_hand(&r, &a[k], &a[(k + 1) % 3], &a[(k + 2) % 3]) == target.coeffs());
    let report = verify_cyclic_theorem(&w);
    let roots = a.iter().all(|x| {
        let (re, le) = evals_by_definition(&target, x);
        r.is_zero(&re) && r.is_zero(&le)
    }) && report.roots_zero();
    let shown = mat(&r, json!([[0, 0, 6], [-6, 0, 0], [0, 3, 0]]));
    let commutators = (0..3).all(|i| r.commutator(&a[i], &a[(i + 1) % 3]) == shown);
    let z3 = ring("Mat:3:Zmod:3");
    let reduced: Vec<Value> = a.iter().map(|x| z3.reduce_from(&r, x)).collect::<Result<_, _>>()?;
    let common = reduced.iter().all(|x| *x == reduced[0]);
    let cube = SplittingWitness::monic(z3.clone(), vec![z3.one(); 3])?.expand();
    let degenerate = cube == parse_poly(&z3, "X^3 - 4")? && target.reduce_into(&z3)? == cube;
    Ok((
        w.expand() == target && report.rotations_equal && rotations && roots && commutators && common && degenerate,
        format!(
            "expansion {}, rotations {rotations}, roots {roots}, commutators {commutators}, mod 3 common {common}, (X-1)^3 {degenerate}",
            w.expand()
        ),
    ))
}

fn ac4() -> Outcome {
    let ids = check_identities();
    let failing: Vec<String> = ids.iter().filter(|c| !c.holds).map(|c| format!("E{}{}", c.unit.0, c.unit.1)).collect();
    Ok((
        failing.is_empty(),
        format!("{}/9 hold; failing {:?}; the ten words span rank {}", 9 - failing.len(), failing, word_span_rank()),
    ))
}

fn ac5() -> Outcome {
    let z6 = ring("Mat:3:Zmod:6");
    let linear = centralizer_of_set(&z6, &example2_roots(&z6)?)?;
    let found = linear.elements().map(<[Value]>::to_vec).unwrap_or_default();
    let shape = centralizer_shape(&z6)?;
    // Z/6 = Z/2 x Z/3: the exhaustive counts over the factors multiply.
    let mut crt = 1;
    for n in [2, 3] {
        let r = ring(&format!("Mat:3:Zmod:{n}"));
        crt *= centralizer_exhaustive(&r, &example2_roots(&r)?)?.len();
    }
    let q = ring("Mat:3:Q");
    let scalars = centralizer_of_set(&q, &example2_roots(&q)?)?.is_scalars(&q);
    let constraint_count = 3 * 6 * 6;
    Ok((
        found == shape && found.len() == crt && crt == constraint_count && scalars,
        format!("{} elements (shape {}, exhaustive over Z/2 x Z/3 {crt}); over Q scalars {scalars}", found.len(), shape.len()),
    ))
}

fn ac6() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for spec in ["UT:2:Zmod:2", "UT:2:Zmod:3"] {
        let r = ring(spec);
        let xs = r.element_list(1 << 10)?;
        let (mut checked, mut violations) = (0usize, 0usize);
        for a in &xs {
            for b in &xs {
                for c in &xs {
                    let w = SplittingWitness::monic(r.clone(), vec![a.clone(), b.clone(), c.clone()])?;
                    let f = w.expand();
                    if !f.coeffs().iter().all(|k| [a, b, c].iter().all(|x| r.commute(k, x))) {
                        continue;
                    }
                    checked += 1;
                    let rot = (1..3).all(|k| w.rotate(k).expand() == f);
                    let roots = [a, b, c].iter().all(|x| r.is_zero(&evals_by_definition(&f, x).0));
                    if !(rot && roots) {
                        violations += 1;
                    }
                }
            }
        }
        ok &= violations == 0 && checked > 0;
        detail.push(format!("{spec}: {checked} hypothesis triples, {violations} violations"));
    }
    Ok((ok, detail.join("; ")))
}

fn ac7() -> Outcome {
    let r = ring("UT:2:Zmod:2");
    let xs = r.element_list(1 << 10)?;
    let (mut checked, mut violations) = (0usize, 0usize);
    for len in 0..=4 {
        let mut polys: Vec<Vec<Value>> = vec![vec![]];
        for _ in 0..len {
            polys = polys.iter().flat_map(|p| xs.iter().map(move |x| [p.clone(), vec![x.clone()]].concat())).collect();
        }
        for coeffs in polys {
            let f = NcPoly::new(r.clone(), coeffs)?;
            for a in &xs {
                if !f.coeffs().iter().all(|c| r.commute(c, a)) {
                    continue;
                }
                let (q, rem) = f.right_divide_linear(a)?;
                if !r.is_zero(&rem) {
                    continue;
                }
                checked += 1;
                let commutes = q.coeffs().iter().all(|c| r.commute(c, a));
                let agrees = matches!(lemma2_factor(&f, a), Ok(ref g) if *g == q);
                if !(commutes && agrees && q.mul(&NcPoly::linear(&r, a))? == f) {
                    violations += 1;
                }
            }
        }
    }
    Ok((violations == 0 && checked > 0, format!("{checked} factorable pairs, {violations} violations")))
}

fn ac8() -> Outcome {
    let r = ring("Mat:2:Zmod:2");
    let found = quadratic_counterexample(&r)?;
    let noncommutative = match &found {
        Some(w) => {
            let f = w.expand();
            let a1 = &w.pseudoroots()[0];
            !r.is_zero(&evals_by_definition(&f, a1).0)
        }
        None => false,
    };
    let mut commutative_clean = true;
    for spec in ["Zmod:2", "Zmod:3", "Zmod:6", "Zmod:12"] {
        commutative_clean &= quadratic_counterexample(&ring(spec))?.is_none();
    }
    let witness = found.map_or_else(|| "none".to_string(), |w| w.to_json().to_string());
    Ok((noncommutative && commutative_clean, format!("Mat:2:Zmod:2 witness {witness}; commutative rings clean {commutative_clean}")))
}

fn ac9() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for p in [2u64, 3, 5] {
        let ext = Extension::new(p)?;
        let endos = enumerate_endos(&ext)?;
        let autos = endos.iter().filter(|e| e.is_automorphism(&ext)).count() as u64;
        let classified = endos.iter().all(|e| e.family.is_some());
        let monoid = verify_monoid_table(&ext, FROZEN_ORDER)?;
        let actions = verify_action_tables(&ext)?;
        let neutral = monoid.neutral == vec![EndoFamily::Upper { sigma: 1, s: 0 }];
        let counts = endos.len() as u64 == p * p + p + 2 && autos == p * (p - 1);
        let literal = monoid.literal_ok() && actions.roots_literal_ok() && actions.cycles_literal_ok();
        ok &= counts && classified && neutral && literal;
        let cells: Vec<String> =
            monoid.failing_cells().iter().map(|c| format!("{}*{}", c.row.label(), c.col.label())).collect();
        let cycle_cells: Vec<String> = actions
            .cycles
            .iter()
            .filter(|c| c.literal_failures > 0)
            .map(|c| format!("{} on {}", c.row.label(), c.col))
            .collect();
        detail.push(format!(
            "p={p}: {} endos, {autos} autos, neutral {neutral}, monoid cells off {cells:?}, cycle-action cells off {cycle_cells:?}, corrected tables hold {}",
            endos.len(),
            monoid.corrected_ok() && actions.corrected_ok()
        ));
    }
    Ok((ok, detail.join("; ")))
}

fn ac10() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for p in [2u64, 3] {
        let ext = Extension::new(p)?;
        let roots = classify_roots(&ext)?;
        // Brute-force root count: all of the p^3 elements.
        let f = parse_poly(ext.ring(), "X^3 - X^2")?;
        let brute = ext.ring().element_list(1 << 12)?.iter().filter(|x| ext.ring().is_zero(&f.right_eval(x).unwrap())).count();
        let cycles = classify_cycles(&ext)?;
        let translates = verify_translates(&ext)?;
        let count_ok = roots.count() as u64 == (p + 1) * (p + 1);
        ok &= count_ok
            && brute == roots.count()
            && roots.families_cover
            && cycles.families_match
            && cycles.property_a
            && cycles.property_b
            && translates.all_pass();
        detail.push(format!(
            "p={p}: {} roots (claimed {}, brute force {brute}), {} cycle classes, families {}, (a) {}, (b) {}, (c)-(f) {}",
            roots.count(),
            (p + 1) * (p + 1),
            cycles.cycles.len(),
            cycles.families_match,
            cycles.property_a,
            cycles.property_b,
            translates.all_pass()
        ));
    }
    Ok((ok, detail.join("; ")))
}

fn ac11() -> Outcome {
    let x = MinPoly { x: 1, x_minus_one: 0 };
    let x2 = MinPoly { x: 2, x_minus_one: 0 };
    let xx1 = MinPoly { x: 1, x_minus_one: 1 };
    let x1 = MinPoly { x: 0, x_minus_one: 1 };
    let frozen = [("r^0", x), ("r^τ", x2), ("r^τ_t", xx1), ("r_t", xx1), ("r", x1)];
    let mut ok = true;
    let mut detail = Vec::new();
    for p in [2u64, 3, 5] {
        let rep = verify_poset(&Extension::new(p)?)?;
        let table = rep.table.iter().all(|(label, mp, _)| frozen.iter().any(|(l, m)| l == label && m == mp))
            && frozen.iter().all(|(l, _)| rep.table.iter().any(|(label, _, _)| label == l));
        let kinds: Vec<&str> = rep.failing_kinds.iter().map(|k| k.label()).collect();
        let pass = table && rep.monotone && rep.automorphisms_strict && rep.exceptions_ok();
        ok &= pass;
        detail.push(format!(
            "p={p}: table {table}, monotone {}, failing {kinds:?} in {} patterns, automorphisms {}",
            rep.monotone,
            rep.failing_patterns.len(),
            rep.automorphisms_strict
        ));
    }
    Ok((ok, detail.join("; ")))
}

fn random_value(r: &Ring, g: &mut ChaCha8Rng) -> Value {
    match r.kind() {
        RingKind::Int => r.from_int(g.gen_range(-9..=9)),
        RingKind::Rat => {
            let d = r.inverse(&r.from_int(g.gen_range(1..=4))).expect("nonzero");
            r.mul(&r.from_int(g.gen_range(-9..=9)), &d)
        }
        RingKind::Residue(n) => Value::Residue(g.gen_range(0..*n)),
        RingKind::Matrix { size, base } => Value::Matrix((0..size * size).map(|_| random_value(base, g)).collect()),
        RingKind::UpperTriangular { size, base } => {
            let c: Vec<Value> = (0..size * (size + 1) / 2).map(|_| random_value(base, g)).collect();
            r.from_coords(&c)
        }
        RingKind::Table(t) => {
            let c: Vec<Value> = (0..t.basis_size()).map(|_| random_value(t.base(), g)).collect();
            r.from_coords(&c)
        }
    }
}

fn ac12() -> Outcome {
    const PAIRS: usize = 1000;
    let specs = [
        "Z", "Q", "Zmod:12", "Mat:2:Z", "Mat:2:Q", "Mat:3:Zmod:5", "UT:3:Z", "UT:2:Zmod:4", "Table:@ut2:Z", "Table:@ut2:Zmod:7",
    ];
    let mut g = ChaCha8Rng::seed_from_u64(12);
    let mut bad = Vec::new();
    for spec in specs {
        let r = ring(spec);
        for _ in 0..PAIRS {
            let d = g.gen_range(0..=6);
            let f = NcPoly::new(r.clone(), (0..=d).map(|_| random_value(&r, &mut g)).collect())?;
            let a = random_value(&r, &mut g);
            let (qr, rr) = f.right_divide_linear(&a)?;
            let (ql, rl) = f.left_divide_linear(&a)?;
            let (re, le) = evals_by_definition(&f, &a);
            let lin = NcPoly::linear(&r, &a);
            let ok = rr == re
                && rl == le
                && f.right_eval(&a)? == re
                && f.left_eval(&a)? == le
                && qr.mul(&lin)?.add(&NcPoly::constant(&r, rr))? == f
                && lin.mul(&ql)?.add(&NcPoly::constant(&r, rl))? == f;
            if !ok {
                bad.push(format!("{spec}: {f} at {a}"));
            }
        }
    }
    Ok((bad.is_empty(), format!("{} rings x {PAIRS} pairs, {} mismatches {:?}", specs.len(), bad.len(), bad.first())))
}

type Criterion = (&'static str, u64, fn() -> Outcome);

const CRITERIA: &[Criterion] = &[
    ("AC1 X^3 - X^2 over UT:2:Z: splitting, rotations, roots, commutators", 1, ac1),
    ("AC2 X^3 - X^2 Vandermonde matrix and determinant", 1, ac2),
    ("AC3 X^3 - 4 over Mat:3:Z: splitting and mod-3 degeneration", 1, ac3),
    ("AC4 X^3 - 4: nine matrix-unit identities over Q", 1, ac4),
    ("AC5 X^3 - 4: centralizer over Z/6 and Q", 30, ac5),
    ("AC6 cyclic theorem over UT:2:Zmod:2 and UT:2:Zmod:3", 60, ac6),
    ("AC7 commuting quotient law over UT:2:Zmod:2", 60, ac7),
    ("AC8 negative control", 30, ac8),
    ("AC9 endomorphism counts and tables over Z/2, Z/3, Z/5", 60, ac9),
    ("AC10 roots and cycles over Z/2, Z/3", 60, ac10),
    ("AC11 minimal polynomial poset", 30, ac11),
    ("AC12 division/evaluation duality", 30, ac12),
];

fn main() {
    let mut failed = 0;
    for (name, budget, check) in CRITERIA {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let (pass, detail) = match result {
            Ok((pass, detail)) => (pass && in_time, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        let timing = format!("{:.3}s of {budget}s{}", elapsed.as_secs_f64(), if in_time { "" } else { ", over budget" });
        println!("{} {name} [{timing}] {detail}", if pass { "PASS" } else { "FAIL" });
    }
    println!("{} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
