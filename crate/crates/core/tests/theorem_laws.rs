mod common;

use common::{random_value, ring, rng};
use ncsplit::ring::{Ring, Value};
use ncsplit::search::{counterexample_hunt, enumerate_splittings, find_roots_with, quadratic_counterexample, SearchMode, SearchTask};
use ncsplit::splitting::{commutation_hypothesis, lemma1_check, lemma2_factor, SplittingWitness};
use ncsplit::{notation::parse_poly, verify_cyclic_theorem, Error, NcPoly};
use proptest::prelude::*;

fn polys_up_to(r: &Ring, len: usize) -> Vec<NcPoly> {
    let xs = r.element_list(1 << 12).unwrap();
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.iter().flat_map(|p: &Vec<Value>| xs.iter().map(move |x| [p.clone(), vec![x.clone()]].concat())).collect();
    }
    out.into_iter().map(|c| NcPoly::new(r.clone(), c).unwrap()).collect()
}

#[test]
fn theorem_holds_for_every_hypothesis_triple() {
    for spec in ["UT:2:Zmod:2", "UT:2:Zmod:3"] {
        let r = ring(spec);
        let xs = r.element_list(1 << 10).unwrap();
        let mut checked = 0;
        for a in &xs {
            for b in &xs {
                for c in &xs {
                    let w = SplittingWitness::monic(r.clone(), vec![a.clone(), b.clone(), c.clone()]).unwrap();
                    let rep = verify_cyclic_theorem(&w);
                    if rep.commutation_ok {
                        checked += 1;
                        assert!(rep.rotations_equal && rep.roots_zero(), "{spec}: {a} {b} {c}");
                    }
                }
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn theorem_sampled_over_mat2_z5() {
    let r = ring("Mat:2:Zmod:5");
    let mut g = rng(5);
    let scalars: Vec<Value> = (0..5).map(|k| r.from_int(k)).collect();
    for _ in 0..2000 {
        // pseudoroots in the centralizer of one random element keep the hypothesis likely
        let m = random_value(&r, &mut g);
        let pick = |g: &mut _| {
            let s = &scalars[rand::Rng::gen_range(g, 0..5)];
            let t = &scalars[rand::Rng::gen_range(g, 0..5)];
            r.add(&r.mul(s, &m), t)
        };
        let w = SplittingWitness::monic(r.clone(), vec![pick(&mut g), pick(&mut g), random_value(&r, &mut g)]).unwrap();
        let rep = verify_cyclic_theorem(&w);
        if rep.commutation_ok {
            assert!(rep.rotations_equal && rep.roots_zero());
        }
    }
}

#[test]
fn lemma_one_exhaustive() {
    for spec in ["UT:2:Zmod:2", "UT:2:Zmod:3"] {
        let r = ring(spec);
        let xs = r.element_list(1 << 10).unwrap();
        for g in polys_up_to(&r, 2) {
            for a in &xs {
                assert!(lemma1_check(&g, a).unwrap(), "{spec}: {g} {a}");
            }
        }
    }
}

#[test]
fn lemma_one_sampled_mat3_z5() {
    let r = ring("Mat:3:Zmod:5");
    let mut g = rng(31);
    for _ in 0..300 {
        let p = NcPoly::new(r.clone(), (0..3).map(|_| random_value(&r, &mut g)).collect()).unwrap();
        assert!(lemma1_check(&p, &random_value(&r, &mut g)).unwrap());
    }
}

#[test]
fn lemma_two_exhaustive() {
    for (spec, len) in [("UT:2:Zmod:2", 4), ("UT:2:Zmod:3", 3)] {
        let r = ring(spec);
        let xs = r.element_list(1 << 10).unwrap();
        let mut factored = 0;
        for f in polys_up_to(&r, len) {
            for a in &xs {
                match lemma2_factor(&f, a) {
                    Ok(g) => {
                        factored += 1;
                        assert!(g.commutes_with_element(a));
                        assert_eq!(g.mul(&NcPoly::linear(&r, a)).unwrap(), f);
                    }
                    Err(Error::Hypothesis { .. } | Error::NotAFactor(_)) => {}
                    Err(e) => panic!("{spec}: {f} at {a}: {e}"),
                }
            }
        }
        assert!(factored > 0);
    }
}

#[test]
fn hypothesis_is_needed() {
    let w = quadratic_counterexample(&ring("Mat:2:Zmod:2")).unwrap().unwrap();
    let rep = verify_cyclic_theorem(&w);
    assert!(!rep.commutation_ok);
    assert!(!commutation_hypothesis(&w.expand(), w.pseudoroots()).ok);
    assert_eq!(rep.first_nonroot(), Some(1));
    for spec in ["Zmod:2", "Zmod:6", "Zmod:12"] {
        assert!(quadratic_counterexample(&ring(spec)).unwrap().is_none(), "{spec}");
    }
    let r = ring("Mat:2:Zmod:2");
    let f = parse_poly(&r, "X^2").unwrap();
    if let Some(w) = counterexample_hunt(&f).unwrap() {
        assert_eq!(w.expand(), f);
        assert!(!verify_cyclic_theorem(&w).roots_zero());
    }
}

#[test]
fn search_is_deterministic_across_workers() {
    for (spec, text) in [("UT:2:Zmod:3", "X^3 - X^2"), ("Mat:2:Zmod:2", "X^2 + X"), ("Table:@ut2:Zmod:2", "X^3 - X^2")] {
        let r = ring(spec);
        let f = parse_poly(&r, text).unwrap();
        for mode in [SearchMode::AllSplittings, SearchMode::CommutingSplittings] {
            let one = enumerate_splittings(&SearchTask::new(f.clone(), mode).unwrap().with_workers(1)).unwrap();
            let four = enumerate_splittings(&SearchTask::new(f.clone(), mode).unwrap().with_workers(4)).unwrap();
            assert_eq!(one.json_lines(), four.json_lines(), "{spec} {mode}");
        }
        assert_eq!(find_roots_with(&f, 1).unwrap(), find_roots_with(&f, 4).unwrap());
    }
}

#[test]
fn every_found_splitting_expands_to_the_target() {
    let r = ring("UT:2:Zmod:2");
    let f = parse_poly(&r, "X^3 - X^2").unwrap();
    let out = enumerate_splittings(&SearchTask::new(f.clone(), SearchMode::AllSplittings).unwrap()).unwrap();
    assert!(!out.splittings.is_empty());
    for s in &out.splittings {
        assert_eq!(s.witness.expand(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn rotation_laws(seed in any::<u64>(), n in 1usize..6, j in -7i64..7, k in -7i64..7) {
        let r = ring("Mat:2:Zmod:3");
        let mut g = rng(seed);
        let w = SplittingWitness::monic(r.clone(), (0..n).map(|_| random_value(&r, &mut g)).collect()).unwrap();
        prop_assert_eq!(w.rotate(j).rotate(k), w.rotate(j + k));
        prop_assert_eq!(w.rotate(n as i64), w.clone());
        prop_assert_eq!(w.rotate(-j).rotate(j), w.clone());
    }

    #[test]
    fn central_pseudoroots_rotate_freely(seed in any::<u64>(), n in 1usize..5) {
        let r = ring("UT:3:Zmod:7");
        let mut g = rng(seed);
        let roots: Vec<Value> = (0..n).map(|_| r.from_int(rand::Rng::gen_range(&mut g, 0..7))).collect();
        let w = SplittingWitness::monic(r.clone(), roots).unwrap();
        let rep = verify_cyclic_theorem(&w);
        prop_assert!(rep.all_pass());
    }
}
