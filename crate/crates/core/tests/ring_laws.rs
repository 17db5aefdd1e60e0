mod common;

use common::{random_value, ring, rng, SAMPLED_RINGS, SMALL_RINGS};
use ncsplit::centralizer::{centralizer_exhaustive, centralizer_of_set, contains};
use ncsplit::ring::{Ring, Value};
use proptest::prelude::*;

fn axioms(r: &Ring, a: &Value, b: &Value, c: &Value) -> Result<(), String> {
    let fail = |law: &str| Err(format!("{law} fails on {r} at ({a}, {b}, {c})"));
    if r.mul(&r.mul(a, b), c) != r.mul(a, &r.mul(b, c)) {
        return fail("associativity");
    }
    if r.mul(a, &r.add(b, c)) != r.add(&r.mul(a, b), &r.mul(a, c)) {
        return fail("left distributivity");
    }
    if r.mul(&r.add(a, b), c) != r.add(&r.mul(a, c), &r.mul(b, c)) {
        return fail("right distributivity");
    }
    if r.add(&r.add(a, b), c) != r.add(a, &r.add(b, c)) || r.add(a, b) != r.add(b, a) {
        return fail("addition");
    }
    if r.add(a, &r.neg(a)) != r.zero() || r.add(a, &r.zero()) != *a {
        return fail("additive inverse");
    }
    if r.mul(a, &r.one()) != *a || r.mul(&r.one(), a) != *a {
        return fail("unit");
    }
    if r.commutator(a, b) != r.neg(&r.commutator(b, a)) {
        return fail("commutator antisymmetry");
    }
    let jacobi = r.add(
        &r.add(&r.commutator(a, &r.commutator(b, c)), &r.commutator(b, &r.commutator(c, a))),
        &r.commutator(c, &r.commutator(a, b)),
    );
    if !r.is_zero(&jacobi) {
        return fail("Jacobi identity");
    }
    Ok(())
}

#[test]
fn sampled_axioms() {
    for (k, spec) in SAMPLED_RINGS.iter().enumerate() {
        let r = ring(spec);
        let mut g = rng(1000 + k as u64);
        for _ in 0..1000 {
            let (a, b, c) = (random_value(&r, &mut g), random_value(&r, &mut g), random_value(&r, &mut g));
            r.validate(&a).unwrap();
            axioms(&r, &a, &b, &c).unwrap();
        }
    }
}

#[test]
fn exhaustive_axioms_small_rings() {
    for spec in SMALL_RINGS {
        let r = ring(spec);
        let xs = r.element_list(64).unwrap();
        assert_eq!(xs.len() as u128, r.size().unwrap());
        for a in &xs {
            for b in &xs {
                for c in &xs {
                    axioms(&r, a, b, c).unwrap();
                }
            }
        }
    }
}

#[test]
#[ignore = "512^3 triples; run with --ignored"]
fn exhaustive_axioms_mat3_z2() {
    let r = ring("Mat:3:Zmod:2");
    let xs = r.element_list(512).unwrap();
    for a in &xs {
        for b in &xs {
            for c in &xs {
                axioms(&r, a, b, c).unwrap();
            }
        }
    }
}

#[test]
fn enumeration_is_sorted_and_complete() {
    for spec in SMALL_RINGS {
        let r = ring(spec);
        let xs = r.element_list(1 << 10).unwrap();
        assert!(xs.windows(2).all(|w| w[0] < w[1]), "{spec}");
        assert_eq!(r.elements().unwrap().collect::<Vec<_>>(), xs);
    }
}

#[test]
fn inverses_are_two_sided() {
    for spec in SMALL_RINGS {
        let r = ring(spec);
        for x in r.element_list(64).unwrap() {
            if r.is_unit(&x).unwrap() {
                let y = r.inverse(&x).unwrap();
                assert!(r.is_one(&r.mul(&x, &y)) && r.is_one(&r.mul(&y, &x)), "{spec}: {x}");
            } else {
                assert!(r.inverse(&x).is_err());
            }
        }
    }
}

#[test]
fn linear_centralizer_matches_exhaustive() {
    for (k, spec) in ["Mat:2:Zmod:6", "UT:2:Zmod:4", "Table:@ut2:Zmod:3", "Mat:2:Zmod:4"].iter().enumerate() {
        let r = ring(spec);
        let mut g = rng(77 + k as u64);
        for n in 0..4 {
            let gens: Vec<Value> = (0..n).map(|_| random_value(&r, &mut g)).collect();
            let linear = centralizer_of_set(&r, &gens).unwrap();
            assert_eq!(linear.elements().unwrap(), &centralizer_exhaustive(&r, &gens).unwrap()[..], "{spec}");
        }
    }
}

fn assert_subring(r: &Ring, gens: &[Value], samples: &[Value]) {
    let desc = centralizer_of_set(r, gens).unwrap();
    assert!(contains(r, &desc, &r.one()).unwrap());
    assert!(contains(r, &desc, &r.zero()).unwrap());
    for x in samples {
        for y in samples {
            for z in [r.add(x, y), r.mul(x, y), r.neg(x)] {
                assert!(contains(r, &desc, &z).unwrap(), "{r}: closure fails");
                assert!(gens.iter().all(|g| r.commute(g, &z)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn centralizer_is_a_subring_finite(seed in any::<u64>(), idx in 0usize..4, n in 0usize..3) {
        let spec = ["Mat:2:Zmod:2", "UT:2:Zmod:3", "Table:@ut2:Zmod:2", "Mat:2:Zmod:3"][idx];
        let r = ring(spec);
        let mut g = rng(seed);
        let gens: Vec<Value> = (0..n).map(|_| random_value(&r, &mut g)).collect();
        let desc = centralizer_of_set(&r, &gens).unwrap();
        let xs = desc.elements().unwrap().to_vec();
        assert_subring(&r, &gens, &xs);
    }

    #[test]
    fn centralizer_is_a_subring_infinite(seed in any::<u64>(), idx in 0usize..3) {
        let spec = ["Mat:2:Z", "Mat:2:Q", "Table:@ut2:Z"][idx];
        let r = ring(spec);
        let mut g = rng(seed);
        let gens = vec![random_value(&r, &mut g)];
        let desc = centralizer_of_set(&r, &gens).unwrap();
        let basis = desc.basis().unwrap().to_vec();
        assert_subring(&r, &gens, &basis);
    }

    #[test]
    fn commutator_is_antisymmetric(seed in any::<u64>(), idx in 0usize..SAMPLED_RINGS.len()) {
        let r = ring(SAMPLED_RINGS[idx]);
        let mut g = rng(seed);
        let (a, b) = (random_value(&r, &mut g), random_value(&r, &mut g));
        prop_assert_eq!(r.commutator(&a, &b), r.neg(&r.commutator(&b, &a)));
        prop_assert!(r.is_zero(&r.commutator(&a, &a)));
    }

    #[test]
    fn value_json_round_trip(seed in any::<u64>(), idx in 0usize..SAMPLED_RINGS.len()) {
        let r = ring(SAMPLED_RINGS[idx]);
        let mut g = rng(seed);
        let a = random_value(&r, &mut g);
        prop_assert_eq!(r.parse_value(&a.to_json()).unwrap(), a);
    }
}
