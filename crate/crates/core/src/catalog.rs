//! The two worked examples: a three-factor splitting of `X^3 - X^2` in
//! upper triangular 2x2 matrices and of `X^3 - 4` in 3x3 matrices, with
//! every claim about them packaged as a named check.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value as Json};

use crate::centralizer::centralizer_of_set;
use crate::error::{Error, Result};
use crate::linalg::{determinant, rational_kernel};
use crate::notation::parse_poly;
use crate::ring::{Ring, RingKind, TableAlgebra, Value};
use crate::splitting::{adjacent_swaps, vandermonde, verify_cyclic_theorem, SplittingWitness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub title: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn text(&self) -> String {
        let mut out = format!("{}\n", self.title);
        for c in &self.checks {
            let _ = write!(out, "  [{}] {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
            if !c.detail.is_empty() {
                let _ = write!(out, ": {}", c.detail);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Json {
        json!({
            "title": self.title,
            "all_pass": self.all_pass(),
            "checks": self.checks.iter().map(|c| json!({"check": c.name, "pass": c.pass, "detail": c.detail})).collect::<Vec<_>>(),
        })
    }
}

fn matrix(ring: &Ring, rows: &[&[i64]]) -> Result<Value> {
    ring.parse_value(&json!(rows))
}

fn list(xs: &[Value]) -> String {
    let shown: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    shown.join(", ")
}

/// `a1 = E22`, `a2 = -E12`, `a3 = E11 + E12`.
pub const EXAMPLE1_ROOTS: [[[i64; 2]; 2]; 3] = [[[0, 0], [0, 1]], [[0, -1], [0, 0]], [[1, 1], [0, 0]]];

/// Displayed 6x6 block Vandermonde matrix of the first example.
pub const EXAMPLE1_VANDERMONDE: [[i64; 6]; 6] = [
    [0, 0, 0, 0, 1, 1],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 0, -1, 1, 1],
    [0, 1, 0, 0, 0, 0],
    [1, 0, 1, 0, 1, 0],
    [0, 1, 0, 1, 0, 1],
];

/// Pseudoroots of the first example in `ring`: 2x2 upper triangular or full
/// matrices over a commutative base, or the basis `a1, a2, a3` of the
/// built-in table algebra.
pub fn example1_roots(ring: &Ring) -> Result<Vec<Value>> {
    match ring.kind() {
        RingKind::Matrix { size: 2, .. } | RingKind::UpperTriangular { size: 2, .. } => EXAMPLE1_ROOTS
            .iter()
            .map(|m| matrix(ring, &[&m[0], &m[1]]))
            .collect(),
        RingKind::Table(t) if t.basis_size() == 3 => {
            let base = t.base();
            Ok((0..3)
                .map(|i| ring.from_coords(&(0..3).map(|j| if i == j { base.one() } else { base.zero() }).collect::<Vec<_>>()))
                .collect())
        }
        _ => Err(Error::Unsupported(format!("the first example lives in UT:2, Mat:2 or Table:@ut2, not {ring}"))),
    }
}

pub fn example1_witness(ring: &Ring) -> Result<SplittingWitness> {
    SplittingWitness::monic(ring.clone(), example1_roots(ring)?)
}

/// `a1 = [[0,2,0],[0,0,2],[1,0,0]]`, `a2 = [[0,-1,0],[0,0,2],[-2,0,0]]`,
/// `a3 = [[0,-1,0],[0,0,-4],[1,0,0]]`.
pub const EXAMPLE2_ROOTS: [[[i64; 3]; 3]; 3] = [
    [[0, 2, 0], [0, 0, 2], [1, 0, 0]],
    [[0, -1, 0], [0, 0, 2], [-2, 0, 0]],
    [[0, -1, 0], [0, 0, -4], [1, 0, 0]],
];

/// Common value of the three adjacent commutators.
pub const EXAMPLE2_COMMUTATOR: [[i64; 3]; 3] = [[0, 0, 6], [-6, 0, 0], [0, 3, 0]];

pub fn example2_roots(ring: &Ring) -> Result<Vec<Value>> {
    match ring.kind() {
        RingKind::Matrix { size: 3, .. } => EXAMPLE2_ROOTS.iter().map(|m| matrix(ring, &[&m[0], &m[1], &m[2]])).collect(),
        _ => Err(Error::Unsupported(format!("the second example lives in Mat:3, not {ring}"))),
    }
}

pub fn example2_witness(ring: &Ring) -> Result<SplittingWitness> {
    SplittingWitness::monic(ring.clone(), example2_roots(ring)?)
}

/// A polynomial in the noncommuting `a1, a2, a3`: rational coefficients on
/// words of indices.
pub type Combination = Vec<(BigRational, Vec<usize>)>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The ten words the displayed identities use.
pub fn identity_words() -> Vec<Vec<usize>> {
    vec![
        vec![1],
        vec![2],
        vec![1, 1],
        vec![2, 2],
        vec![3, 3],
        vec![1, 1, 2],
        vec![2, 2, 3],
        vec![1, 2, 2],
        vec![1, 1, 2, 2],
        vec![2, 2, 3, 3],
    ]
}

/// The nine displayed expressions of the matrix units `E_ij`, keyed by
/// `(i, j)`.
pub fn displayed_identities() -> Vec<((usize, usize), Combination)> {
    let t = |n, d, w: &[usize]| (q(n, d), w.to_vec());
    vec![
        ((1, 1), vec![t(-1, 9, &[1, 1, 2]), t(-1, 18, &[2, 2, 3])]),
        ((1, 2), vec![t(-2, 3, &[2]), t(1, 15, &[1, 1, 2, 2]), t(-1, 10, &[2, 2, 3, 3])]),
        ((1, 3), vec![t(-1, 3, &[1, 1]), t(5, 6, &[2, 2]), t(1, 1, &[3, 3])]),
        ((2, 1), vec![t(1, 2, &[1, 1]), t(-1, 1, &[2, 2]), t(-1, 1, &[3, 3])]),
        ((2, 2), vec![t(1, 3, &[1, 2, 2]), t(5, 14, &[1, 1, 2]), t(2, 21, &[2, 2, 3])]),
        ((2, 3), vec![t(2, 9, &[1]), t(2, 9, &[2]), t(-1, 36, &[1, 1, 2, 2])]),
        ((3, 1), vec![t(-1, 2, &[2]), t(-1, 20, &[1, 1, 2, 2]), t(-1, 20, &[2, 2, 3, 3])]),
        ((3, 2), vec![t(2, 3, &[1, 1]), t(-2, 3, &[2, 2]), t(-1, 1, &[3, 3])]),
        ((3, 3), vec![t(1, 6, &[1, 2, 2]), t(-1, 9, &[1, 1, 2]), t(-2, 9, &[2, 2, 3])]),
    ]
}

fn rat_matrix_ring() -> Ring {
    Ring::matrix(3, Ring::rat()).expect("Mat:3:Q")
}

fn word(ring: &Ring, roots: &[Value], w: &[usize]) -> Value {
    w.iter().fold(ring.one(), |acc, &i| ring.mul(&acc, &roots[i - 1]))
}

/// Value of a combination at the second example's pseudoroots over Q.
pub fn evaluate_combination(c: &Combination) -> Value {
    let ring = rat_matrix_ring();
    let roots = example2_roots(&ring).expect("Mat:3:Q");
    c.iter().fold(ring.zero(), |acc, (k, w)| ring.add(&acc, &ring.scale(&Value::Rat(k.clone()), &word(&ring, &roots, w))))
}

pub fn matrix_unit(ring: &Ring, i: usize, j: usize) -> Value {
    let mut rows = vec![vec![0i64; 3]; 3];
    rows[i - 1][j - 1] = 1;
    ring.parse_value(&json!(rows)).expect("integer matrix")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub unit: (usize, usize),
    pub holds: bool,
    /// Value of the displayed right-hand side.
    pub value: Value,
}

/// Each displayed identity, evaluated exactly over Q.
pub fn check_identities() -> Vec<IdentityCheck> {
    let ring = rat_matrix_ring();
    displayed_identities()
        .into_iter()
        .map(|((i, j), c)| {
            let value = evaluate_combination(&c);
            IdentityCheck { unit: (i, j), holds: value == matrix_unit(&ring, i, j), value }
        })
        .collect()
}

/// Rank over Q of the span of the ten words at the pseudoroots.
pub fn word_span_rank() -> usize {
    let cols = word_columns();
    let rows: Vec<Vec<BigRational>> = (0..9).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    cols.len() - rational_kernel(&rows, cols.len()).len()
}

fn word_columns() -> Vec<Vec<BigRational>> {
    let ring = rat_matrix_ring();
    let roots = example2_roots(&ring).expect("Mat:3:Q");
    identity_words()
        .iter()
        .map(|w| match word(&ring, &roots, w) {
            Value::Matrix(xs) => xs
                .iter()
                .map(|x| match x {
                    Value::Rat(r) => r.clone(),
                    _ => unreachable!("rational entries"),
                })
                .collect(),
            _ => unreachable!("matrix value"),
        })
        .collect()
}

/// Coefficients on [`identity_words`] expressing `E_ij`, if any.
pub fn solve_identity(i: usize, j: usize) -> Option<Combination> {
    let cols = word_columns();
    let n = cols.len();
    let rows: Vec<Vec<BigRational>> = (0..9)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(if r == 3 * (i - 1) + (j - 1) { -BigRational::one() } else { BigRational::zero() });
            row
        })
        .collect();
    let v = rational_kernel(&rows, n + 1).into_iter().find(|v| !v[n].is_zero())?;
    let scale = v[n].clone();
    let words = identity_words();
    Some((0..n).filter(|&k| !v[k].is_zero()).map(|k| (&v[k] / &scale, words[k].clone())).collect())
}

pub fn show_combination(c: &Combination) -> String {
    if c.is_empty() {
        return "0".into();
    }
    c.iter()
        .map(|(k, w)| {
            let word: String = w.iter().map(|i| format!("a{i}")).collect();
            format!("({k}){word}")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// The matrices `[[α, β, 2γ], [-2γ, α, β], [-β, γ, α]]` with `3β = 0` and
/// `6γ = 0`, over a residue ring.
pub fn centralizer_shape(ring: &Ring) -> Result<Vec<Value>> {
    let base = ring.scalar_base().ok_or_else(|| Error::Unsupported(format!("{ring} has no scalar base")))?;
    let scalars = base.element_list(1 << 16)?;
    let times = |k: i64, x: &Value| base.mul(&base.from_int(k), x);
    let mut out = Vec::new();
    for alpha in &scalars {
        for beta in scalars.iter().filter(|b| base.is_zero(&times(3, b))) {
            for gamma in scalars.iter().filter(|g| base.is_zero(&times(6, g))) {
                out.push(Value::Matrix(vec![
                    alpha.clone(),
                    beta.clone(),
                    times(2, gamma),
                    times(-2, gamma),
                    alpha.clone(),
                    beta.clone(),
                    base.neg(beta),
                    gamma.clone(),
                    alpha.clone(),
                ]));
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomorphismReport {
    pub base: Ring,
    /// `φ(a_i) φ(a_j) = φ(a_i a_j)` for all basis pairs.
    pub multiplicative: bool,
    pub unital: bool,
    /// The coordinate matrix of `φ` has a unit determinant.
    pub bijective: bool,
}

impl IsomorphismReport {
    pub fn ok(&self) -> bool {
        self.multiplicative && self.unital && self.bijective
    }
}

/// The built-in table algebra over `base` against `UT(2, base)` via
/// `a1 -> E22`, `a2 -> -E12`, `a3 -> E11 + E12`. Linear, so basis products
/// and the unit decide it.
pub fn ut2_isomorphism(base: &Ring) -> Result<IsomorphismReport> {
    let table = TableAlgebra::upper2(base.clone())?;
    let ut = Ring::upper_triangular(2, base.clone())?;
    let images = example1_roots(&ut)?;
    let image = |coords: &[Value]| {
        coords.iter().zip(&images).fold(ut.zero(), |acc, (c, m)| ut.add(&acc, &ut.scale(c, m)))
    };
    let mut multiplicative = true;
    for i in 0..3 {
        for j in 0..3 {
            multiplicative &= ut.mul(&images[i], &images[j]) == image(table.product(i, j));
        }
    }
    let unital = image(table.unit()) == ut.one();
    let rows: Vec<Vec<Value>> = images.iter().map(|m| ut.coords(m)).collect();
    let bijective = base.is_unit(&determinant(base, &rows))?;
    Ok(IsomorphismReport { base: base.clone(), multiplicative, unital, bijective })
}

fn commutators(ring: &Ring, roots: &[Value]) -> Vec<Value> {
    let n = roots.len();
    (0..n).map(|i| ring.commutator(&roots[i], &roots[(i + 1) % n])).collect()
}

fn common_checks(w: &SplittingWitness, target: &str, checks: &mut Vec<Check>) -> Result<()> {
    let ring = w.ring();
    let f = parse_poly(ring, target)?;
    let rep = verify_cyclic_theorem(w);
    checks.push(Check::new(format!("expansion equals {target}"), rep.expanded == f, rep.expanded.to_string()));
    checks.push(Check::new(
        "all cyclic rotations expand identically",
        rep.rotations_equal,
        rep.first_differing_rotation.map_or_else(String::new, |k| format!("rotation {k} differs")),
    ));
    let mut failing = Vec::new();
    for (k, a) in w.pseudoroots().iter().enumerate() {
        if !ring.is_zero(&f.right_eval(a)?) || !ring.is_zero(&f.left_eval(a)?) {
            failing.push(format!("a{}", k + 1));
        }
    }
    checks.push(Check::new(
        "every pseudoroot is a right and left root",
        failing.is_empty(),
        failing.join(", "),
    ));
    Ok(())
}

/// Splitting, rotations, commutators, transpositions, Vandermonde, the
/// multiplication table and the centralizer of the first example.
pub fn example1_suite(ring: &Ring) -> Result<SuiteReport> {
    let w = example1_witness(ring)?;
    let roots = w.pseudoroots().to_vec();
    let mut checks = Vec::new();
    common_checks(&w, "X^3 - X^2", &mut checks)?;

    let minus_a2 = ring.neg(&roots[1]);
    let comms = commutators(ring, &roots);
    checks.push(Check::new(
        "[a1,a2] = [a2,a3] = [a3,a1] = -a2 != 0",
        comms.iter().all(|c| *c == minus_a2) && !ring.is_zero(&minus_a2),
        list(&comms),
    ));
    let swaps = adjacent_swaps(&w);
    checks.push(Check::new(
        "every adjacent transposition changes the expansion",
        swaps.iter().all(|s| !s.expansion_unchanged && s.consistent()),
        String::new(),
    ));

    match vandermonde(&w) {
        Ok(v) => {
            let base = &v.base;
            if v.matrix.len() == 6 {
                let shown: Vec<Vec<Value>> =
                    EXAMPLE1_VANDERMONDE.iter().map(|r| r.iter().map(|&x| base.from_int(x)).collect()).collect();
                checks.push(Check::new("Vandermonde matrix equals the displayed 6x6 matrix", v.matrix == shown, String::new()));
            }
            checks.push(Check::new(
                "Vandermonde matrix is not invertible",
                !v.invertible,
                format!("determinant {}", &v.determinant.to_string()),
            ));
        }
        Err(e) => checks.push(Check::new("Vandermonde matrix", false, e.to_string())),
    }

    if let Some(base) = ring.scalar_base().filter(|_| ring.rank() == Some(3)) {
        let table = TableAlgebra::upper2(base.clone())?;
        let combo = |c: &[Value]| c.iter().zip(&roots).fold(ring.zero(), |acc, (k, a)| ring.add(&acc, &ring.scale(k, a)));
        let ok = (0..3).all(|i| (0..3).all(|j| ring.mul(&roots[i], &roots[j]) == combo(table.product(i, j))));
        checks.push(Check::new("multiplication table of a1, a2, a3", ok, String::new()));
        let rows: Vec<Vec<Value>> = roots.iter().map(|a| ring.coords(a)).collect();
        checks.push(Check::new(
            "a1, a2, a3 form a basis over the base",
            base.is_unit(&determinant(base, &rows))?,
            String::new(),
        ));
        checks.push(Check::new("a1 + a2 + a3 = 1", combo(table.unit()) == ring.one(), String::new()));
    }

    match centralizer_of_set(ring, &roots) {
        Ok(c) => checks.push(Check::new("centralizer of {a1, a2, a3} is the scalars", c.is_scalars(ring), String::new())),
        Err(e) => checks.push(Check::new("centralizer of {a1, a2, a3}", false, e.to_string())),
    }
    Ok(SuiteReport { title: format!("X^3 - X^2 = (X - a1)(X - a2)(X - a3) over {ring}"), checks })
}

/// Splitting, rotations, commutators, centralizers over Z/6 and Q, the
/// mod-3 degeneration and the nine matrix-unit identities of the second
/// example.
pub fn example2_suite(ring: &Ring) -> Result<SuiteReport> {
    let w = example2_witness(ring)?;
    let roots = w.pseudoroots().to_vec();
    let mut checks = Vec::new();
    common_checks(&w, "X^3 - 4", &mut checks)?;

    let shown = matrix(ring, &[&EXAMPLE2_COMMUTATOR[0], &EXAMPLE2_COMMUTATOR[1], &EXAMPLE2_COMMUTATOR[2]])?;
    let comms = commutators(ring, &roots);
    checks.push(Check::new(
        "[a1,a2] = [a2,a3] = [a3,a1] = [[0,0,6],[-6,0,0],[0,3,0]]",
        comms.iter().all(|c| *c == shown),
        &comms[0].to_string(),
    ));
    let three_nonzero = ring.scalar_base().is_some_and(|b| !b.is_zero(&b.from_int(3)));
    if three_nonzero {
        checks.push(Check::new(
            "every adjacent transposition changes the expansion",
            adjacent_swaps(&w).iter().all(|s| !s.expansion_unchanged && s.consistent()),
            String::new(),
        ));
    }

    let z3 = Ring::matrix(3, Ring::residue(3)?)?;
    let reduced = example2_roots(&z3)?;
    checks.push(Check::new(
        "mod 3: a1 = a2 = a3",
        reduced.iter().all(|a| *a == reduced[0]),
        &reduced[0].to_string(),
    ));
    let cube = SplittingWitness::monic(z3.clone(), vec![z3.one(); 3])?.expand();
    let f3 = parse_poly(&z3, "X^3 - 4")?;
    checks.push(Check::new("mod 3: X^3 - 4 = (X - 1)^3", cube == f3, cube.to_string()));
    let w3 = SplittingWitness::monic(z3.clone(), reduced)?;
    checks.push(Check::new("mod 3: (X - a1)(X - a2)(X - a3) = (X - 1)^3", w3.expand() == cube, String::new()));

    let z6 = Ring::matrix(3, Ring::residue(6)?)?;
    let cz6 = centralizer_of_set(&z6, &example2_roots(&z6)?)?;
    let shape = centralizer_shape(&z6)?;
    let found = cz6.elements().map_or(0, <[Value]>::len);
    checks.push(Check::new(
        "centralizer over Z/6 is the displayed shape with 3β = 0, 6γ = 0",
        cz6.elements() == Some(&shape[..]),
        format!("{found} elements, shape has {} = 6·3·6", shape.len()),
    ));
    let mq = rat_matrix_ring();
    let cq = centralizer_of_set(&mq, &example2_roots(&mq)?)?;
    checks.push(Check::new("centralizer over Q is the scalars", cq.is_scalars(&mq), String::new()));

    let vq = vandermonde(&example2_witness(&mq)?)?;
    checks.push(Check::new(
        "Vandermonde matrix over Q is invertible",
        vq.invertible,
        format!("determinant {}", &vq.determinant.to_string()),
    ));

    for id in check_identities() {
        let (i, j) = id.unit;
        let detail = if id.holds {
            String::new()
        } else {
            let fix = solve_identity(i, j).map_or_else(|| "no expression in the ten words".into(), |c| show_combination(&c));
            format!("right-hand side is {}; E{i}{j} = {fix}", &id.value.to_string())
        };
        checks.push(Check::new(format!("displayed expression of E{i}{j} holds over Q"), id.holds, detail));
    }
    let rank = word_span_rank();
    checks.push(Check::new(
        "a1, a2, a3 generate Mat:3:Q (the ten words span)",
        rank == 9,
        format!("rank {rank}"),
    ));
    Ok(SuiteReport { title: format!("X^3 - 4 = (X - a1)(X - a2)(X - a3) over {ring}"), checks })
}
