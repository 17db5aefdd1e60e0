//! Splittings `f = f_n (X - a_1) ... (X - a_n)` and their cyclic rotations.

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::notation::json_ring;
use crate::poly::NcPoly;
use crate::ring::{Ring, RingKind, Value};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplittingWitness {
    ring: Ring,
    leading: Value,
    pseudoroots: Vec<Value>,
}

impl SplittingWitness {
    pub fn new(ring: Ring, leading: Value, pseudoroots: Vec<Value>) -> Result<Self> {
        if pseudoroots.is_empty() {
            return Err(Error::InvalidElement { ring: ring.to_string(), reason: "a splitting needs at least one factor".into() });
        }
        ring.validate(&leading)?;
        for a in &pseudoroots {
            ring.validate(a)?;
        }
        Ok(SplittingWitness { ring, leading, pseudoroots })
    }

    /// Leading coefficient one.
    pub fn monic(ring: Ring, pseudoroots: Vec<Value>) -> Result<Self> {
        let one = ring.one();
        SplittingWitness::new(ring, one, pseudoroots)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn leading(&self) -> &Value {
        &self.leading
    }

    pub fn pseudoroots(&self) -> &[Value] {
        &self.pseudoroots
    }

    pub fn len(&self) -> usize {
        self.pseudoroots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pseudoroots.is_empty()
    }

    /// `f_n (X - a_1) ... (X - a_n)`, multiplied left to right.
    pub fn expand(&self) -> NcPoly {
        expand_factors(&self.ring, &self.leading, &self.pseudoroots)
    }

    /// Cyclic shift; `k = 1` moves the last factor to the front.
    pub fn rotate(&self, k: i64) -> SplittingWitness {
        let n = self.pseudoroots.len();
        let k = k.rem_euclid(n as i64) as usize;
        let mut roots = self.pseudoroots.clone();
        roots.rotate_right(k);
        SplittingWitness { ring: self.ring.clone(), leading: self.leading.clone(), pseudoroots: roots }
    }

    /// Exchanges positions `i` and `i + 1` (0-based).
    pub fn swap_adjacent(&self, i: usize) -> SplittingWitness {
        let mut roots = self.pseudoroots.clone();
        roots.swap(i, i + 1);
        SplittingWitness { ring: self.ring.clone(), leading: self.leading.clone(), pseudoroots: roots }
    }

    pub fn to_json(&self) -> Json {
        json!({
            "ring": self.ring.to_string(),
            "leading": self.leading.to_json(),
            "pseudoroots": self.pseudoroots.iter().map(Value::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(json: &Json) -> Result<Self> {
        let ring = json_ring(json)?;
        let leading = match json.get("leading") {
            Some(l) => ring.parse_value(l)?,
            None => ring.one(),
        };
        let roots = json
            .get("pseudoroots")
            .and_then(Json::as_array)
            .ok_or_else(|| Error::Json("witness needs a `pseudoroots` array".into()))?;
        let roots = roots.iter().map(|a| ring.parse_value(a)).collect::<Result<_>>()?;
        SplittingWitness::new(ring, leading, roots)
    }
}

pub(crate) fn expand_factors(ring: &Ring, leading: &Value, roots: &[Value]) -> NcPoly {
    roots.iter().fold(NcPoly::constant(ring, leading.clone()), |acc, a| {
        acc.mul(&NcPoly::linear(ring, a)).expect("same ring")
    })
}

/// `(i, k)` pairs: coefficient `f_i` does not commute with pseudoroot `a_k`
/// (`k` counted from 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisCheck {
    pub ok: bool,
    pub violations: Vec<(usize, usize)>,
}

pub fn commutation_hypothesis(f: &NcPoly, pseudoroots: &[Value]) -> HypothesisCheck {
    let r = f.ring();
    let violations: Vec<(usize, usize)> = f
        .coeffs()
        .iter()
        .enumerate()
        .flat_map(|(i, c)| {
            pseudoroots.iter().enumerate().filter(move |(_, a)| !r.commute(c, a)).map(move |(k, _)| (i, k + 1))
        })
        .collect();
    HypothesisCheck { ok: violations.is_empty(), violations }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootValue {
    /// Position of the pseudoroot, from 1.
    pub index: usize,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub expanded: NcPoly,
    pub commutation_ok: bool,
    pub violations: Vec<(usize, usize)>,
    pub rotations_equal: bool,
    /// Smallest `k` with `expand(rotate(w, k)) != expand(w)`.
    pub first_differing_rotation: Option<usize>,
    /// `eval_commuting` values when the hypothesis holds, right values otherwise.
    pub roots: Vec<RootValue>,
    pub obstructions: Vec<Value>,
}

impl TheoremReport {
    pub fn roots_zero(&self) -> bool {
        let r = self.expanded.ring();
        self.roots.iter().all(|v| r.is_zero(&v.value))
    }

    /// First pseudoroot (from 1) whose value is nonzero.
    pub fn first_nonroot(&self) -> Option<usize> {
        let r = self.expanded.ring();
        self.roots.iter().find(|v| !r.is_zero(&v.value)).map(|v| v.index)
    }

    /// Rotations agree and every pseudoroot is a root.
    pub fn all_pass(&self) -> bool {
        self.rotations_equal && self.roots_zero()
    }

    /// The theorem as a law: the hypothesis implies both conclusions.
    pub fn theorem_holds(&self) -> bool {
        !self.commutation_ok || self.all_pass()
    }

    pub fn root_label(&self) -> &'static str {
        if self.commutation_ok {
            "roots"
        } else {
            "right roots"
        }
    }

    pub fn to_json(&self) -> Json {
        json!({
            "expanded": self.expanded.to_json(),
            "commutation_ok": self.commutation_ok,
            "violations": self.violations.iter().map(|(i, k)| json!([i, k])).collect::<Vec<_>>(),
            "rotations_equal": self.rotations_equal,
            "first_differing_rotation": self.first_differing_rotation,
            "evaluation": if self.commutation_ok { "commuting" } else { "right" },
            "roots_ok": self.roots.iter().map(|v| json!({"index": v.index, "value": v.value.to_json()})).collect::<Vec<_>>(),
            "obstructions": self.obstructions.iter().map(Value::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn verify_cyclic_theorem(w: &SplittingWitness) -> TheoremReport {
    let ring = w.ring();
    let expanded = w.expand();
    let hyp = commutation_hypothesis(&expanded, w.pseudoroots());
    let n = w.len();
    let first_differing_rotation = (1..n).find(|&k| w.rotate(k as i64).expand() != expanded);
    let roots = w
        .pseudoroots()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let value = if hyp.ok { expanded.eval_commuting(a) } else { expanded.right_eval(a) };
            RootValue { index: i + 1, value: value.expect("pseudoroots are validated") }
        })
        .collect();
    let obstructions = (0..n).map(|i| ring.commutator(&w.pseudoroots()[i], &w.pseudoroots()[(i + 1) % n])).collect();
    TheoremReport {
        expanded,
        commutation_ok: hyp.ok,
        violations: hyp.violations,
        rotations_equal: first_differing_rotation.is_none(),
        first_differing_rotation,
        roots,
        obstructions,
    }
}

/// Right division by `X - a` for `f` with coefficients commuting with `a`;
/// the quotient's coefficients are checked to commute with `a` as well.
pub fn lemma2_factor(f: &NcPoly, a: &Value) -> Result<NcPoly> {
    if let Some(index) = f.first_noncommuting(a) {
        return Err(Error::Hypothesis { index, with: a.to_string() });
    }
    let (g, r) = f.right_divide_linear(a)?;
    if !f.ring().is_zero(&r) {
        return Err(Error::NotAFactor(format!("X - {a} leaves remainder {r}")));
    }
    if let Some(i) = g.first_noncommuting(a) {
        return Err(Error::Postcondition(format!("quotient coefficient {i} = {} does not commute with {a}", g.coeff(i))));
    }
    Ok(g)
}

/// `g (X - a)` commuting with `X - a` implies `g` commutes with `X - a`.
pub fn lemma1_check(g: &NcPoly, a: &Value) -> Result<bool> {
    let h = NcPoly::linear(g.ring(), a);
    let p = g.mul(&h)?;
    Ok(!p.commutes_with(&h)? || g.commutes_with(&h)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapCheck {
    pub position: usize,
    pub commutator_zero: bool,
    pub factors_commute: bool,
    pub expansion_unchanged: bool,
}

impl SwapCheck {
    pub fn consistent(&self) -> bool {
        self.commutator_zero == self.factors_commute && self.factors_commute == self.expansion_unchanged
    }
}

/// Every adjacent transposition, compared three ways.
pub fn adjacent_swaps(w: &SplittingWitness) -> Vec<SwapCheck> {
    let ring = w.ring();
    let f = w.expand();
    let roots = w.pseudoroots();
    (0..w.len().saturating_sub(1))
        .map(|i| {
            let (x, y) = (NcPoly::linear(ring, &roots[i]), NcPoly::linear(ring, &roots[i + 1]));
            SwapCheck {
                position: i,
                commutator_zero: ring.is_zero(&ring.commutator(&roots[i], &roots[i + 1])),
                factors_commute: x.mul(&y).expect("same ring") == y.mul(&x).expect("same ring"),
                expansion_unchanged: w.swap_adjacent(i).expand() == f,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VandermondeReport {
    pub base: Ring,
    /// Flattened block matrix over the base, block-row-major.
    pub matrix: Vec<Vec<Value>>,
    pub determinant: Value,
    pub invertible: bool,
}

impl VandermondeReport {
    pub fn to_json(&self) -> Json {
        json!({
            "base": self.base.to_string(),
            "matrix": self.matrix.iter().map(|r| r.iter().map(Value::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "determinant": self.determinant.to_json(),
            "invertible": self.invertible,
        })
    }
}

/// Block matrix with rows `a_1^{n-1} .. a_n^{n-1}` down to `1 .. 1`, each
/// block written over the commutative base (table algebras through their
/// left-regular representation).
pub fn vandermonde(w: &SplittingWitness) -> Result<VandermondeReport> {
    let ring = w.ring();
    let (base, block): (Ring, Box<dyn Fn(&Value) -> Vec<Vec<Value>>>) = match ring.kind() {
        RingKind::Matrix { size, base } | RingKind::UpperTriangular { size, base } if base.is_commutative() => {
            let k = *size;
            (base.clone(), Box::new(move |v: &Value| match v {
                Value::Matrix(xs) => xs.chunks(k).map(<[Value]>::to_vec).collect(),
                _ => unreachable!("validated matrix"),
            }))
        }
        RingKind::Table(t) => {
            let r = ring.clone();
            (t.base().clone(), Box::new(move |v: &Value| r.left_regular(v).expect("table coordinates")))
        }
        _ => return Err(Error::Unsupported(format!("Vandermonde blocks over {ring}"))),
    };
    let n = w.len();
    let blocks: Vec<Vec<Vec<Vec<Value>>>> = (0..n)
        .map(|row| w.pseudoroots().iter().map(|a| block(&ring.pow(a, (n - 1 - row) as u64))).collect())
        .collect();
    let m = blocks[0][0].len();
    let matrix: Vec<Vec<Value>> = (0..n * m)
        .map(|i| (0..n * m).map(|j| blocks[i / m][j / m][i % m][j % m].clone()).collect())
        .collect();
    let det = determinant(&base, &matrix);
    let invertible = base.is_unit(&det)?;
    Ok(VandermondeReport { base, matrix, determinant: det, invertible })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryReport {
    /// `(p(a_1), ..., p(a_n))` for each sample `p`.
    pub images: Vec<Vec<Value>>,
    pub additive: bool,
    pub multiplicative: bool,
    pub unital: bool,
    pub kills_f: bool,
    pub rotation_permutes: bool,
}

impl CorollaryReport {
    pub fn ok(&self) -> bool {
        self.additive && self.multiplicative && self.unital && self.kills_f && self.rotation_permutes
    }
}

/// Checks pointwise that `p -> (p(a_1), ..., p(a_n))` is a unital ring map
/// on the samples, vanishes on `f`, and that rotating the witness rotates
/// the tuple.
pub fn corollary_hom_check(w: &SplittingWitness, samples: &[NcPoly]) -> Result<CorollaryReport> {
    let ring = w.ring();
    let f = w.expand();
    let hyp = commutation_hypothesis(&f, w.pseudoroots());
    if let Some(&(index, k)) = hyp.violations.first() {
        return Err(Error::Hypothesis { index, with: w.pseudoroots()[k - 1].to_string() });
    }
    let hom = |p: &NcPoly, roots: &[Value]| -> Result<Vec<Value>> { roots.iter().map(|a| p.eval_commuting(a)).collect() };
    let roots = w.pseudoroots();
    let images: Vec<Vec<Value>> = samples.iter().map(|p| hom(p, roots)).collect::<Result<_>>()?;
    let mut additive = true;
    let mut multiplicative = true;
    for (i, p) in samples.iter().enumerate() {
        for (j, q) in samples.iter().enumerate() {
            let sum = hom(&p.add(q)?, roots)?;
            let prod = hom(&p.mul(q)?, roots)?;
            for k in 0..roots.len() {
                additive &= sum[k] == ring.add(&images[i][k], &images[j][k]);
                multiplicative &= prod[k] == ring.mul(&images[i][k], &images[j][k]);
            }
        }
    }
    let unital = hom(&NcPoly::one(ring), roots)?.iter().all(|v| ring.is_one(v));
    let kills_f = hom(&f, roots)?.iter().all(|v| ring.is_zero(v));
    let rotated = w.rotate(1);
    let mut rotation_permutes = true;
    for (p, img) in samples.iter().zip(&images) {
        let mut expected = img.clone();
        expected.rotate_right(1);
        rotation_permutes &= hom(p, rotated.pseudoroots())? == expected;
    }
    Ok(CorollaryReport { images, additive, multiplicative, unital, kills_f, rotation_permutes })
}
