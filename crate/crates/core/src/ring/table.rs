//! Finite-rank algebras over a commutative scalar ring, given by structure
//! constants on a distinguished basis.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Ring, Value};
use crate::error::{Error, Result};

/// JSON file layout of a table algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableDescriptor {
    pub basis_size: usize,
    /// `structure_constants[i][j]` holds the coordinates of `e_i * e_j`.
    pub structure_constants: Vec<Vec<Vec<i64>>>,
    pub unit_vector: Vec<i64>,
    pub base: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TableAlgebra {
    label: String,
    base: Ring,
    descriptor: TableDescriptor,
    constants: Vec<Vec<Vec<Value>>>,
    unit: Vec<Value>,
    commutative: bool,
}

impl TableAlgebra {
    /// Builds and validates an algebra: shapes, associativity on every basis
    /// triple, and two-sidedness of the unit on every basis element.
    pub fn new(label: impl Into<String>, base: Ring, descriptor: TableDescriptor) -> Result<Self> {
        if !base.is_scalar() {
            return Err(Error::InvalidRing(format!("table algebra base must be Z, Q or Zmod:n, got {base}")));
        }
        let m = descriptor.basis_size;
        if m == 0 {
            return Err(Error::InvalidRing("basis_size must be positive".into()));
        }
        let shape_ok = descriptor.structure_constants.len() == m
            && descriptor
                .structure_constants
                .iter()
                .all(|row| row.len() == m && row.iter().all(|v| v.len() == m))
            && descriptor.unit_vector.len() == m;
        if !shape_ok {
            return Err(Error::InvalidRing(format!(
                "structure constants must be {m}x{m} vectors of length {m} and the unit of length {m}"
            )));
        }
        let embed = |v: &Vec<i64>| v.iter().map(|&c| base.from_int(c)).collect::<Vec<_>>();
        let constants = descriptor
            .structure_constants
            .iter()
            .map(|row| row.iter().map(embed).collect())
            .collect();
        let unit = embed(&descriptor.unit_vector);
        let mut algebra = TableAlgebra {
            label: label.into(),
            base,
            descriptor,
            constants,
            unit,
            commutative: false,
        };
        algebra.check_axioms()?;
        algebra.commutative =
            (0..m).all(|i| (0..m).all(|j| algebra.constants[i][j] == algebra.constants[j][i]));
        Ok(algebra)
    }

    pub fn from_json_str(label: impl Into<String>, text: &str) -> Result<Self> {
        let descriptor: TableDescriptor = serde_json::from_str(text)?;
        let base = Ring::parse_spec(&descriptor.base)?;
        Self::new(label, base, descriptor)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json_str(path.display().to_string(), &text)
    }

    /// The three-dimensional algebra with basis `a_1, a_2, a_3` and products
    /// `a_1a_1 = a_1`, `a_2a_1 = a_2`, `a_3a_1 = -a_2`, `a_3a_2 = a_2`,
    /// `a_3a_3 = a_3` (all others zero), unit `a_1 + a_2 + a_3`. It is the
    /// upper-triangular 2x2 matrix ring written in the basis
    /// `E22, -E12, E11 + E12`.
    pub fn upper2(base: Ring) -> Result<Self> {
        let z = vec![0, 0, 0];
        let descriptor = TableDescriptor {
            basis_size: 3,
            structure_constants: vec![
                vec![vec![1, 0, 0], z.clone(), z.clone()],
                vec![vec![0, 1, 0], z.clone(), z.clone()],
                vec![vec![0, -1, 0], vec![0, 1, 0], vec![0, 0, 1]],
            ],
            unit_vector: vec![1, 1, 1],
            base: base.to_string(),
        };
        Self::new(format!("{UPPER2_PREFIX}{base}"), base, descriptor)
    }

    fn check_axioms(&self) -> Result<()> {
        let m = self.basis_size();
        let basis: Vec<Vec<Value>> = (0..m).map(|i| self.basis_coords(i)).collect();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let left = self.mul_coords(&self.mul_coords(&basis[i], &basis[j]), &basis[k]);
                    let right = self.mul_coords(&basis[i], &self.mul_coords(&basis[j], &basis[k]));
                    if left != right {
                        return Err(Error::InvalidRing(format!(
                            "table is not associative on basis triple ({i},{j},{k})"
                        )));
                    }
                }
            }
            if self.mul_coords(&self.unit, &basis[i]) != basis[i] || self.mul_coords(&basis[i], &self.unit) != basis[i] {
                return Err(Error::InvalidRing(format!("unit_vector is not a two-sided unit on e_{i}")));
            }
        }
        Ok(())
    }

    pub fn basis_coords(&self, i: usize) -> Vec<Value> {
        let mut v = vec![self.base.zero(); self.basis_size()];
        v[i] = self.base.one();
        v
    }

    pub(crate) fn mul_coords(&self, x: &[Value], y: &[Value]) -> Vec<Value> {
        let b = &self.base;
        let mut out = vec![b.zero(); self.basis_size()];
        for (i, xi) in x.iter().enumerate() {
            if b.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if b.is_zero(yj) {
                    continue;
                }
                let c = b.mul(xi, yj);
                for (k, t) in self.constants[i][j].iter().enumerate() {
                    if !b.is_zero(t) {
                        out[k] = b.add(&out[k], &b.mul(&c, t));
                    }
                }
            }
        }
        out
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn basis_size(&self) -> usize {
        self.descriptor.basis_size
    }

    pub fn unit(&self) -> &[Value] {
        &self.unit
    }

    pub fn descriptor(&self) -> &TableDescriptor {
        &self.descriptor
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Coordinates of `e_i * e_j` in the base ring.
    pub fn product(&self, i: usize, j: usize) -> &[Value] {
        &self.constants[i][j]
    }
}

pub(crate) const UPPER2_PREFIX: &str = "@ut2:";
