use super::{Ring, RingKind, Value};
use crate::error::{Error, Result};

/// Every element of a finite ring exactly once, in ascending canonical order.
pub struct Elements {
    ring: Ring,
    atoms: Vec<Value>,
    digits: Vec<usize>,
    remaining: u128,
}

impl Ring {
    pub fn elements(&self) -> Result<Elements> {
        let size = self.size().ok_or_else(|| Error::Infinite(self.to_string()))?;
        let (atoms, slots) = match self.kind() {
            RingKind::Residue(n) => ((0..*n).map(Value::Residue).collect(), 1),
            RingKind::Matrix { size, base } => (base.elements()?.collect(), size * size),
            RingKind::UpperTriangular { size, base } => (base.elements()?.collect(), size * (size + 1) / 2),
            RingKind::Table(t) => (t.base().elements()?.collect(), t.basis_size()),
            RingKind::Int | RingKind::Rat => unreachable!("infinite rings rejected above"),
        };
        Ok(Elements { ring: self.clone(), atoms, digits: vec![0; slots], remaining: size })
    }

    /// All elements collected; refuses rings with more than `limit` elements.
    pub fn element_list(&self, limit: u128) -> Result<Vec<Value>> {
        let size = self.size().ok_or_else(|| Error::Infinite(self.to_string()))?;
        if size > limit {
            return Err(Error::TooLarge { estimate: size, limit });
        }
        Ok(self.elements()?.collect())
    }
}

impl Iterator for Elements {
    type Item = Value;

    fn next(&mut self) -> Option<Value> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let coords: Vec<Value> = self.digits.iter().map(|&d| self.atoms[d].clone()).collect();
        // odometer, last slot fastest
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.atoms.len() {
                break;
            }
            *d = 0;
        }
        Some(self.ring.from_coords(&coords))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_in_order() {
        let r = Ring::residue(3).unwrap();
        let all: Vec<_> = r.elements().unwrap().collect();
        assert_eq!(all, vec![Value::Residue(0), Value::Residue(1), Value::Residue(2)]);
    }

    #[test]
    fn counts_and_canonical_order() {
        let z2 = Ring::residue(2).unwrap();
        for (ring, n) in [
            (Ring::upper_triangular(2, z2.clone()).unwrap(), 8),
            (Ring::matrix(2, z2.clone()).unwrap(), 16),
            (Ring::parse_spec("Table:@ut2:Zmod:3").unwrap(), 27),
            (Ring::matrix(2, Ring::matrix(1, Ring::residue(3).unwrap()).unwrap()).unwrap(), 81),
        ] {
            let all: Vec<_> = ring.elements().unwrap().collect();
            assert_eq!(all.len(), n, "{ring}");
            assert!(all.windows(2).all(|w| w[0] < w[1]), "{ring} not strictly ascending");
            assert!(all.iter().all(|v| ring.validate(v).is_ok()));
        }
    }

    #[test]
    fn infinite_rings_refuse() {
        assert!(matches!(Ring::int().elements(), Err(Error::Infinite(_))));
        assert!(matches!(Ring::matrix(2, Ring::rat()).unwrap().elements(), Err(Error::Infinite(_))));
    }
}
