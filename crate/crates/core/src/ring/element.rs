use std::fmt;

use super::{Ring, Value};
use crate::error::{Error, Result};

/// A value together with the ring it lives in. Every binary operation checks
/// that both operands belong to the same ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    ring: Ring,
    value: Value,
}

impl Element {
    pub fn new(ring: Ring, value: Value) -> Result<Self> {
        ring.validate(&value)?;
        Ok(Element { ring, value })
    }

    /// For values produced by the ring's own arithmetic.
    pub(crate) fn trusted(ring: Ring, value: Value) -> Self {
        Element { ring, value }
    }

    pub fn zero(ring: &Ring) -> Self {
        Element::trusted(ring.clone(), ring.zero())
    }

    pub fn one(ring: &Ring) -> Self {
        Element::trusted(ring.clone(), ring.one())
    }

    pub fn from_int(ring: &Ring, c: i64) -> Self {
        Element::trusted(ring.clone(), ring.from_int(c))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    fn same_ring(&self, other: &Element) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.ring.to_string(), right: other.ring.to_string() })
        }
    }

    fn lift(&self, value: Value) -> Element {
        Element::trusted(self.ring.clone(), value)
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_ring(other)?;
        Ok(self.lift(self.ring.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.same_ring(other)?;
        Ok(self.lift(self.ring.sub(&self.value, &other.value)))
    }

    pub fn neg(&self) -> Element {
        self.lift(self.ring.neg(&self.value))
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.same_ring(other)?;
        Ok(self.lift(self.ring.mul(&self.value, &other.value)))
    }

    pub fn pow(&self, e: u64) -> Element {
        self.lift(self.ring.pow(&self.value, e))
    }

    pub fn commutator(&self, other: &Element) -> Result<Element> {
        self.same_ring(other)?;
        Ok(self.lift(self.ring.commutator(&self.value, &other.value)))
    }

    pub fn equals(&self, other: &Element) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.value == other.value)
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }

    pub fn is_one(&self) -> bool {
        self.ring.is_one(&self.value)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}
