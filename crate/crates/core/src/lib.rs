//! Polynomials with coefficients in a noncommutative ring: factorization
//! into linear factors, cyclic rotations of splittings, exhaustive search
//! over finite rings, and an endomorphism explorer for a small algebra.

pub mod catalog;
pub mod centralizer;
pub mod endo;
pub mod error;
pub mod linalg;
pub mod notation;
pub mod poly;
pub mod ring;
pub mod search;
pub mod splitting;

pub use centralizer::{centralizer_of_set, CentralizerDescription};
pub use error::{Error, Result};
pub use poly::NcPoly;
pub use splitting::{verify_cyclic_theorem, SplittingWitness, TheoremReport};
pub use ring::{Element, Ring, RingKind, TableAlgebra, Value};
