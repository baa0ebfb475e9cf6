//! Exact computational core: field arithmetic over `Q(w)`, plane cubics and
//! their Heisenberg symmetry, torsion loci in the symmetric cube of an
//! elliptic curve, intersection numbers, and covering numerology.

pub mod error;
pub mod exactfield;
pub mod planecurves;

pub use error::{Error, Result};
pub mod check;
pub mod coverops;
pub mod fixtures;
pub mod heisenberg;
pub mod intersection_ring;
pub mod torsion3fold;
