//! Temperley–Lieb diagram calculus for fully commutative permutations and a
//! decision procedure for Kostant positivity, with brute-force verification
//! and exact enumeration.

pub mod algebra;
pub mod diagram;
pub mod enumerate;
pub mod error;
pub mod kostant;
pub mod laurent;
pub mod perm;
pub mod verify;

pub use algebra::{CellKind, CellSide, TLElement};
pub use diagram::{Node, TLDiagram};
pub use enumerate::{CountTable, Counts, IntPoly};
pub use error::{Error, Result};
pub use kostant::{KostantVerdict, NegativeWitness, SpecialFactor};
pub use laurent::LaurentPoly;
pub use perm::{Permutation, Tableau, TwoRowShape, Word};
pub use verify::{DistinguishReport, FcTable, Verification, VerificationSummary};
