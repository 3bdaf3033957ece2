//! Exact computation over small finite rings: constructions, distinguished
//! subsets, ring-class predicates and a registry of checkable statements.

pub mod axioms;
pub mod constructors;
pub mod error;
pub mod expr;
pub mod ideal;
pub mod invariants;
pub mod predicates;
pub mod ring;
pub mod subring;
pub mod theorems;

pub use error::{Result, RingError};
pub use ring::{Elem, FiniteRing, RingBackend, RingHom, Subset};
