//! Finite lattices, their principal congruences, and the lattice
//! constructions that represent order-triples `(P, Q, ψ)` as
//! `(Princ K, Princ L, φ_Hom)`.

pub mod congruence;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod iso;
pub mod lattice;
pub mod order;
pub mod triples;

pub use error::{Error, Result};
