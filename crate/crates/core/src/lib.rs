//! Sign-vector calculus for conditional oriented matroids.
//!
//! A system of sign vectors is a finite ground set `E` together with a
//! non-empty set of maps `E -> {+1, 0, -1}`. This crate implements the
//! algebra of such systems: composition and the sign ordering, the axiom
//! predicates that carve out strong elimination systems, COMs, oriented
//! matroids and lopsided systems, minors and simplification, tope graphs,
//! cocircuit generation, hyperplane and carrier substructures, halfspace
//! decomposition and amalgamation, Euler–Poincaré counting, ranking systems
//! built from posets, and realizable systems built from exact rational
//! hyperplane arrangements.

pub mod axioms;
pub mod error;
pub mod euler;
pub mod fixtures;
pub mod generation;
pub mod guard;
pub mod io;
pub mod minors;
pub mod ranking;
pub mod realize;
pub mod sign;
pub mod simplex;
pub mod substructures;
pub mod topes;

pub use error::{Error, Result};
pub use guard::Guard;
pub use sign::{GroundSet, Sign, SignSystem, SignVector};
