//! Executable conservativity machinery for higher-order Heyting arithmetic.
//!
//! The crate bundles a partial combinatory algebra ([`pca`]), the monadic
//! higher-order formula language ([`holog`]), a checker for the dependent type
//! theory lambda-C+ ([`kernel`]), the two translations of formulas into types
//! ([`translate`]), a realizability model of subsingletons, PERs and assemblies
//! ([`model`]), realizer extraction and the equivalence harnesses
//! ([`realize`]), and the forcing translation ([`forcing`]).

pub mod forcing;
pub mod holog;
pub mod kernel;
pub mod model;
pub mod pca;
pub mod realize;
pub mod translate;
mod tri;

pub use tri::Tri;

/// Naturals as they appear in arithmetic, numerals and pairing.
pub type Nat = u64;

/// Gödel numbers of combinator codes; these outgrow `u64` quickly.
pub type Code = num_bigint::BigUint;
