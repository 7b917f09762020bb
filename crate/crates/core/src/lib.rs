//! Exact structural analysis of chemical reaction networks: fundamental
//! decompositions, independence of decompositions, and transforms of
//! power-law systems into reactant-determined ones.

pub mod decomposition;
pub mod generators;
pub mod invariants;
pub mod kinetics;
pub mod linalg;
pub mod network;
pub mod transform;

pub use linalg::{Rational, RationalMatrix};
pub use network::{parse_network, parse_system, ReactionNetwork};
