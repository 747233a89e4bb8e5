//! Degree-8 circulant graphs of diameter `k` built from lattice coverings of
//! Z^4 by l1 balls.
//!
//! [`lattice`] holds the lattice `L_k`, [`quotient`] the isomorphism
//! `Z^4 / L_k -> Z_n` and the generator set, [`reduction`] the certified
//! reduction of any point to within distance `k` of the lattice, [`graph`] the
//! circulant itself with BFS, and [`audit`] the exhaustive checks tying them
//! together.

pub mod audit;
pub mod cli;
pub mod error;
pub mod graph;
pub mod lattice;
pub mod quotient;
pub mod reduction;
pub mod rules;

pub use error::{Error, Result};
pub use graph::{build_circulant, construct, diameter, distance_profile, CirculantGraph, DistanceProfile};
pub use lattice::{build_system, l1_distance, l1_norm, lies_between, order_formula, LatticeStep, LatticeSystem, Parity, Vec4};
pub use quotient::{generator_set, project, verify_cyclic, GeneratorSet};
pub use reduction::{reduce, word_from_certificate, Anchor, Certificate, GeneratorWord};
