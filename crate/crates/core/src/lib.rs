//! Resolving sets and metric dimension of the n-dimensional hypercube.
//!
//! A set of landmark vertices `S` resolves a graph when every vertex has a
//! distinct vector of distances to the members of `S`. This crate verifies
//! that property on `Q^n` with packed bit-parallel keys, builds the classical
//! constructions (`{e_2, ..., e_n}`, the Erdős–Rényi sets, product lifts,
//! level sets), searches exhaustively for minimum sets at desk scale, and
//! cross-checks everything against a BFS verifier for arbitrary graphs.

pub mod cli;
pub mod construct;
pub mod error;
pub mod graphs;
pub mod hypercube;
pub mod resolve;
pub mod sample;
pub mod search;

pub use error::{Error, Result};
pub use hypercube::{Dimension, Landmarks, Vertex};
pub use resolve::{is_minimal, is_resolving, is_resolving_fast, VerificationReport};
