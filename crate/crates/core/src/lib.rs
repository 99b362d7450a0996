//! Algebraic connectivity of undirected graphs.
//!
//! `fiedler-core` computes the second-smallest Laplacian eigenvalue λ₂ and its
//! eigenvector, evaluates closed-form upper bounds on λ₂ for degree-bounded
//! trees and cubic graphs, enumerates small extremal families up to
//! isomorphism, and runs the greedy edge-augmentation heuristic.
//!
//! The crate is `no_std` and needs only `alloc`. File IO, threading and the
//! command-line front end live in the companion `fiedler` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod canon;
pub mod constructions;
mod error;
pub mod graph;
pub mod graph6;
pub mod heuristics;
pub mod linalg;
pub mod search;
pub mod spectral;
pub mod trees;

pub use canon::{canonical_form, canonical_labeling, CanonicalForm};
pub use error::{Error, Result};
pub use graph::Graph;
pub use linalg::{EigenResult, SymMatrix};
pub use search::SearchOutcome;
