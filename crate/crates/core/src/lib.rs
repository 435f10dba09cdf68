//! Exact lattice, group, representation and Zak-domain computations for
//! Gabor systems {M_{Bl} T_k : l, k ∈ Zᵈ} with rational B.

pub mod domains;
pub mod dual;
pub mod error;
pub mod frames;
pub mod group;
pub mod induced;
pub mod matching;
pub mod phase;
pub mod ratlin;
pub mod signal;
pub mod zak;

pub use error::{Error, Result};
