//! Exact computations in Coxeter groups, the thin twin building Σ(W,S) and
//! the twin tree of SL₂ over GF(q)[t,t⁻¹].
//!
//! Modules:
//! - [`coxeter`]: word problem, descents, parabolic subgroups, reflections.
//! - [`thinb`]: chambers, residues, projections, parallelism and twin roots
//!   of Σ(W,S).
//! - [`diagram`]: spherical subsets and the diagram conditions R1–R3.
//! - [`bounded`]: classification of maximal bounded types and Levi root sets.
//! - [`twintree`]: the thick twin tree of SL₂(GF(q)[t,t⁻¹]).

pub mod bounded;
pub mod coxeter;
pub mod diagram;
pub mod error;
pub mod exec;
pub mod thinb;

pub use error::{Error, Result};
pub use exec::Exec;
pub mod twintree;
