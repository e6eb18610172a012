//! Subset-sum algorithm laboratory.
//!
//! The crate runs three classic subset-sum solvers (brute force,
//! Horowitz–Sahni meet-in-the-middle and the pseudo-polynomial dynamic
//! program) as *instrumented* algorithms. Every run emits a [`Trace`]: the
//! log of which subsets were determined in which step, and whether each one
//! was *checked* (determined on its own) or obtained as a *collateral gain*
//! (determined through other subsets).
//!
//! On top of traces sit the analyzers in [`trace`] (per-step distributions,
//! the one-checked-subset-per-step classification, audits and dependency
//! chains), the input-class search in [`inputsearch`], and the exact box
//! experiment over rational probabilities in [`boxprocess`].

pub mod boxprocess;
mod error;
pub mod inputsearch;
mod rng;
pub mod set;
pub mod solvers;
pub mod trace;

pub use error::{Error, Result};
pub use set::{enumerate_masks, InputSet, SubsetMask, MAX_ENUM_N};
pub use solvers::AlgorithmId;
pub use trace::{Distribution, Property, Trace};
