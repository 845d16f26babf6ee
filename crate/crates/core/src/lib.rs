//! Workbench for secure computation of sums over directed acyclic networks.
//!
//! A *sum network* is a directed acyclic graph with source nodes holding
//! independent messages, a single sink that must recover a fixed linear
//! combination of those messages, and unit-capacity edges that an adversary
//! may wiretap. This crate provides the pieces needed to study how much of
//! the sum can be moved securely:
//!
//! - [`galois`]: exact arithmetic and dense linear algebra over prime fields.
//! - [`netmodel`]: the network type, its text format, validation, and the
//!   built-in example networks.
//! - [`cutlab`]: cut machinery (single-source and global min cuts,
//!   source-isolated cuts, cut classification and the augmented cut size).
//! - [`lincode`]: linear network codes, their file format, local
//!   realizability and sink decodability checks.
//! - [`sentinel`]: security verification, both algebraic (rank conditions)
//!   and by an exhaustive entropy oracle, plus wiretap sweeps.
//! - [`bounds`]: capacity bounds assembled from the cut quantities.
//! - [`forge`]: code constructors (secure routing, random base codes,
//!   key-mixing transforms) and exhaustive/randomized code search.
//! - [`cli`]: the command-line front end used by the `sumnet` binary.

pub mod bounds;
pub mod builtins;
pub mod cli;
pub mod cutlab;
pub mod error;
pub mod forge;
pub mod galois;
pub mod lincode;
pub mod netmodel;
pub mod sentinel;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
