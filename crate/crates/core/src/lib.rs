//! Cartesian Forest matching.
//!
//! A Cartesian Forest generalizes the Cartesian Tree to sequences with repeated
//! values: every occurrence of the minimum becomes a sibling root instead of
//! breaking ties arbitrarily. Two sequences match when their forests are
//! structurally equal.
//!
//! The crate provides:
//!
//! * [`forest`]: the forest object, an oracle builder and a linear stack builder.
//! * [`linear`]: Parent-Distance and Skipped-Number representations, plus the
//!   sliding [`WindowState`] used by the matchers.
//! * [`matcher`]: exact matching and the one-difference variants
//!   (swap, mismatch, insertion, deletion).
//! * [`signature`]: prefix-free forest signatures and τ-filters.
//! * [`combinatorics`]: bijections with Schröder trees and parentheses words,
//!   enumeration and counting.
//! * [`randgen`], [`bench`], [`seqio`]: generators, the benchmark harness and the
//!   text formats used by the `cfm` binary.
//!
//! All algorithms are generic over the element type and only ever use `Ord`.
//! The aliases below fix the element type used by the command-line front end.

pub mod bench;
pub mod combinatorics;
mod error;
pub mod forest;
pub mod linear;
pub mod matcher;
pub mod randgen;
pub mod seqio;
pub mod signature;

pub use error::{Error, Result};
pub use forest::{CartesianForest, ForestKey, NodeId};
pub use linear::{Repr, WindowState};
pub use matcher::{Counters, DiffKind, MatchResult};

/// Element type of sequences read from text and produced by the generators.
pub type Element = i64;

/// A sequence over [`Element`].
pub type Sequence = Vec<Element>;

/// Arbitrary-precision count used for Schröder–Hipparchus numbers.
pub type Count = num_bigint::BigUint;
