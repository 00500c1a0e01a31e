//! Exact computation of minimal faithful representation dimensions of
//! finite p-groups.
//!
//! The crate builds finite p-groups from spaces of alternating bilinear
//! forms over prime fields (generalized Heisenberg constructions), computes
//! their complex character tables exactly via a modular class-algebra
//! method, and determines the minimal dimension of a faithful complex
//! representation by a minimum-weight matroid-basis search over central
//! characters, cross-checked against a brute-force oracle.
//!
//! Everything is exact: field arithmetic is modular, character values are
//! stored as root-of-unity multiplicity vectors, and every structural claim
//! (orthogonality, kernel triviality, degree sums) is verified rather than
//! assumed.
//!
//! Module layout:
//! - [`ffield`]: linear algebra over F_p and extension fields via
//!   irreducible polynomials.
//! - [`forms`]: spaces of alternating forms, symplectic subspaces, and the
//!   antisymmetrization data used by the group builder.
//! - [`groups`]: finite groups as explicit multiplication tables with
//!   structural queries (center, commutators, conjugacy classes,
//!   isoclinism).
//! - [`heisenberg`]: the group construction on V x K* with the twisted
//!   product law.
//! - [`reptheory`]: exact character tables and derived data.
//! - [`rdim`]: bound functions and the minimal-faithful-dimension solver.
//! - [`catalog`]: named witness groups, the verification harness, and the
//!   group-expression mini-language behind the CLI.

// divisibility tests are written as `x % n == 0` throughout, matching the
// rest of the modular arithmetic
#![allow(clippy::manual_is_multiple_of)]

pub mod catalog;
pub mod ffield;
pub mod forms;
pub mod groups;
pub mod heisenberg;
pub mod rdim;
pub mod reptheory;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Shape or length mismatch between operands.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// An input exceeded one of the exhaustive-computation guards.
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    /// The input is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A constructed value failed its structural invariants.
    #[error("invalid construction: {0}")]
    Construction(String),

    /// Malformed textual input (group expressions, matrix files).
    #[error("parse error: {0}")]
    Parse(String),

    /// An exact self-check failed. This always indicates an engine bug,
    /// never a property of the input data.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default guards for the exhaustive computations.
///
/// All constructions in the shipped catalog sit far below these; the guards
/// exist so that a stray CLI input fails fast instead of grinding.
pub mod caps {
    /// Largest prime accepted for field and extension construction.
    pub const PRIME_CAP: u64 = 31;
    /// Largest extension degree searched for an irreducible polynomial.
    pub const EXT_DEGREE_CAP: u32 = 6;
    /// Largest group order for which multiplication tables are built.
    pub const ORDER_CAP: usize = 4096;
    /// Group order up to which associativity is verified exhaustively;
    /// larger tables are checked on sampled triples.
    pub const EXHAUSTIVE_ASSOC_CAP: usize = 512;
    /// Number of sampled triples for associativity above the exhaustive cap.
    pub const ASSOC_SAMPLES: usize = 10_000;
    /// Largest p^k enumerated by the form-space degeneracy census.
    pub const CENSUS_CAP: u64 = 100_000;
    /// Largest quotient / commutator order accepted by the isoclinism search.
    pub const ISOCLINISM_CAP: usize = 64;
    /// Largest number of subsets enumerated by the brute-force dimension
    /// oracle.
    pub const BRUTE_FORCE_SUBSET_CAP: u64 = 1_000_000;
}
