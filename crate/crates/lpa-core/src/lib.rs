//! Lattice and quotient computations for Leavitt path algebras `L_R(E)` of a
//! finite directed graph `E` with coefficients in `Z` or `Z_n`.
//!
//! The crate works entirely at the symbolic level: graded ideals are never
//! materialised as sets of algebra elements. Instead they are represented by
//! the functions that classify them — a saturated function `f` on the lattice
//! of admissible pairs, or equivalently a graded ideal function `phi` on
//! extended vertices — and quotients are described by graph constructions
//! (quotient graphs and porcupine graphs) together with a symbolic
//! direct-sum descriptor.
//!
//! Module map:
//! - [`graph`]: finite directed multigraphs, cycles, Conditions (L) and (K)
//! - [`lattice`]: hereditary saturated sets, breaking vertices, the
//!   admissible-pair lattice
//! - [`ideal`]: principal-ideal arithmetic in `Z` and `Z_n`
//! - [`graded`]: saturated functions, graded ideal functions, classification,
//!   membership
//! - [`construct`]: quotient graphs, porcupine graphs, algebra recognition
//! - [`quotient`]: the quotient theorems and their cross-check
//! - [`gen`]: seeded random instances for property tests and benchmarks

pub mod construct;
pub mod gen;
pub mod graded;
pub mod graph;
pub mod ideal;
pub mod iso;
pub mod lattice;
pub mod quotient;
pub mod symbols;

pub use construct::{AlgebraDescriptor, PorcupineGraph, QuotientGraph, Term};
pub use graded::{ExtVertex, GradedIdealFn, IdealClass, IdealClassKind, SaturatedFn};
pub use graph::{Cycle, EdgeBundle, Graph, Mult, VertexClass, VertexSet};
pub use ideal::{PrincipalIdeal, RingSpec};
pub use lattice::{AdmissiblePair, HSSet, PairLattice};
pub use quotient::{CrossCheck, Decomposition, IBasicResult, QuotientReport};
pub use symbols::SymbolTable;

/// Crate-wide error type.
///
/// The split between `Validation` and the input errors matters for the CLI:
/// validation failures exit with status 1, malformed inputs with status 2.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("operation requires a row-finite graph: {0}")]
    NotRowFinite(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
