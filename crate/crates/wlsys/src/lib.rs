//! Greatest solutions of weakly linear systems of fuzzy relation
//! inequalities and equations over complete residuated lattices.
//!
//! A weakly linear system constrains an unknown fuzzy relation `U` between
//! finite sets `A` and `B` by inequalities such as `U⁻¹ ∘ Vᵢ ≤ Wᵢ ∘ U⁻¹`
//! (or the mirrored and equational variants) together with an upper bound
//! `U ≤ Z`. Every such system has a greatest solution, and this crate
//! computes it by iterating an isotone operator downwards from the bound
//! until the sequence of relations stabilizes.
//!
//! The crate is organized around a small number of layers:
//!
//! * [`lattice`]: truth values as exact rationals in `[0, 1]` and the
//!   residuated structures (Boolean, Gödel, Łukasiewicz, product, and
//!   finite equidistant chains) that interpret `⊗` and `→`.
//! * [`relation`]: dense fuzzy relations with labeled index sets, their
//!   composition, residuals, converses, and the predicates used throughout
//!   (functionality, surjectivity, uniformity, extensionality).
//! * [`solver`]: the twelve weakly linear system variants, their operators,
//!   the iterative greatest-solution procedure, and the crisp variant that
//!   always terminates.
//! * [`quotient`]: factor sets of fuzzy equivalences, quotient relational
//!   systems, natural maps, lifts, and decomposition of uniform solutions
//!   into a pair of equivalences plus an isomorphism of quotients.
//! * [`automata`]: fuzzy automata, bisimulation equivalences obtained from
//!   homogeneous systems, state reduction, and relating two automata by a
//!   heterogeneous system over a shared alphabet.
//! * [`oracle`]: a brute-force enumeration solver used as an independent
//!   check of the iterative one on small instances.
//! * [`io`]: JSON documents for systems, automata, and results, with exact
//!   scalar round-tripping.
//!
//! All arithmetic is exact: scalars are arbitrary-precision rationals, so
//! stabilization checks are exact equality and results are reproducible
//! bit for bit, whether or not the `parallel` feature is enabled.
//!
//! ```
//! use wlsys::{ResiduatedLattice, FuzzyRelation, WeaklyLinearSystem, SolveOptions};
//!
//! let lat = ResiduatedLattice::Goedel;
//! let a = vec!["a1".to_string(), "a2".to_string()];
//! let parse = |rows: &[[&str; 2]]| -> Vec<Vec<wlsys::TruthValue>> {
//!     rows.iter()
//!         .map(|r| r.iter().map(|s| wlsys::io::parse_scalar(s).unwrap()).collect())
//!         .collect()
//! };
//! let v = FuzzyRelation::new(lat, a.clone(), a.clone(), parse(&[["1", "1/2"], ["0", "1"]])).unwrap();
//! let w = FuzzyRelation::universal(lat, a.clone(), a.clone()).unwrap();
//! let system = WeaklyLinearSystem::homogeneous(4, vec![v], w).unwrap();
//! let report = system.solve_greatest(&SolveOptions::default()).unwrap();
//! assert!(report.verified);
//! ```

use thiserror::Error;

pub mod automata;
mod exec;
pub mod io;
pub mod lattice;
pub mod oracle;
pub mod quotient;
pub mod relation;
pub mod solver;

pub use automata::{BisimulationMode, FuzzyAutomaton};
pub use lattice::{ResiduatedLattice, SubalgebraClosure, TruthValue};
pub use oracle::{EnumerationSpace, OracleOptions};
pub use quotient::{FactorSet, FuzzyRelationalSystem, InducedBijection, UniformDecomposition};
pub use relation::{FuzzyEquivalence, FuzzyRelation};
pub use solver::{
    Family, SolveOptions, SolveReport, SolveStatus, SystemKind, Termination, WeaklyLinearSystem,
};

/// Errors reported by every layer of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A scalar literal could not be read as a rational in `[0, 1]`.
    #[error("cannot parse {text:?} as a truth value: {reason}")]
    InvalidScalar { text: String, reason: String },

    /// A value does not belong to the carrier of the lattice in use.
    #[error("value {value} lies outside the carrier of the {lattice} lattice")]
    OutsideCarrier { value: String, lattice: String },

    /// An unrecognized lattice tag such as `"chain:x"`.
    #[error("unknown lattice tag {0:?}")]
    UnknownLattice(String),

    /// An unrecognized system variant tag; expected `wl1-1` through `wl2-6`.
    #[error("unknown system variant {0:?}")]
    UnknownVariant(String),

    /// Index sets of relations must be nonempty.
    #[error("empty index set: {0}")]
    EmptyDomain(&'static str),

    /// Labels within one index set must be distinct.
    #[error("duplicate label {0:?} in an index set")]
    DuplicateLabel(String),

    /// Two relations were combined whose shapes or index sets disagree.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// Two relations over different lattices were combined.
    #[error("lattice mismatch: {left} vs {right}")]
    LatticeMismatch { left: String, right: String },

    /// An operation requiring a square relation received a rectangular one.
    #[error("relation is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    /// A row has no entry equal to 1, so no crisp description exists.
    #[error("relation is not an L-function: row {row:?} has no entry equal to 1")]
    NotAnLFunction { row: String },

    /// Reflexivity, symmetry, or transitivity failed.
    #[error("relation is not a fuzzy equivalence: {0}")]
    NotAnEquivalence(&'static str),

    /// A uniform relation was required.
    #[error("relation is not uniform")]
    NotUniform,

    /// A relation was expected to solve the system but does not.
    #[error("relation does not solve the system")]
    NotASolution,

    /// An equivalence pair was expected to be nested (`E ≤ F`) but is not.
    #[error("equivalence is not contained in the other: {0}")]
    NotNested(&'static str),

    /// A derived decomposition failed one of its re-verified conditions.
    #[error("uniform decomposition check failed: {0}")]
    DecompositionCheckFailed(&'static str),

    /// The iteration cap must be at least one.
    #[error("iteration cap must be at least 1")]
    InvalidCap,

    /// Brute-force enumeration would exceed the candidate limit.
    #[error("enumeration space too large: {candidates} candidates exceed the limit {limit}")]
    SpaceTooLarge { candidates: String, limit: u64 },

    /// The generated subalgebra of the instance values is not provably
    /// finite, so no enumeration carrier exists.
    #[error("generated subalgebra exceeded its cap; no finite enumeration carrier")]
    CarrierNotFinite,

    /// Two automata do not share an alphabet.
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    /// A structural problem in an input document.
    #[error("invalid document: {0}")]
    Document(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
