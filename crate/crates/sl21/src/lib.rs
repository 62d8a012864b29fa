//! Exact-arithmetic construction of the Lie superalgebra sl(2,1) over fields of
//! odd prime characteristic, its reduced Kac modules and simple modules, and
//! their first cohomology.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`]: arithmetic in `F_p` and in extensions `F_p[t]/(f)`, including
//!   the Artin–Schreier extension `F_p[t]/(t^p - t - 1)`,
//! - [`linalg`]: dense exact linear algebra (echelon forms, nullspaces,
//!   subspace lattice operations, invariant-subspace fixpoints),
//! - [`superalgebra`]: sl(2,1) with its basis, super-brackets, gradings and
//!   restricted p-mapping, derived from 3x3 supermatrices,
//! - [`modules`]: reduced Kac modules `Z^chi(lambda)`, their radicals and
//!   simple quotients `S^chi(lambda)`,
//! - [`cohomology`]: derivations, inner derivations and `H^1(g, M)`, computed
//!   both from the full linear system and from its weight-zero reduction,
//! - [`sweep`]: the batch driver behind the `sl21` command-line tool.

pub mod cohomology;
pub mod field;
pub mod linalg;
pub mod modules;
pub mod superalgebra;
pub mod sweep;

pub use cohomology::{Cochain, CochainSpace, H1Result};
pub use field::{Field, FieldElement};
pub use linalg::{MatrixF, Subspace};
pub use modules::{HighestWeight, ModuleRep, PChar};
pub use superalgebra::{BasisLabel, Parity, SuperAlgebra, Weight};

/// Errors produced by fallible operations across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("characteristic must be an odd prime, got {0}")]
    BadCharacteristic(u64),
    #[error("characteristic {0} is too large (must be below 2^16)")]
    CharacteristicTooLarge(u64),
    #[error("modulus must be a monic polynomial of degree >= 1 over F_p")]
    BadModulus,
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("division by zero field element")]
    DivisionByZero,
    #[error("element {0} is not in the prime subfield")]
    NotInPrimeSubfield(String),
    #[error("cannot parse field element `{0}`")]
    ParseElement(String),
    #[error("mixed ambient dimensions: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("highest weight {0} is not admissible for the p-character")]
    InadmissibleWeight(String),
    #[error("no admissible highest weights exist in this field")]
    NoAdmissibleWeights,
    #[error("the highest-weight space is not a line (dimension {0})")]
    WeightLineNotUnique(usize),
    #[error("subspace is not invariant under the module actions")]
    NotInvariant,
    #[error("subspace is not parity- and weight-graded")]
    NotGraded,
    #[error("basis label <{0},{1},{2}> falls outside the module range")]
    LabelOutOfRange(u8, u8, i64),
    #[error("vector is not parity-homogeneous")]
    NotHomogeneous,
    #[error("standard cocycle {0} is not defined on this module instance")]
    CocycleInstanceMismatch(usize),
    #[error("module validation failed: {0}")]
    Validation(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("structure table does not cover this p-character")]
    OutOfHypothesis,
}

pub type Result<T> = std::result::Result<T, Error>;
