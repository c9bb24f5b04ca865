//! Fixed-point calculus for Bott-Samelson varieties.
//!
//! The crate computes with combinatorial galleries over sequences of Weyl
//! group reflections, nested constraint structures on their index sets, and
//! the modules of polynomial- and fraction-valued functions on constrained
//! gallery sets, including the tensor-product decomposition map and the
//! twisted product it induces on dual modules. Everything is exact: integer
//! root arithmetic and arbitrary-precision rational coefficients.

pub mod cli;
pub mod decomp;
pub mod fixture;
pub mod gallery;
pub mod gkm;
pub mod json;
pub mod nested;
pub mod polyring;
pub mod rootsys;

pub use gallery::{Ext, Gallerification, Gallery, IndexSet, ReflSequence};
pub use nested::{ConstrainedFamily, NestedStructure, ProjectionData};
pub use polyring::{PolyS, RootFraction};
pub use rootsys::{Root, RootSystem, WeylElement};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unsupported root system `{0}` (expected A1..A9)")]
    UnsupportedSystem(String),
    #[error("invalid Cartan data: {0}")]
    InvalidCartan(String),
    #[error("simple-root index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("not a root: {0}")]
    NotARoot(String),
    #[error("not a reflection")]
    NotAReflection,
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("invalid nested structure: {0}")]
    InvalidStructure(String),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
