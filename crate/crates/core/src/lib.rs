//! Exact HeLP-method computations for torsion units of prime-power order
//! in the integral group ring of `PSL(2, q)`, using the defining
//! characteristic Brauer characters `φ_k` of degree `2k + 1`.
//!
//! The crate is layered bottom-up:
//!
//! - [`numtheory`]: factorization, Möbius, totient and the closed-form trace
//!   of a root of unity over `Q`.
//! - [`cyclotomic`]: formal integer sums of roots of unity with exact traces.
//! - [`psl2`]: the class inventory of `PSL(2, q)`, power maps and the Brauer
//!   characters `φ_k`.
//! - [`solver`]: eigenvalue multiplicities, admissibility and the recursive
//!   enumeration of partial augmentation chains.
//! - [`report`] and [`cli`]: the serialized report document and the command
//!   front end used by the `help-psl2` binary.

pub mod cli;
pub mod cyclotomic;
mod error;
pub mod numtheory;
pub mod psl2;
pub mod report;
pub mod solver;

pub use cyclotomic::CycloSum;
pub use error::{Error, Result};
pub use psl2::{BrauerChar, ClassFamily, ClassId, ConjClass, GroupData};
pub use solver::{
    Constraints, MultiplicityTable, PaChain, PaVector, PowerProfile, SearchOptions, SolverReport, Verdict,
};

/// Exact rational used for eigenvalue multiplicities.
pub type Rat = num_rational::BigRational;
