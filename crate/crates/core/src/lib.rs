//! Complete sets of mutually unbiased bases (MUBs) for three qubits.
//!
//! The construction works in the 8×8 discrete phase space over GF(8). Six seed
//! points determine a table of nine striation-generating curves; each curve is
//! a maximal set of seven commuting Pauli operators, and the common eigenbases
//! of the nine classes form a complete set of nine MUBs in dimension 8.
//!
//! Seeds are found by exhaustively solving twelve trace equations over GF(8)
//! ([`solver`]), tables are built and checked in [`phasespace`], operators live
//! in [`pauli`], and the numerical bases and their separability structure are
//! in [`mub`].
//!
//! ```
//! use mub3::gf8::FieldElement as F;
//! use mub3::{solver, mub};
//!
//! let solutions = solver::solve_three_axes(F::mu_pow(2), F::mu_pow(6)).unwrap();
//! assert_eq!(solutions.len(), 2);
//!
//! let table = solutions[0].table();
//! let report = mub::verify_mub_set(&table).unwrap();
//! assert!(report.pass);
//! ```

pub mod curve;
pub mod gf8;
pub mod mub;
pub mod pauli;
pub mod phasespace;
pub mod reference;
pub mod reproduce;
pub mod solver;

pub use curve::{fit_curve, CurveRelation};
pub use gf8::{Bit, FieldElement};
pub use pauli::{OperatorClass, PauliOp};
pub use phasespace::{Point, SeedSet, StriationTable, ValidationReport};
pub use solver::{Param, Scenario, ScenarioKind, Solution};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unrecognized field token {0:?} (expected 0, 1, m, m2, ..., m6)")]
    BadToken(String),
    #[error("unknown parameter name {0:?}")]
    UnknownParameter(String),
    #[error("{free} free parameters means 8^{free} candidates; refusing without override (limit {limit})")]
    SearchTooLarge { free: usize, limit: usize },
    #[error("invalid striation table: {0}")]
    InvalidTable(String),
    #[error("operators {0} and {1} anticommute")]
    Anticommuting(String, String),
    #[error("projector for sign pattern {0} has rank {1}, expected 1")]
    RankDefect(usize, usize),
    #[error("basis states disagree on separability pattern")]
    MixedSeparability,
    #[error("no curve relation fits the row")]
    NoCurveRelation,
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/gf8.md")]
    mod gf8 {}
    #[doc = include_str!("../../../book/src/phase-space.md")]
    mod phase_space {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod curves {}
    #[doc = include_str!("../../../book/src/solving.md")]
    mod solving {}
    #[doc = include_str!("../../../book/src/pauli.md")]
    mod pauli {}
    #[doc = include_str!("../../../book/src/mubs.md")]
    mod mubs {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
