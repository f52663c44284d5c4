//! Solvers for min-max regret combinatorial optimization under interval,
//! finite, and ellipsoidal cost uncertainty.
//!
//! The library covers the unconstrained 0-1 problem and the shortest path
//! problem. Regret evaluation and solution are provided through closed
//! forms where they exist, a scenario relaxation engine with two cut
//! families otherwise, and exhaustive oracles for verification at small
//! sizes. A self-contained 0-1 branch-and-bound replaces the external MIP
//! solver that such cutting-plane schemes usually rely on.

pub mod bip;
pub mod eval;
pub mod exact;
pub mod fileio;
pub mod gadgets;
pub mod gen;
pub(crate) mod linalg;
pub mod model;
pub mod nominal;
pub mod par;
pub mod relax;
pub mod subproblem;
pub mod support;

pub use model::{
    AxisParallelEllipsoid, BinaryVector, CombinatorialProblem, Cut, CutKind, FiniteSet,
    GeneralEllipsoid, Graph, IntervalSet, ProblemStructure, SolveReport, SolveStatus,
    UncertaintySet,
};

use std::fmt;

/// Absolute tolerance used by every optimality post-condition.
pub const EPS_OPT: f64 = 1e-6;

/// Default membership tolerance for worst-case scenarios.
pub const EPS_MEMBERSHIP: f64 = 1e-8;

#[derive(Debug)]
pub enum Error {
    /// Malformed or inconsistent input (dimension mismatch, bad values).
    InvalidInput(String),
    /// Structurally valid input outside the supported problem class.
    Unsupported(String),
    /// The model admits no feasible solution.
    Infeasible(String),
    /// An enumeration would exceed its candidate limit.
    EnumerationOverflow { count: u128, limit: u128 },
    Io(std::io::Error),
    /// Instance file could not be parsed; `line` is 1-based.
    Parse { line: usize, msg: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::Infeasible(msg) => write!(f, "infeasible: {msg}"),
            Error::EnumerationOverflow { count, limit } => {
                write!(f, "enumeration overflow: {count} candidates exceed limit {limit}")
            }
            Error::Io(e) => write!(f, "io error: {e}"),
            Error::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}
