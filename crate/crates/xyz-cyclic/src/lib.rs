//! Quantum XYZ cyclic codes `C(a,b)`: construction and structural checks,
//! Monte Carlo code-distance upper bounds with a BP+OSD decoder, and
//! code-capacity simulation under depolarizing, biased and pure Pauli noise.
//!
//! The family has length `N = 2(a+b)+7` and weight-six `XZYYZX`-type
//! stabilizer generators obtained by cyclic shifts of a single seed row.
//! Everything is phase-free: Pauli operators live in their binary symplectic
//! representation and stabilizer-group membership means membership in the
//! rowspace of the binary parity-check matrix.

pub mod decoder;
pub mod distance;
pub mod family;
pub mod gf2;
pub mod noise;
pub mod oracle;
pub mod pauli;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid Pauli label character {0:?}")]
    BadLabel(char),
    #[error("syndrome is not in the column space of the check matrix")]
    InfeasibleSyndrome,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("no witness found: {0}")]
    NoWitness(String),
}

pub type Result<T> = std::result::Result<T, Error>;
