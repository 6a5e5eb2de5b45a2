//! Exact quaternion matrix algebra over the rationals, a simultaneous
//! decomposition of `(A, B, C, D)` with `A` η-Hermitian, and solvers for
//!
//! ```text
//! B·X·B^η* + C·Y·C^η* + D·Z·D^η* = A        (X, Y, Z η-Hermitian)
//! B·X·C + (B·X·C)^η* + D·Y·D^η* = A         (Y η-Hermitian)
//! ```
//!
//! All arithmetic is exact; ranks and zero tests never involve a tolerance.

pub mod canon3;
pub mod elim;
pub mod error;
pub mod etadiag;
pub mod io;
pub mod matrix;
pub mod scalar;
pub mod simdec;
pub mod solvers;

pub use error::{Error, Result};
pub use matrix::{BlockPartition, QMatrix};
pub use scalar::{EtaAxis, Quaternion, Rational};
pub use simdec::{block_sizes, simultaneous_decompose, BlockSizes, SimDecomposition};
pub use solvers::{EquationKind, FreeParams, Solution, SolveOutcome};
