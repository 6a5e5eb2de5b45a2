//! Solvability tests and general solutions for
//!
//! ```text
//! herm:  B·X·B^η* + C·Y·C^η* + D·Z·D^η* = A,   X, Y, Z η-Hermitian
//! mixed: B·X·C + (B·X·C)^η* + D·Y·D^η* = A,    Y η-Hermitian
//! ```
//!
//! Each equation is decided three independent ways: rank identities on
//! block matrices built from the inputs ([`check_herm`], [`check_mixed`]),
//! zero/equality conditions on the blocks of the simultaneous
//! decomposition ([`check_herm_canonical`], [`check_mixed_canonical`]), and
//! a real linear system ([`oracle_solvable`]).

mod conditions;
mod free;
mod gen;
mod grid;
mod herm;
mod mixed;
mod oracle;

pub use conditions::{
    check_herm, check_herm_canonical, check_mixed, check_mixed_canonical, CanonicalCheck,
    Condition, ConditionReport,
};
pub use free::{FreeKind, FreeParams};
pub use gen::{
    gen_instance, gen_instance_with_eta, random_instance, random_matrix, random_with_symmetry,
    Instance,
};
pub use herm::{herm_hats, solve_herm, HermHats};
pub use mixed::{mixed_hats, solve_mixed, MixedHats};
pub use oracle::oracle_solvable;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::scalar::EtaAxis;

/// Which of the two matrix equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EquationKind {
    Herm,
    Mixed,
}

impl fmt::Display for EquationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquationKind::Herm => "herm",
            EquationKind::Mixed => "mixed",
        })
    }
}

impl FromStr for EquationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "herm" => Ok(EquationKind::Herm),
            "mixed" => Ok(EquationKind::Mixed),
            other => Err(Error::parse(
                0,
                0,
                format!("unknown equation kind `{other}`"),
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Herm { x: QMatrix, y: QMatrix, z: QMatrix },
    Mixed { x: QMatrix, y: QMatrix },
}

impl Solution {
    pub fn kind(&self) -> EquationKind {
        match self {
            Solution::Herm { .. } => EquationKind::Herm,
            Solution::Mixed { .. } => EquationKind::Mixed,
        }
    }

    /// `(name, matrix)` pairs in output order.
    pub fn named(&self) -> Vec<(&'static str, &QMatrix)> {
        match self {
            Solution::Herm { x, y, z } => vec![("X", x), ("Y", y), ("Z", z)],
            Solution::Mixed { x, y } => vec![("X", x), ("Y", y)],
        }
    }

    /// Whether every matrix the equation requires to be η-Hermitian is.
    pub fn symmetry_holds(&self, eta: EtaAxis) -> bool {
        match self {
            Solution::Herm { x, y, z } => {
                [x, y, z].iter().all(|m| m.is_eta_hermitian_unchecked(eta))
            }
            Solution::Mixed { y, .. } => y.is_eta_hermitian_unchecked(eta),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Unsolvable {
        report: ConditionReport,
    },
    Solution {
        solution: Solution,
        free: FreeParams,
        residual_is_zero: bool,
    },
}

impl SolveOutcome {
    pub fn is_solution(&self) -> bool {
        matches!(self, SolveOutcome::Solution { .. })
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            SolveOutcome::Solution { solution, .. } => Some(solution),
            SolveOutcome::Unsolvable { .. } => None,
        }
    }
}

/// Dimension and symmetry checks shared by every entry point.
///
/// For `mixed`, `C` is `p2 x m`; otherwise it is `m x p2`.
pub fn validate(
    kind: EquationKind,
    a: &QMatrix,
    b: &QMatrix,
    c: &QMatrix,
    d: &QMatrix,
    eta: EtaAxis,
) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let m = a.rows();
    let c_rows_m = match kind {
        EquationKind::Herm => c.rows() == m,
        EquationKind::Mixed => c.cols() == m,
    };
    if b.rows() != m || d.rows() != m || !c_rows_m {
        return Err(Error::dims(format!(
            "{kind}: A is {m}x{m}, B {}x{}, C {}x{}, D {}x{}",
            b.rows(),
            b.cols(),
            c.rows(),
            c.cols(),
            d.rows(),
            d.cols()
        )));
    }
    if !a.is_eta_hermitian_unchecked(eta) {
        return Err(Error::NotEtaHermitian("A".into()));
    }
    Ok(())
}

/// `A` minus the left-hand side evaluated at `solution`.
pub fn residual(
    a: &QMatrix,
    b: &QMatrix,
    c: &QMatrix,
    d: &QMatrix,
    solution: &Solution,
    eta: EtaAxis,
) -> Result<QMatrix> {
    let conj = |m: &QMatrix| m.eta_conj_transpose(eta);
    let lhs = match solution {
        Solution::Herm { x, y, z } => {
            let bx = b.mul(x)?.mul(&conj(b))?;
            let cy = c.mul(y)?.mul(&conj(c))?;
            let dz = d.mul(z)?.mul(&conj(d))?;
            bx.add(&cy)?.add(&dz)?
        }
        Solution::Mixed { x, y } => {
            let bxc = b.mul(x)?.mul(c)?;
            let dy = d.mul(y)?.mul(&conj(d))?;
            bxc.add(&conj(&bxc))?.add(&dy)?
        }
    };
    a.sub(&lhs)
}

#[cfg(test)]
mod tests;
