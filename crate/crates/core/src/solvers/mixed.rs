//! General solution of `B·X·C + (B·X·C)^η* + D·Y·D^η* = A`, `Y` η-Hermitian.
//!
//! The decomposition is taken of `(A, B, C^η*, D)`. With `X̂ = T1⁻¹·X·T2^{-η*}`
//! and `Ŷ = T3⁻¹·Y·T3^{-η*}` the equation becomes
//! `S_B·X̂·S_C^η* + (S_B·X̂·S_C^η*)^η* + S_D·Ŷ·S_D^η* = S_A`.

use crate::error::{Error, Result};
use crate::matrix::{BlockPartition, QMatrix};
use crate::scalar::{rat, EtaAxis, Quaternion};
use crate::simdec::{simultaneous_decompose, SimDecomposition};

use super::conditions::{check_mixed, check_mixed_canonical};
use super::free::{FreeKind, FreeParams};
use super::grid::BlockGrid;
use super::{residual, Solution, SolveOutcome};

/// `X̂`, `Ŷ` in decomposition coordinates.
#[derive(Clone, Debug)]
pub struct MixedHats {
    pub x: QMatrix,
    pub y: QMatrix,
    pub x_rows: BlockPartition,
    pub x_cols: BlockPartition,
    pub y_part: BlockPartition,
}

/// Builds the hat matrices for one choice of free blocks.
pub fn mixed_hats(dec: &SimDecomposition, free: &FreeParams) -> Result<MixedHats> {
    let eta = dec.eta;
    let s = &dec.sizes;
    let rank_b = s.m1 + s.m2 + s.m3 + s.m4 + s.m5;
    let rank_c = s.m1 + s.m2 + s.m4 + s.m6 + s.m7;
    let rank_d = s.m1 + s.m3 + s.m4 + s.m6 + s.m8;
    let x_rows = BlockPartition::new(vec![s.m1, s.m2, s.m3, s.m4, s.m5, dec.t1.rows() - rank_b]);
    let x_cols = BlockPartition::new(vec![s.m4, s.m6, s.m7, s.m1, s.m2, dec.t2.rows() - rank_c]);
    let y_part = BlockPartition::new(vec![s.m8, s.m4, s.m6, s.m3, s.m1, dec.t3.rows() - rank_d]);

    let a = |i: usize, j: usize| dec.block(i, j);
    let e = |m: &QMatrix| m.eta_conj_transpose(eta);
    let mut fill = free.filler(eta);
    use FreeKind::{EtaHermitian as H, General as G, SkewEtaHermitian as K};

    let mut x = BlockGrid::general(x_rows.clone(), x_cols.clone());
    for (i, j, label) in [
        (1, 1, "X11"),
        (1, 2, "X12"),
        (1, 4, "X14"),
        (1, 6, "X16"),
        (2, 4, "X24"),
        (2, 6, "X26"),
        (3, 2, "X32"),
        (3, 4, "X34"),
        (3, 6, "X36"),
        (4, 6, "X46"),
        (5, 6, "X56"),
        (6, 1, "X61"),
        (6, 2, "X62"),
        (6, 3, "X63"),
        (6, 4, "X64"),
        (6, 5, "X65"),
        (6, 6, "X66"),
    ] {
        let (r, c) = x.shape(i, j);
        x.set(i, j, fill.block(label, r, c, G)?)?;
    }
    let skew = fill.block("Zskew", s.m2, s.m2, K)?;
    let x11 = x.get(1, 1)?.clone();
    let x24 = x.get(2, 4)?.clone();
    let half = Quaternion::real(rat(1, 2));

    x.set(1, 3, a(1, 8))?;
    x.set(1, 5, a(1, 2).sub(&e(&x24))?)?;
    x.set(2, 1, a(2, 6))?;
    x.set(2, 2, a(2, 7))?;
    x.set(2, 3, a(2, 8))?;
    x.set(2, 5, a(2, 2).scale_left(&half).add(&skew)?)?;
    x.set(3, 1, a(3, 6).sub(&a(3, 4))?)?;
    x.set(3, 3, a(3, 8))?;
    x.set(3, 5, e(&a(2, 3)))?;
    x.set(4, 1, a(4, 6).sub(&a(4, 4))?)?;
    x.set(4, 2, a(4, 7).sub(&a(6, 7))?)?;
    x.set(4, 3, a(4, 8))?;
    x.set(4, 4, e(&a(1, 4)).sub(&e(&a(1, 6)))?.add(&e(&x11))?)?;
    x.set(4, 5, e(&a(2, 4)))?;
    x.set(5, 1, a(5, 6))?;
    x.set(5, 2, a(5, 7))?;
    x.set(5, 3, a(5, 8))?;
    x.set(5, 4, e(&a(1, 5)))?;
    x.set(5, 5, e(&a(2, 5)))?;

    let mut y = BlockGrid::hermitian(y_part.clone(), eta);
    for (i, j, label, kind) in [
        (1, 6, "Y16", G),
        (2, 6, "Y26", G),
        (3, 6, "Y36", G),
        (4, 6, "Y46", G),
        (5, 6, "Y56", G),
        (6, 6, "Y66", H),
    ] {
        let (r, c) = y.shape(i, j);
        y.set(i, j, fill.block(label, r, c, kind)?)?;
    }
    fill.finish()?;
    let x12 = x.get(1, 2)?.clone();
    let x14 = x.get(1, 4)?.clone();
    let x32 = x.get(3, 2)?.clone();
    let x34 = x.get(3, 4)?.clone();
    let x44 = x.get(4, 4)?.clone();
    y.set(1, 1, a(9, 9))?;
    y.set(1, 2, e(&a(4, 9)))?;
    y.set(1, 3, e(&a(7, 9)))?;
    y.set(1, 4, e(&a(3, 9)))?;
    y.set(1, 5, e(&a(1, 9)))?;
    y.set(2, 2, a(4, 4))?;
    y.set(2, 3, a(6, 7))?;
    y.set(2, 4, e(&a(3, 4)))?;
    y.set(2, 5, e(&a(1, 4)).sub(&x44)?)?;
    y.set(3, 3, a(7, 7))?;
    y.set(3, 4, e(&a(3, 7)).sub(&e(&x32))?)?;
    y.set(3, 5, e(&a(1, 7)).sub(&e(&x12))?)?;
    y.set(4, 4, a(3, 3))?;
    y.set(4, 5, e(&a(1, 3)).sub(&x34)?)?;
    y.set(5, 5, a(1, 1).sub(&x14)?.sub(&e(&x14))?)?;

    Ok(MixedHats {
        x: x.assemble()?,
        y: y.assemble()?,
        x_rows,
        x_cols,
        y_part,
    })
}

/// Decides solvability and, when solvable, returns the member of the
/// general solution selected by `free`. `c` is `p2 x m`.
pub fn solve_mixed(
    a: &QMatrix,
    b: &QMatrix,
    c: &QMatrix,
    d: &QMatrix,
    eta: EtaAxis,
    free: &FreeParams,
) -> Result<SolveOutcome> {
    let report = check_mixed(a, b, c, d, eta)?;
    if !report.overall {
        return Ok(SolveOutcome::Unsolvable { report });
    }
    let dec = simultaneous_decompose(a, b, &c.eta_conj_transpose(eta), d, eta)?;
    let canonical = check_mixed_canonical(&dec);
    if !canonical.all_hold() {
        return Err(Error::Internal(format!(
            "rank conditions hold but block conditions fail: {:?}",
            canonical.checks
        )));
    }
    let hats = mixed_hats(&dec, free)?;
    let solution = Solution::Mixed {
        x: dec.t1.mul(&hats.x)?.mul(&dec.t2.eta_conj_transpose(eta))?,
        y: dec.t3.mul(&hats.y)?.mul(&dec.t3.eta_conj_transpose(eta))?,
    };
    let residual_is_zero = residual(a, b, c, d, &solution, eta)?.is_zero();
    if !residual_is_zero || !solution.symmetry_holds(eta) {
        return Err(Error::Internal(
            "assembled solution does not satisfy the equation".into(),
        ));
    }
    Ok(SolveOutcome::Solution {
        solution,
        free: free.clone(),
        residual_is_zero,
    })
}
