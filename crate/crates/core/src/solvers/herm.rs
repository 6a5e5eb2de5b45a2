//! General η-Hermitian solution of `B·X·B^η* + C·Y·C^η* + D·Z·D^η* = A`.
//!
//! With `X̂ = T1⁻¹·X·T1^{-η*}` (and likewise `Ŷ`, `Ẑ`), the equation
//! becomes `S_B·X̂·S_B^η* + S_C·Ŷ·S_C^η* + S_D·Ẑ·S_D^η* = S_A`. The
//! patterns route block `(i, j)` of `X̂` to group pair `(i, j)` for
//! `i, j ≤ 5`, block `(i, j)` of `Ŷ` through groups `(6, 7, 8, 1, 2)`, and
//! block `(i, j)` of `Ẑ` through groups `(9, {4, 6}, 7, 3, 1)`. Matching
//! group pairs gives the grids below.

use crate::error::{Error, Result};
use crate::matrix::{BlockPartition, QMatrix};
use crate::scalar::EtaAxis;
use crate::simdec::{simultaneous_decompose, SimDecomposition};

use super::conditions::{check_herm, check_herm_canonical};
use super::free::{FreeKind, FreeParams};
use super::grid::BlockGrid;
use super::{residual, Solution, SolveOutcome};

/// `X̂`, `Ŷ`, `Ẑ` in decomposition coordinates.
#[derive(Clone, Debug)]
pub struct HermHats {
    pub x: QMatrix,
    pub y: QMatrix,
    pub z: QMatrix,
    pub x_part: BlockPartition,
    pub y_part: BlockPartition,
    pub z_part: BlockPartition,
}

/// Builds the hat matrices for one choice of free blocks.
pub fn herm_hats(dec: &SimDecomposition, free: &FreeParams) -> Result<HermHats> {
    let eta = dec.eta;
    let s = &dec.sizes;
    let rank_b = s.m1 + s.m2 + s.m3 + s.m4 + s.m5;
    let rank_c = s.m1 + s.m2 + s.m4 + s.m6 + s.m7;
    let rank_d = s.m1 + s.m3 + s.m4 + s.m6 + s.m8;
    let x_part = BlockPartition::new(vec![s.m1, s.m2, s.m3, s.m4, s.m5, dec.t1.rows() - rank_b]);
    let y_part = BlockPartition::new(vec![s.m4, s.m6, s.m7, s.m1, s.m2, dec.t2.rows() - rank_c]);
    let z_part = BlockPartition::new(vec![s.m8, s.m4, s.m6, s.m3, s.m1, dec.t3.rows() - rank_d]);

    let a = |i: usize, j: usize| dec.block(i, j);
    let e = |m: &QMatrix| m.eta_conj_transpose(eta);
    let mut fill = free.filler(eta);
    use FreeKind::{EtaHermitian as H, General as G};

    let mut x = BlockGrid::hermitian(x_part.clone(), eta);
    for (i, j, label, kind) in [
        (1, 1, "X11", H),
        (1, 2, "X12", G),
        (1, 3, "X13", G),
        (1, 4, "X14", G),
        (1, 6, "X16", G),
        (2, 2, "X22", H),
        (2, 6, "X26", G),
        (3, 3, "X33", H),
        (3, 6, "X36", G),
        (4, 6, "X46", G),
        (5, 6, "X56", G),
        (6, 6, "X66", H),
    ] {
        let (r, c) = x.shape(i, j);
        x.set(i, j, fill.block(label, r, c, kind)?)?;
    }
    x.set(1, 5, a(1, 5))?;
    x.set(2, 3, a(2, 3))?;
    x.set(2, 4, a(2, 4))?;
    x.set(2, 5, a(2, 5))?;
    x.set(3, 4, a(3, 4).sub(&a(3, 6))?)?;
    x.set(3, 5, a(3, 5))?;
    x.set(4, 4, a(4, 4).sub(&a(4, 6))?)?;
    x.set(4, 5, a(4, 5))?;
    x.set(5, 5, a(5, 5))?;

    let mut y = BlockGrid::hermitian(y_part.clone(), eta);
    for (i, j, label, kind) in [
        (1, 6, "Y16", G),
        (2, 2, "Y22", H),
        (2, 4, "Y24", G),
        (2, 6, "Y26", G),
        (3, 6, "Y36", G),
        (4, 4, "Y44", H),
        (4, 6, "Y46", G),
        (5, 6, "Y56", G),
        (6, 6, "Y66", H),
    ] {
        let (r, c) = y.shape(i, j);
        y.set(i, j, fill.block(label, r, c, kind)?)?;
    }
    let x12 = x.get(1, 2)?.clone();
    let x14 = x.get(1, 4)?.clone();
    let x22 = x.get(2, 2)?.clone();
    y.set(1, 1, a(6, 6).sub(&a(4, 6))?)?;
    y.set(1, 2, a(6, 7).sub(&a(4, 7))?)?;
    y.set(1, 3, a(6, 8))?;
    y.set(1, 4, e(&a(1, 6).sub(&a(1, 4))?.add(&x14)?))?;
    y.set(1, 5, e(&a(2, 6)))?;
    y.set(2, 3, a(7, 8))?;
    y.set(2, 5, e(&a(2, 7)))?;
    y.set(3, 3, a(8, 8))?;
    y.set(3, 4, e(&a(1, 8)))?;
    y.set(3, 5, e(&a(2, 8)))?;
    y.set(4, 5, a(1, 2).sub(&x12)?)?;
    y.set(5, 5, a(2, 2).sub(&x22)?)?;

    let mut z = BlockGrid::hermitian(z_part.clone(), eta);
    for (i, j, label, kind) in [
        (1, 6, "Z16", G),
        (2, 6, "Z26", G),
        (3, 6, "Z36", G),
        (4, 6, "Z46", G),
        (5, 6, "Z56", G),
        (6, 6, "Z66", H),
    ] {
        let (r, c) = z.shape(i, j);
        z.set(i, j, fill.block(label, r, c, kind)?)?;
    }
    fill.finish()?;
    let x11 = x.get(1, 1)?.clone();
    let x13 = x.get(1, 3)?.clone();
    let x33 = x.get(3, 3)?.clone();
    let y22 = y.get(2, 2)?.clone();
    let y24 = y.get(2, 4)?.clone();
    let y44 = y.get(4, 4)?.clone();
    z.set(1, 1, a(9, 9))?;
    z.set(1, 2, e(&a(4, 9)))?;
    z.set(1, 3, e(&a(7, 9)))?;
    z.set(1, 4, e(&a(3, 9)))?;
    z.set(1, 5, e(&a(1, 9)))?;
    z.set(2, 2, a(4, 6))?;
    z.set(2, 3, a(4, 7))?;
    z.set(2, 4, e(&a(3, 6)))?;
    z.set(2, 5, e(&a(1, 4).sub(&x14)?))?;
    z.set(3, 3, a(7, 7).sub(&y22)?)?;
    z.set(3, 4, e(&a(3, 7)))?;
    z.set(3, 5, e(&a(1, 7)).sub(&y24)?)?;
    z.set(4, 4, a(3, 3).sub(&x33)?)?;
    z.set(4, 5, e(&a(1, 3).sub(&x13)?))?;
    // X11 and Y44 are free; the coupling X11 + Y44 + Z55 = A11 fixes Z55
    z.set(5, 5, a(1, 1).sub(&x11)?.sub(&y44)?)?;

    Ok(HermHats {
        x: x.assemble()?,
        y: y.assemble()?,
        z: z.assemble()?,
        x_part,
        y_part,
        z_part,
    })
}

/// Decides solvability and, when solvable, returns the member of the
/// general solution selected by `free`.
pub fn solve_herm(
    a: &QMatrix,
    b: &QMatrix,
    c: &QMatrix,
    d: &QMatrix,
    eta: EtaAxis,
    free: &FreeParams,
) -> Result<SolveOutcome> {
    let report = check_herm(a, b, c, d, eta)?;
    if !report.overall {
        return Ok(SolveOutcome::Unsolvable { report });
    }
    let dec = simultaneous_decompose(a, b, c, d, eta)?;
    let canonical = check_herm_canonical(&dec);
    if !canonical.all_hold() {
        return Err(Error::Internal(format!(
            "rank conditions hold but block conditions fail: {:?}",
            canonical.checks
        )));
    }
    let hats = herm_hats(&dec, free)?;
    let lift = |t: &QMatrix, hat: &QMatrix| -> Result<QMatrix> {
        t.mul(hat)?.mul(&t.eta_conj_transpose(eta))
    };
    let solution = Solution::Herm {
        x: lift(&dec.t1, &hats.x)?,
        y: lift(&dec.t2, &hats.y)?,
        z: lift(&dec.t3, &hats.z)?,
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
