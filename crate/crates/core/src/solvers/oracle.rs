//! Solvability by brute force: the equation is real-linear in the real
//! coefficients of the unknowns, so it is consistent exactly when
//! `rank(M) = rank([M | vec A])` for the real matrix `M` of that map.
//! Products are formed on real expansions, not quaternion matrices.

use crate::elim::{real_expansion, RealMatrix};
use crate::error::Result;
use crate::matrix::QMatrix;
use crate::scalar::{EtaAxis, Quaternion, Rational};

use super::{validate, EquationKind};

fn unit(idx: usize) -> Quaternion {
    let mut c = [0; 4];
    c[idx] = 1;
    Quaternion::from_ints(c[0], c[1], c[2], c[3])
}

/// A real basis of the `n x n` η-Hermitian matrices.
fn hermitian_basis(n: usize, eta: EtaAxis) -> Vec<QMatrix> {
    let mut basis = Vec::new();
    for s in 0..n {
        for u in (0..4).filter(|&u| u != eta.coefficient_index()) {
            let mut e = QMatrix::zeros(n, n);
            e[(s, s)] = unit(u);
            basis.push(e);
        }
        for t in s + 1..n {
            for u in 0..4 {
                let mut e = QMatrix::zeros(n, n);
                e[(s, t)] = unit(u);
                e[(t, s)] = unit(u).eta_conj(eta);
                basis.push(e);
            }
        }
    }
    basis
}

fn general_basis(rows: usize, cols: usize) -> Vec<QMatrix> {
    let mut basis = Vec::new();
    for s in 0..rows {
        for t in 0..cols {
            for u in 0..4 {
                let mut e = QMatrix::zeros(rows, cols);
                e[(s, t)] = unit(u);
                basis.push(e);
            }
        }
    }
    basis
}

/// The real coefficients of the quaternion matrix represented by `r`,
/// read from the first column of each 4x4 block.
fn coordinates(r: &RealMatrix) -> Vec<Rational> {
    let (rows, cols) = (r.rows() / 4, r.cols() / 4);
    let mut out = Vec::with_capacity(rows * cols * 4);
    for s in 0..rows {
        for t in 0..cols {
            for u in 0..4 {
                out.push(r.get(4 * s + u, 4 * t).clone());
            }
        }
    }
    out
}

fn add(a: &RealMatrix, b: &RealMatrix) -> RealMatrix {
    let mut out = RealMatrix::zeros(a.rows(), a.cols());
    for s in 0..a.rows() {
        for t in 0..a.cols() {
            out.set(s, t, a.get(s, t) + b.get(s, t));
        }
    }
    out
}

/// `exp(L)·exp(E)·exp(R)` for every basis element `E`.
fn sandwich_images(l: &QMatrix, r: &QMatrix, basis: &[QMatrix]) -> Vec<Vec<Rational>> {
    let (le, re) = (real_expansion(l), real_expansion(r));
    basis
        .iter()
        .map(|e| coordinates(&le.mul(&real_expansion(e)).mul(&re)))
        .collect()
}

/// Whether the equation has a solution with the required symmetry.
/// For `mixed`, `c` is `p2 x m`.
pub fn oracle_solvable(
    kind: EquationKind,
    a: &QMatrix,
    b: &QMatrix,
    c: &QMatrix,
    d: &QMatrix,
    eta: EtaAxis,
) -> Result<bool> {
    validate(kind, a, b, c, d, eta)?;
    let conj = |m: &QMatrix| m.eta_conj_transpose(eta);
    let mut columns = Vec::new();
    match kind {
        EquationKind::Herm => {
            for m in [b, c, d] {
                columns.extend(sandwich_images(
                    m,
                    &conj(m),
                    &hermitian_basis(m.cols(), eta),
                ));
            }
        }
        EquationKind::Mixed => {
            let (be, ce) = (real_expansion(b), real_expansion(c));
            let (bh, ch) = (real_expansion(&conj(b)), real_expansion(&conj(c)));
            for e in general_basis(b.cols(), c.rows()) {
                let direct = be.mul(&real_expansion(&e)).mul(&ce);
                let mirrored = ch.mul(&real_expansion(&conj(&e))).mul(&bh);
                columns.push(coordinates(&add(&direct, &mirrored)));
            }
            columns.extend(sandwich_images(
                d,
                &conj(d),
                &hermitian_basis(d.cols(), eta),
            ));
        }
    }

    let target = coordinates(&real_expansion(a));
    let rows = target.len();
    let system: Vec<Vec<Rational>> = (0..rows)
        .map(|s| columns.iter().map(|col| col[s].clone()).collect())
        .collect();
    let m = RealMatrix::from_rows(system.clone());
    let augmented: Vec<Vec<Rational>> = system
        .into_iter()
        .zip(target)
        .map(|(mut row, v)| {
            row.push(v);
            row
        })
        .collect();
    Ok(m.rank() == RealMatrix::from_rows(augmented).rank())
}
