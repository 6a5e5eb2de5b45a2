//! Diagonalization of an η-Hermitian matrix by η-congruence.
//!
//! Finds invertible `U` with `U·A·U^{η*} = diag(d1, …, dr) ⊕ 0`. The
//! pivots `di` are nonzero η-Hermitian quaternions; no square roots are
//! taken, so everything stays over ℚ.

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::scalar::{EtaAxis, Quaternion};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaCongruenceDiag {
    pub transform: QMatrix,
    pub diag: Vec<Quaternion>,
    pub rank: usize,
}

impl EtaCongruenceDiag {
    /// `diag(d) ⊕ 0` of size `n`.
    pub fn diagonal_matrix(&self, n: usize) -> QMatrix {
        let mut out = QMatrix::zeros(n, n);
        for (s, d) in self.diag.iter().enumerate() {
            out[(s, s)] = d.clone();
        }
        out
    }
}

/// Applies `row_dst += c·row_src` and the matching column update
/// `col_dst += col_src·c^η`, keeping `work` η-Hermitian; `row_dst` of the
/// accumulated transform gets the same row operation.
fn congruence_add(
    work: &mut QMatrix,
    transform: &mut QMatrix,
    dst: usize,
    src: usize,
    c: &Quaternion,
    eta: EtaAxis,
) {
    let n = work.rows();
    for t in 0..n {
        if !work[(src, t)].is_zero() {
            let p = c * &work[(src, t)];
            work[(dst, t)] += &p;
        }
        if !transform[(src, t)].is_zero() {
            let p = c * &transform[(src, t)];
            transform[(dst, t)] += &p;
        }
    }
    let ce = c.eta_conj(eta);
    for s in 0..n {
        if !work[(s, src)].is_zero() {
            let p = &work[(s, src)] * &ce;
            work[(s, dst)] += &p;
        }
    }
}

fn congruence_swap(work: &mut QMatrix, transform: &mut QMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    let n = work.rows();
    for t in 0..n {
        let tmp = work[(a, t)].clone();
        work[(a, t)] = work[(b, t)].clone();
        work[(b, t)] = tmp;
        let tmp = transform[(a, t)].clone();
        transform[(a, t)] = transform[(b, t)].clone();
        transform[(b, t)] = tmp;
    }
    for s in 0..n {
        let tmp = work[(s, a)].clone();
        work[(s, a)] = work[(s, b)].clone();
        work[(s, b)] = tmp;
    }
}

/// Makes `work[(s, s)]` nonzero for some `s >= k` if the trailing block is
/// nonzero. Returns false when the trailing block vanishes.
fn create_pivot(work: &mut QMatrix, transform: &mut QMatrix, k: usize, eta: EtaAxis) -> bool {
    let n = work.rows();
    let Some((s, t)) = (k..n)
        .flat_map(|s| (s + 1..n).map(move |t| (s, t)))
        .find(|&(s, t)| !work[(s, t)].is_zero())
    else {
        return false;
    };
    // new (s,s) entry is w + w^η with w = u·a_ts; one of u = 1, u = η works
    let a_ts = work[(t, s)].clone();
    let u = [Quaternion::one(), eta.unit()]
        .into_iter()
        .find(|u| {
            let w = u * &a_ts;
            !(&w + &w.eta_conj(eta)).is_zero()
        })
        .expect("u = 1 or u = η always yields a nonzero pivot");
    congruence_add(work, transform, s, t, &u, eta);
    true
}

pub fn eta_congruence_diagonalize(a: &QMatrix, eta: EtaAxis) -> Result<EtaCongruenceDiag> {
    if !a.is_eta_hermitian(eta)? {
        return Err(Error::NotEtaHermitian("A".into()));
    }
    let n = a.rows();
    let mut work = a.clone();
    let mut transform = QMatrix::identity(n);
    let mut diag = Vec::new();
    for k in 0..n {
        let p = match (k..n).find(|&s| !work[(s, s)].is_zero()) {
            Some(p) => p,
            None => {
                if !create_pivot(&mut work, &mut transform, k, eta) {
                    break;
                }
                (k..n)
                    .find(|&s| !work[(s, s)].is_zero())
                    .expect("pivot was just created")
            }
        };
        congruence_swap(&mut work, &mut transform, k, p);
        let d = work[(k, k)].clone();
        let d_inv = d.inv()?;
        for j in k + 1..n {
            if work[(j, k)].is_zero() {
                continue;
            }
            let l = -(&work[(j, k)] * &d_inv);
            congruence_add(&mut work, &mut transform, j, k, &l, eta);
        }
        diag.push(d);
    }
    let rank = diag.len();
    let out = EtaCongruenceDiag {
        transform,
        diag,
        rank,
    };
    debug_assert_eq!(work, out.diagonal_matrix(n));
    Ok(out)
}
