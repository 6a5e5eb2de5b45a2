//! Simultaneous canonical form of a triple `(B, C, D)` sharing a row count.
//!
//! The column spaces `U = col(B)`, `V = col(C)`, `W = col(D)` are three
//! subspaces of ℍ^m. The form is reached by picking a basis of ℍ^m adapted
//! to all three at once:
//!
//! | row group | size | lies in |
//! |-----------|------|---------|
//! | 1 | m1 | U ∩ V ∩ W |
//! | 2 | m2 | U ∩ V only |
//! | 3 | m3 | U ∩ W only |
//! | 4 | m4 | U (paired with group 6) |
//! | 5 | m5 | U only |
//! | 6 | m4 | V, with group 4 + group 6 in W |
//! | 7 | m6 | V ∩ W only |
//! | 8 | m7 | V only |
//! | 9 | m8 | W only |
//! | 10 | rest | none |
//!
//! `P1` is the inverse of that basis; each `W_*` maps the relevant basis
//! vectors onto the identity blocks and sends the null space to the
//! trailing zero columns.

use crate::elim::{self, column_basis, inverse, null_space, solve};
use crate::error::{Error, Result};
use crate::matrix::{BlockPartition, QMatrix};
use crate::scalar::Quaternion;

/// Sizes `r1..r7` of the triple form, plus `r(B)` which fixes the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LemmaSizes {
    pub r1: usize,
    pub r2: usize,
    pub r3: usize,
    pub r4: usize,
    pub r5: usize,
    pub r6: usize,
    pub r7: usize,
    pub rank_b: usize,
}

impl LemmaSizes {
    /// Group sizes `m1..m8` of the four-matrix decomposition.
    pub fn groups(&self) -> [usize; 8] {
        [
            self.r6,
            self.r2 - self.r6,
            self.r5,
            self.r7,
            self.rank_b - self.r2 - self.r5 - self.r7,
            self.r4 - self.r7,
            self.r1 - self.r4,
            self.r3,
        ]
    }

    fn from_groups(m: [usize; 8]) -> Self {
        LemmaSizes {
            r1: m[3] + m[5] + m[6],
            r2: m[0] + m[1],
            r3: m[7],
            r4: m[3] + m[5],
            r5: m[2],
            r6: m[0],
            r7: m[3],
            rank_b: m[0] + m[1] + m[2] + m[3] + m[4],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleCanonical {
    pub left: QMatrix,
    pub w_b: QMatrix,
    pub w_c: QMatrix,
    pub w_d: QMatrix,
    pub sizes: LemmaSizes,
}

impl TripleCanonical {
    pub fn groups(&self) -> [usize; 8] {
        self.sizes.groups()
    }

    /// The ten row groups `(m1, m2, m3, m4, m5, m4, m6, m7, m8, rest)`.
    pub fn row_partition(&self) -> BlockPartition {
        let m = self.groups();
        let used: usize = m.iter().sum::<usize>() + m[3];
        row_groups(&m, &[self.left.rows() - used])
    }
}

pub(crate) fn row_groups(m: &[usize; 8], trailing: &[usize]) -> BlockPartition {
    let mut sizes = vec![m[0], m[1], m[2], m[3], m[4], m[3], m[5], m[6], m[7]];
    sizes.extend_from_slice(trailing);
    BlockPartition::new(sizes)
}

/// Where each identity block sits: `(width, row groups)` per column group.
type Placement = (usize, &'static [usize]);

fn placements_b(m: &[usize; 8]) -> [Placement; 5] {
    [
        (m[0], &[0]),
        (m[1], &[1]),
        (m[2], &[2]),
        (m[3], &[3]),
        (m[4], &[4]),
    ]
}

fn placements_c(m: &[usize; 8]) -> [Placement; 5] {
    [
        (m[3], &[5]),
        (m[5], &[6]),
        (m[6], &[7]),
        (m[0], &[0]),
        (m[1], &[1]),
    ]
}

fn placements_d(m: &[usize; 8]) -> [Placement; 5] {
    [
        (m[7], &[8]),
        (m[3], &[3, 5]),
        (m[5], &[6]),
        (m[2], &[2]),
        (m[0], &[0]),
    ]
}

fn pattern(rows: &BlockPartition, cols: usize, placements: &[Placement]) -> QMatrix {
    let mut out = QMatrix::zeros(rows.total(), cols);
    let mut c0 = 0;
    for &(width, groups) in placements {
        for &g in groups {
            let r0 = rows.offset(g);
            for d in 0..width {
                out[(r0 + d, c0 + d)] = Quaternion::one();
            }
        }
        c0 += width;
    }
    out
}

/// Expected 0/1 pattern of `P·B·T1` for the given group sizes.
pub fn pattern_b(m: &[usize; 8], rows: &BlockPartition, cols: usize) -> QMatrix {
    pattern(rows, cols, &placements_b(m))
}

pub fn pattern_c(m: &[usize; 8], rows: &BlockPartition, cols: usize) -> QMatrix {
    pattern(rows, cols, &placements_c(m))
}

pub fn pattern_d(m: &[usize; 8], rows: &BlockPartition, cols: usize) -> QMatrix {
    pattern(rows, cols, &placements_d(m))
}

fn hcat_all(rows: usize, parts: &[&QMatrix]) -> QMatrix {
    if parts.is_empty() {
        return QMatrix::zeros(rows, 0);
    }
    QMatrix::hstack(parts).expect("parts share row count")
}

/// Basis of `col(u) ∩ col(v)`; both inputs must have independent columns.
fn intersect(u: &QMatrix, v: &QMatrix) -> QMatrix {
    let joined = hcat_all(u.rows(), &[u, v]);
    let kernel = null_space(&joined);
    let top = kernel.submatrix(0, 0, u.cols(), kernel.cols());
    u.mul(&top).expect("conformable")
}

/// Columns of `within` that extend the independent columns of `base` to a
/// basis of `col(base) + col(within)`.
fn extend(base: &QMatrix, within: &QMatrix) -> QMatrix {
    let joined = hcat_all(base.rows(), &[base, within]);
    let ech = elim::row_reduce(&joined);
    debug_assert!((0..base.cols()).all(|c| ech.pivots.contains(&c)));
    let picked: Vec<QMatrix> = ech
        .pivots
        .iter()
        .filter(|&&c| c >= base.cols())
        .map(|&c| joined.col(c))
        .collect();
    hcat_all(base.rows(), &picked.iter().collect::<Vec<_>>())
}

/// `W` with `M·W = [targets, 0]`; targets must be independent columns in `col(M)`.
fn column_transform(m: &QMatrix, targets: &QMatrix) -> Result<QMatrix> {
    let x = solve(m, targets)?
        .ok_or_else(|| Error::Internal("adapted basis vector left the column space".into()))?;
    let kernel = null_space(m);
    let w = hcat_all(m.cols(), &[&x, &kernel]);
    if w.cols() != m.cols() {
        return Err(Error::Internal(format!(
            "column transform has {} columns, expected {}",
            w.cols(),
            m.cols()
        )));
    }
    Ok(w)
}

fn rank_of(parts: &[&QMatrix]) -> Result<usize> {
    Ok(elim::rank(&QMatrix::hstack(parts)?))
}

/// `r1..r7` from ranks of the inputs alone.
///
/// The triple form pins only the sums `r5 + r6` and `r5 + r7`; the
/// individual values come from the four-matrix group sizes
/// (`r6 = m1`, `r5 = m3`, `r7 = m4`), which are rank formulas in the
/// stacked matrix `[[D, B, 0], [D, 0, C]]`.
pub fn lemma1_sizes(b: &QMatrix, c: &QMatrix, d: &QMatrix) -> Result<LemmaSizes> {
    check_rows(b, c, d)?;
    let rb = elim::rank(b);
    let rc = elim::rank(c);
    let rd = elim::rank(d);
    let rbc = rank_of(&[b, c])?;
    let rbd = rank_of(&[b, d])?;
    let rcd = rank_of(&[c, d])?;
    let rbcd = rank_of(&[b, c, d])?;
    let stacked = stacked_rank(b, c, d)?;
    let m1 = rb + rc + rd - stacked;
    let m3 = stacked - rbd - rc;
    let m4 = (rbc + rcd + rbd) - (rbcd + stacked);
    Ok(LemmaSizes {
        r1: rbc - rb,
        r2: rb + rc - rbc,
        r3: rbcd - rbc,
        r4: (rbd + rbc) - (rb + rbcd),
        r5: m3,
        r6: m1,
        r7: m4,
        rank_b: rb,
    })
}

/// `r([[D, B, 0], [D, 0, C]])`.
pub fn stacked_rank(b: &QMatrix, c: &QMatrix, d: &QMatrix) -> Result<usize> {
    let m = b.rows();
    let top = QMatrix::hstack(&[d, b, &QMatrix::zeros(m, c.cols())])?;
    let bottom = QMatrix::hstack(&[d, &QMatrix::zeros(m, b.cols()), c])?;
    Ok(elim::rank(&top.vcat(&bottom)?))
}

fn check_rows(b: &QMatrix, c: &QMatrix, d: &QMatrix) -> Result<()> {
    if b.rows() != c.rows() || b.rows() != d.rows() {
        return Err(Error::dims(format!(
            "B, C, D must share a row count (got {}, {}, {})",
            b.rows(),
            c.rows(),
            d.rows()
        )));
    }
    Ok(())
}

pub fn triple_canonical(b: &QMatrix, c: &QMatrix, d: &QMatrix) -> Result<TripleCanonical> {
    check_rows(b, c, d)?;
    let m = b.rows();
    let ub = column_basis(b);
    let vb = column_basis(c);
    let wb = column_basis(d);

    let uv = intersect(&ub, &vb);
    let a1 = intersect(&uv, &wb);
    let a2 = extend(&a1, &uv);
    let a3 = extend(&a1, &intersect(&ub, &wb));
    let a6 = extend(&a1, &intersect(&vb, &wb));

    // W ∩ (U + V) beyond (U ∩ W) + (V ∩ W): each such w splits as u + v
    let u_plus_v = column_basis(&hcat_all(m, &[&ub, &vb]));
    let known = hcat_all(m, &[&a1, &a3, &a6]);
    let diag = extend(&known, &intersect(&wb, &u_plus_v));
    let uv_joined = hcat_all(m, &[&ub, &vb]);
    let split = solve(&uv_joined, &diag)?
        .ok_or_else(|| Error::Internal("W ∩ (U + V) vector outside U + V".into()))?;
    let e4 = ub.mul(&split.submatrix(0, 0, ub.cols(), diag.cols()))?;
    let e6 = vb.mul(&split.submatrix(ub.cols(), 0, vb.cols(), diag.cols()))?;

    let a5 = extend(&hcat_all(m, &[&a1, &a2, &a3, &e4]), &ub);
    let a7 = extend(&hcat_all(m, &[&a1, &a2, &e6, &a6]), &vb);
    let a8 = extend(&hcat_all(m, &[&a1, &a3, &diag, &a6]), &wb);

    let adapted = hcat_all(m, &[&a1, &a2, &a3, &e4, &a5, &e6, &a6, &a7, &a8]);
    let rest = extend(&adapted, &QMatrix::identity(m));
    let basis = hcat_all(m, &[&adapted, &rest]);
    let left = inverse(&basis).map_err(|_| Error::Internal("adapted basis is singular".into()))?;

    let groups = [
        a1.cols(),
        a2.cols(),
        a3.cols(),
        e4.cols(),
        a5.cols(),
        a6.cols(),
        a7.cols(),
        a8.cols(),
    ];
    let sizes = LemmaSizes::from_groups(groups);
    let predicted = lemma1_sizes(b, c, d)?;
    if sizes != predicted {
        return Err(Error::Internal(format!(
            "constructed sizes {sizes:?} disagree with rank formulas {predicted:?}"
        )));
    }

    let w_b = column_transform(b, &hcat_all(m, &[&a1, &a2, &a3, &e4, &a5]))?;
    let w_c = column_transform(c, &hcat_all(m, &[&e6, &a6, &a7, &a1, &a2]))?;
    let w_d = column_transform(d, &hcat_all(m, &[&a8, &diag, &a6, &a3, &a1]))?;

    Ok(TripleCanonical {
        left,
        w_b,
        w_c,
        w_d,
        sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a0: i64, a1: i64, a2: i64, a3: i64) -> Quaternion {
        Quaternion::from_ints(a0, a1, a2, a3)
    }

    fn check(b: &QMatrix, c: &QMatrix, d: &QMatrix) -> TripleCanonical {
        let tc = triple_canonical(b, c, d).unwrap();
        let rows = tc.row_partition();
        let m = tc.groups();
        let pb = tc.left.mul(b).unwrap().mul(&tc.w_b).unwrap();
        let pc = tc.left.mul(c).unwrap().mul(&tc.w_c).unwrap();
        let pd = tc.left.mul(d).unwrap().mul(&tc.w_d).unwrap();
        assert_eq!(pb, pattern_b(&m, &rows, b.cols()));
        assert_eq!(pc, pattern_c(&m, &rows, c.cols()));
        assert_eq!(pd, pattern_d(&m, &rows, d.cols()));
        assert_eq!(elim::rank(&tc.left), b.rows());
        assert_eq!(elim::rank(&tc.w_b), b.cols());
        assert_eq!(elim::rank(&tc.w_c), c.cols());
        assert_eq!(elim::rank(&tc.w_d), d.cols());
        tc
    }

    #[test]
    fn zero_triple() {
        let z = QMatrix::zeros(3, 2);
        let tc = check(&z, &z, &z);
        assert_eq!(tc.groups(), [0; 8]);
        assert!(tc.left.is_identity());
        assert!(tc.w_b.is_identity());
    }

    #[test]
    fn identity_b_only() {
        let tc = check(
            &QMatrix::identity(3),
            &QMatrix::zeros(3, 1),
            &QMatrix::zeros(3, 2),
        );
        assert_eq!(tc.sizes.rank_b, 3);
        assert_eq!(tc.groups(), [0, 0, 0, 0, 3, 0, 0, 0]);
    }

    #[test]
    fn identical_triple() {
        let i = QMatrix::identity(2);
        let s = lemma1_sizes(&i, &i, &i).unwrap();
        assert_eq!((s.r1, s.r2, s.r3, s.r4), (0, 2, 0, 0));
        assert_eq!(s.r5 + s.r6, 2);
        assert_eq!(s.r5 + s.r7, 0);
        check(&i, &i, &i);
    }

    #[test]
    fn diagonal_pairing_group() {
        // U = span(e1), V = span(e2), W = span(e1 + e2): one m4 pair
        let b = QMatrix::column(vec![q(1, 0, 0, 0), q(0, 0, 0, 0)]);
        let c = QMatrix::column(vec![q(0, 0, 0, 0), q(0, 1, 0, 0)]);
        let d = QMatrix::column(vec![q(0, 0, 1, 0), q(0, 0, 0, 1)]);
        let tc = check(&b, &c, &d);
        assert_eq!(tc.groups(), [0, 0, 0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn mismatched_rows() {
        assert!(triple_canonical(
            &QMatrix::zeros(2, 1),
            &QMatrix::zeros(3, 1),
            &QMatrix::zeros(2, 1)
        )
        .is_err());
    }
}
