//! Simultaneous decomposition of `(A, B, C, D)` with `A` η-Hermitian.
//!
//! Produces invertible `P, T1, T2, T3` with
//!
//! ```text
//! P·A·P^{η*} = S_A,  P·B·T1 = S_B,  P·C·T2 = S_C,  P·D·T3 = S_D
//! ```
//!
//! where `S_B, S_C, S_D` are 0/1 patterns over the eleven row groups
//! `(m1, m2, m3, m4, m5, m4, m6, m7, m8, tail, σ)` and `S_A` is η-Hermitian
//! with a zero `(10, 10)` block, a diagonal nonsingular `Σ` in the
//! `(11, 11)` block, and nothing else in group 11.

use num_traits::Zero;

use crate::canon3::{self, pattern_b, pattern_c, pattern_d, row_groups, stacked_rank};
use crate::elim::{self, RealMatrix};
use crate::error::{Error, Result};
use crate::etadiag::eta_congruence_diagonalize;
use crate::matrix::{BlockPartition, QMatrix};
use crate::scalar::{rat, EtaAxis, Quaternion};

/// Row-group sizes of the decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct BlockSizes {
    pub m1: usize,
    pub m2: usize,
    pub m3: usize,
    pub m4: usize,
    pub m5: usize,
    pub m6: usize,
    pub m7: usize,
    pub m8: usize,
    pub sigma_rank: usize,
    pub tail: usize,
}

impl BlockSizes {
    pub fn groups(&self) -> [usize; 8] {
        [
            self.m1, self.m2, self.m3, self.m4, self.m5, self.m6, self.m7, self.m8,
        ]
    }

    fn from_groups(m: [usize; 8], tail: usize, sigma_rank: usize) -> Self {
        BlockSizes {
            m1: m[0],
            m2: m[1],
            m3: m[2],
            m4: m[3],
            m5: m[4],
            m6: m[5],
            m7: m[6],
            m8: m[7],
            sigma_rank,
            tail,
        }
    }

    /// `(m1, m2, m3, m4, m5, m4, m6, m7, m8, tail, σ)`.
    pub fn partition(&self) -> BlockPartition {
        row_groups(&self.groups(), &[self.tail, self.sigma_rank])
    }

    /// `r(B, C, D)`.
    pub fn rank_bcd(&self) -> usize {
        self.groups().iter().sum::<usize>() + self.m4
    }
}

/// Coefficients relating `(m1, …, m8)` to
/// `(r(B), r(C), r(D), r(B,C), r(B,D), r(C,D), r(B,C,D), r[[D,B,0],[D,0,C]] − r(B) − r(C))`.
///
/// Read off the patterns: each rank counts the identity blocks in the
/// corresponding column span, with the paired `m4` group counted twice
/// once two of the three matrices are joined. The last row is
/// `r(D) − m1`.
pub const SIZE_SYSTEM: [[i64; 8]; 8] = [
    [1, 1, 1, 1, 1, 0, 0, 0],
    [1, 1, 0, 1, 0, 1, 1, 0],
    [1, 0, 1, 1, 0, 1, 0, 1],
    [1, 1, 1, 2, 1, 1, 1, 0],
    [1, 1, 1, 2, 1, 1, 0, 1],
    [1, 1, 1, 2, 0, 1, 1, 1],
    [1, 1, 1, 2, 1, 1, 1, 1],
    [0, 0, 1, 1, 0, 1, 0, 1],
];

/// Right-hand side of [`SIZE_SYSTEM`], computed from ranks of the inputs.
pub fn size_system_rhs(b: &QMatrix, c: &QMatrix, d: &QMatrix) -> Result<[usize; 8]> {
    let r = |parts: &[&QMatrix]| -> Result<usize> { Ok(elim::rank(&QMatrix::hstack(parts)?)) };
    let rb = r(&[b])?;
    let rc = r(&[c])?;
    Ok([
        rb,
        rc,
        r(&[d])?,
        r(&[b, c])?,
        r(&[b, d])?,
        r(&[c, d])?,
        r(&[b, c, d])?,
        stacked_rank(b, c, d)? - rb - rc,
    ])
}

/// Solves [`SIZE_SYSTEM`]` · m = rhs` over ℚ. `None` if the solution is not
/// a vector of naturals.
pub fn solve_size_system(rhs: &[usize; 8]) -> Option<[usize; 8]> {
    let mut aug: Vec<Vec<_>> = SIZE_SYSTEM
        .iter()
        .zip(rhs)
        .map(|(row, &r)| {
            let mut v: Vec<_> = row.iter().map(|&c| rat(c, 1)).collect();
            v.push(rat(r as i64, 1));
            v
        })
        .collect();
    let full = RealMatrix::from_rows(aug.clone());
    if full.rank() != 8 {
        return None;
    }
    // Gauss–Jordan on the augmented system
    for c in 0..8 {
        let p = (c..8).find(|&s| !aug[s][c].is_zero())?;
        aug.swap(c, p);
        let inv = aug[c][c].recip();
        for v in aug[c].iter_mut() {
            *v *= &inv;
        }
        let pivot = aug[c].clone();
        for (s, row) in aug.iter_mut().enumerate() {
            if s != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    let mut out = [0usize; 8];
    for (s, row) in aug.iter().enumerate() {
        let v = &row[8];
        if !v.is_integer() || v < &rat(0, 1) {
            return None;
        }
        out[s] = v.to_integer().try_into().ok()?;
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimDecomposition {
    pub eta: EtaAxis,
    pub p: QMatrix,
    pub t1: QMatrix,
    pub t2: QMatrix,
    pub t3: QMatrix,
    pub s_a: QMatrix,
    /// Diagonal of Σ; each entry nonzero and η-Hermitian.
    pub sigma: Vec<Quaternion>,
    pub sizes: BlockSizes,
    pub partition: BlockPartition,
}

impl SimDecomposition {
    /// Block `(s, t)` of `S_A`, 1-based over the eleven groups.
    pub fn sa_block(&self, s: usize, t: usize) -> Result<QMatrix> {
        if !(1..=11).contains(&s) || !(1..=11).contains(&t) {
            return Err(Error::IndexOutOfRange(s, t));
        }
        Ok(self
            .partition
            .block(&self.partition, &self.s_a, s - 1, t - 1))
    }

    /// Same as [`sa_block`](Self::sa_block) for indices known to be valid.
    pub(crate) fn block(&self, s: usize, t: usize) -> QMatrix {
        self.partition
            .block(&self.partition, &self.s_a, s - 1, t - 1)
    }

    pub fn pattern_b(&self) -> QMatrix {
        pattern_b(&self.sizes.groups(), &self.partition, self.t1.rows())
    }

    pub fn pattern_c(&self) -> QMatrix {
        pattern_c(&self.sizes.groups(), &self.partition, self.t2.rows())
    }

    pub fn pattern_d(&self) -> QMatrix {
        pattern_d(&self.sizes.groups(), &self.partition, self.t3.rows())
    }

    /// Checks every defining identity exactly against the source matrices.
    pub fn verify(&self, a: &QMatrix, b: &QMatrix, c: &QMatrix, d: &QMatrix) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::Internal(format!(
                "decomposition check failed: {what}"
            )))
        };
        let pe = self.p.eta_conj_transpose(self.eta);
        if self.p.mul(a)?.mul(&pe)? != self.s_a {
            return fail("P·A·P^η* = S_A");
        }
        if self.p.mul(b)?.mul(&self.t1)? != self.pattern_b() {
            return fail("P·B·T1 = S_B");
        }
        if self.p.mul(c)?.mul(&self.t2)? != self.pattern_c() {
            return fail("P·C·T2 = S_C");
        }
        if self.p.mul(d)?.mul(&self.t3)? != self.pattern_d() {
            return fail("P·D·T3 = S_D");
        }
        if !self.s_a.is_eta_hermitian_unchecked(self.eta) {
            return fail("S_A is η-Hermitian");
        }
        for s in 1..=10 {
            if !self.block(s, 11).is_zero() {
                return fail("group 11 is decoupled");
            }
        }
        if !self.block(10, 10).is_zero() {
            return fail("(10,10) block vanishes");
        }
        let mut sigma = QMatrix::zeros(self.sigma.len(), self.sigma.len());
        for (s, d) in self.sigma.iter().enumerate() {
            if d.is_zero() || !d.is_eta_hermitian(self.eta) {
                return fail("Σ entries are nonzero and η-Hermitian");
            }
            sigma[(s, s)] = d.clone();
        }
        if self.block(11, 11) != sigma {
            return fail("(11,11) block is Σ");
        }
        let ranks = [
            (elim::rank(&self.p), self.p.rows()),
            (elim::rank(&self.t1), self.t1.rows()),
            (elim::rank(&self.t2), self.t2.rows()),
            (elim::rank(&self.t3), self.t3.rows()),
        ];
        if ranks.iter().any(|(r, n)| r != n) {
            return fail("transforms are invertible");
        }
        Ok(())
    }
}

fn check_inputs(a: &QMatrix, b: &QMatrix, c: &QMatrix, d: &QMatrix, eta: EtaAxis) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let m = a.rows();
    for (name, x) in [("B", b), ("C", c), ("D", d)] {
        if x.rows() != m {
            return Err(Error::dims(format!(
                "{name} has {} rows, A is {m}x{m}",
                x.rows()
            )));
        }
    }
    if !a.is_eta_hermitian_unchecked(eta) {
        return Err(Error::NotEtaHermitian("A".into()));
    }
    Ok(())
}

/// `r([[A, B, C, D], [B^η*, 0, 0, 0], [C^η*, 0, 0, 0], [D^η*, 0, 0, 0]])`.
fn bordered_rank(
    a: &QMatrix,
    b: &QMatrix,
    c: &QMatrix,
    d: &QMatrix,
    eta: EtaAxis,
) -> Result<usize> {
    let (p1, p2, p3) = (b.cols(), c.cols(), d.cols());
    let z = QMatrix::zeros;
    let grid = vec![
        vec![a.clone(), b.clone(), c.clone(), d.clone()],
        vec![b.eta_conj_transpose(eta), z(p1, p1), z(p1, p2), z(p1, p3)],
        vec![c.eta_conj_transpose(eta), z(p2, p1), z(p2, p2), z(p2, p3)],
        vec![d.eta_conj_transpose(eta), z(p3, p1), z(p3, p2), z(p3, p3)],
    ];
    Ok(elim::rank(&QMatrix::from_block_rows(&grid)?))
}

/// Group sizes from rank formulas alone (no decomposition is built).
pub fn block_sizes(
    a: &QMatrix,
    b: &QMatrix,
    c: &QMatrix,
    d: &QMatrix,
    eta: EtaAxis,
) -> Result<BlockSizes> {
    check_inputs(a, b, c, d, eta)?;
    let [rb, rc, rd, rbc, rbd, rcd, rbcd, _] = size_system_rhs(b, c, d)?;
    let stacked = stacked_rank(b, c, d)?;
    let m = [
        rd + rb + rc - stacked,
        stacked - rbc - rd,
        stacked - rbd - rc,
        (rbc + rcd + rbd) - (rbcd + stacked),
        rbcd - rcd,
        stacked - rcd - rb,
        rbcd - rbd,
        rbcd - rbc,
    ];
    let sigma_rank = bordered_rank(a, b, c, d, eta)? - 2 * rbcd;
    let tail = a.rows() - rbcd - sigma_rank;
    Ok(BlockSizes::from_groups(m, tail, sigma_rank))
}

pub fn simultaneous_decompose(
    a: &QMatrix,
    b: &QMatrix,
    c: &QMatrix,
    d: &QMatrix,
    eta: EtaAxis,
) -> Result<SimDecomposition> {
    check_inputs(a, b, c, d, eta)?;
    let m = a.rows();
    let triple = canon3::triple_canonical(b, c, d)?;
    let groups = triple.groups();
    let rbcd = groups.iter().sum::<usize>() + groups[3];

    // trailing block of P1·A·P1^η*, diagonalized with its zero part first
    let p1 = &triple.left;
    let a1 = p1.mul(a)?.mul(&p1.eta_conj_transpose(eta))?;
    let rest = m - rbcd;
    let trailing = a1.submatrix(rbcd, rbcd, rest, rest);
    let diag = eta_congruence_diagonalize(&trailing, eta)?;
    let r = diag.rank;
    let u = &diag.transform;
    let p2 = u
        .submatrix(r, 0, rest - r, rest)
        .vcat(&u.submatrix(0, 0, r, rest))?;
    let lift = QMatrix::block_diag(&QMatrix::identity(rbcd), &p2);
    let a2 = lift.mul(&a1)?.mul(&lift.eta_conj_transpose(eta))?;

    // clear the coupling column of Σ: rows 1..9 get −A_{s,11}·Σ⁻¹ times the Σ rows
    let mut p3 = QMatrix::identity(m);
    let sigma_start = m - r;
    for (k, dk) in diag.diag.iter().enumerate() {
        let dk_inv = dk.inv()?;
        for s in 0..rbcd {
            let e = &a2[(s, sigma_start + k)];
            if !e.is_zero() {
                p3[(s, sigma_start + k)] = -(e * &dk_inv);
            }
        }
    }

    let p = p3.mul(&lift)?.mul(p1)?;
    let s_a = p.mul(a)?.mul(&p.eta_conj_transpose(eta))?;
    let sizes = BlockSizes::from_groups(groups, rest - r, r);
    let predicted = block_sizes(a, b, c, d, eta)?;
    if sizes != predicted {
        return Err(Error::Internal(format!(
            "constructed block sizes {sizes:?} disagree with rank formulas {predicted:?}"
        )));
    }
    Ok(SimDecomposition {
        eta,
        p,
        t1: triple.w_b,
        t2: triple.w_c,
        t3: triple.w_d,
        s_a,
        sigma: diag.diag,
        partition: sizes.partition(),
        sizes,
    })
}

/// Sizes of the three-matrix form `(A, B, C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CorollarySizes {
    /// `r(B) + r(C) − r(B, C)`
    pub n1: usize,
    /// `r(B, C) − r(C)`
    pub n2: usize,
    /// `r(B, C) − r(B)`
    pub n3: usize,
    /// rank of Σ
    pub n4: usize,
    pub tail: usize,
}

impl CorollarySizes {
    /// `(n1, n2, n3, tail, n4)`.
    pub fn partition(&self) -> BlockPartition {
        BlockPartition::new(vec![self.n1, self.n2, self.n3, self.tail, self.n4])
    }
}

/// `P·A·P^η* = S_A`, `P·B·T1 = S_B`, `P·C·T2 = S_C` for a triple with `A` η-Hermitian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryDecomposition {
    pub eta: EtaAxis,
    pub p: QMatrix,
    pub t1: QMatrix,
    pub t2: QMatrix,
    pub s_a: QMatrix,
    pub sigma: Vec<Quaternion>,
    pub sizes: CorollarySizes,
}

impl CorollaryDecomposition {
    pub fn pattern_b(&self) -> QMatrix {
        let n = &self.sizes;
        let rows = n.partition();
        let mut out = QMatrix::zeros(rows.total(), self.t1.rows());
        for d in 0..n.n1 + n.n2 {
            out[(d, d)] = Quaternion::one();
        }
        out
    }

    pub fn pattern_c(&self) -> QMatrix {
        let n = &self.sizes;
        let rows = n.partition();
        let mut out = QMatrix::zeros(rows.total(), self.t2.rows());
        for d in 0..n.n1 {
            out[(d, d)] = Quaternion::one();
        }
        for d in 0..n.n3 {
            out[(rows.offset(2) + d, n.n1 + d)] = Quaternion::one();
        }
        out
    }
}

pub fn corollary_triple(
    a: &QMatrix,
    b: &QMatrix,
    c: &QMatrix,
    eta: EtaAxis,
) -> Result<CorollaryDecomposition> {
    let d = QMatrix::zeros(a.rows(), 0);
    let dec = simultaneous_decompose(a, b, c, &d, eta)?;
    let s = dec.sizes;
    debug_assert_eq!((s.m1, s.m3, s.m4, s.m6, s.m8), (0, 0, 0, 0, 0));
    let sizes = CorollarySizes {
        n1: s.m2,
        n2: s.m5,
        n3: s.m7,
        n4: s.sigma_rank,
        tail: s.tail,
    };
    // S_C columns come out as (n3, n1, rest); reorder to (n1, n3, rest)
    let t2 = &dec.t2;
    let n3_cols = t2.submatrix(0, 0, t2.rows(), sizes.n3);
    let n1_cols = t2.submatrix(0, sizes.n3, t2.rows(), sizes.n1);
    let others = t2.submatrix(
        0,
        sizes.n1 + sizes.n3,
        t2.rows(),
        t2.cols() - sizes.n1 - sizes.n3,
    );
    let t2 = QMatrix::hstack(&[&n1_cols, &n3_cols, &others])?;
    Ok(CorollaryDecomposition {
        eta,
        p: dec.p,
        t1: dec.t1,
        t2,
        s_a: dec.s_a,
        sigma: dec.sigma,
        sizes,
    })
}
