//! Gaussian elimination over the quaternions.
//!
//! Rows are combined with left scalar multiples, so the right-linear
//! relations between columns are preserved: `A x = 0` iff `E A x = 0`.
//! That makes one reduced row echelon form enough for rank, null spaces,
//! linear solves and column-space bases.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::scalar::{Quaternion, Rational};

/// `E·A = R` with `R` in reduced row echelon form and `E` invertible.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    pub transform: QMatrix,
    pub reduced: QMatrix,
    /// Pivot column of each of the first `rank` rows of `reduced`.
    pub pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn swap_rows(m: &mut QMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for t in 0..m.cols() {
        let tmp = m[(a, t)].clone();
        m[(a, t)] = m[(b, t)].clone();
        m[(b, t)] = tmp;
    }
}

/// `row_s <- c · row_s`
fn scale_row(m: &mut QMatrix, s: usize, c: &Quaternion) {
    for t in 0..m.cols() {
        if !m[(s, t)].is_zero() {
            m[(s, t)] = c * &m[(s, t)];
        }
    }
}

/// `row_dst <- row_dst − c · row_src`
fn sub_row(m: &mut QMatrix, dst: usize, src: usize, c: &Quaternion) {
    for t in 0..m.cols() {
        if m[(src, t)].is_zero() {
            continue;
        }
        let p = c * &m[(src, t)];
        m[(dst, t)] -= &p;
    }
}

/// Reduced row echelon form; pivots are the first nonzero entry in column order.
pub fn row_reduce(a: &QMatrix) -> RowEchelon {
    let rows = a.rows();
    let mut r = a.clone();
    let mut e = QMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..a.cols() {
        if next == rows {
            break;
        }
        let Some(p) = (next..rows).find(|&s| !r[(s, c)].is_zero()) else {
            continue;
        };
        swap_rows(&mut r, next, p);
        swap_rows(&mut e, next, p);
        let inv = r[(next, c)].inv().expect("pivot is nonzero");
        scale_row(&mut r, next, &inv);
        scale_row(&mut e, next, &inv);
        for s in 0..rows {
            if s == next || r[(s, c)].is_zero() {
                continue;
            }
            let f = r[(s, c)].clone();
            sub_row(&mut r, s, next, &f);
            sub_row(&mut e, s, next, &f);
        }
        pivots.push(c);
        next += 1;
    }
    RowEchelon {
        transform: e,
        reduced: r,
        pivots,
    }
}

/// Rank over ℍ: pivot count of [`row_reduce`].
pub fn rank(a: &QMatrix) -> usize {
    // no transform needed here, so skip tracking it
    let rows = a.rows();
    let mut r = a.clone();
    let mut next = 0;
    for c in 0..a.cols() {
        if next == rows {
            break;
        }
        let Some(p) = (next..rows).find(|&s| !r[(s, c)].is_zero()) else {
            continue;
        };
        swap_rows(&mut r, next, p);
        let inv = r[(next, c)].inv().expect("pivot is nonzero");
        scale_row(&mut r, next, &inv);
        for s in next + 1..rows {
            if r[(s, c)].is_zero() {
                continue;
            }
            let f = r[(s, c)].clone();
            sub_row(&mut r, s, next, &f);
        }
        next += 1;
    }
    next
}

/// `P·A·Q = [[I_r, 0], [0, 0]]` with `P`, `Q` invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCanonical {
    pub left: QMatrix,
    pub right: QMatrix,
    pub rank: usize,
}

pub fn equivalence_canonical(a: &QMatrix) -> EquivalenceCanonical {
    let ech = row_reduce(a);
    let n = a.cols();
    let mut right = QMatrix::zeros(n, n);
    let mut out_col = 0;
    for &c in &ech.pivots {
        right[(c, out_col)] = Quaternion::one();
        out_col += 1;
    }
    for f in (0..n).filter(|f| !ech.pivots.contains(f)) {
        right[(f, out_col)] = Quaternion::one();
        for (i, &c) in ech.pivots.iter().enumerate() {
            right[(c, out_col)] = -ech.reduced[(i, f)].clone();
        }
        out_col += 1;
    }
    EquivalenceCanonical {
        rank: ech.rank(),
        left: ech.transform,
        right,
    }
}

pub fn inverse(a: &QMatrix) -> Result<QMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let ech = row_reduce(a);
    if ech.rank() < a.rows() {
        return Err(Error::Singular);
    }
    Ok(ech.transform)
}

/// Basis of the right null space `{x : A x = 0}`, as columns.
pub fn null_space(a: &QMatrix) -> QMatrix {
    let ech = row_reduce(a);
    null_space_from(&ech, a.cols())
}

fn null_space_from(ech: &RowEchelon, n: usize) -> QMatrix {
    let free: Vec<usize> = (0..n).filter(|f| !ech.pivots.contains(f)).collect();
    let mut basis = QMatrix::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[(f, k)] = Quaternion::one();
        for (i, &c) in ech.pivots.iter().enumerate() {
            basis[(c, k)] = -ech.reduced[(i, f)].clone();
        }
    }
    basis
}

/// Columns of `a` at its pivot positions: a basis of the column space.
pub fn column_basis(a: &QMatrix) -> QMatrix {
    let ech = row_reduce(a);
    let cols: Vec<QMatrix> = ech.pivots.iter().map(|&c| a.col(c)).collect();
    if cols.is_empty() {
        return QMatrix::zeros(a.rows(), 0);
    }
    QMatrix::hstack(&cols.iter().collect::<Vec<_>>()).expect("columns share row count")
}

/// Some `X` with `A·X = B`, or `None` if a column of `B` is outside the
/// column space of `A`.
pub fn solve(a: &QMatrix, b: &QMatrix) -> Result<Option<QMatrix>> {
    if a.rows() != b.rows() {
        return Err(Error::dims(format!(
            "solve: {} rows against {} rows",
            a.rows(),
            b.rows()
        )));
    }
    let ech = row_reduce(a);
    let eb = ech.transform.mul(b)?;
    let r = ech.rank();
    if (r..eb.rows()).any(|s| eb.row(s).iter().any(|q| !q.is_zero())) {
        return Ok(None);
    }
    let mut x = QMatrix::zeros(a.cols(), b.cols());
    for (i, &c) in ech.pivots.iter().enumerate() {
        for t in 0..b.cols() {
            x[(c, t)] = eb[(i, t)].clone();
        }
    }
    Ok(Some(x))
}

/// Dense rational matrix, used only for the real-expansion oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RealMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, s: usize, t: usize) -> &Rational {
        &self.data[s * self.cols + t]
    }

    pub fn set(&mut self, s: usize, t: usize, v: Rational) {
        self.data[s * self.cols + t] = v;
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        RealMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn mul(&self, other: &RealMatrix) -> RealMatrix {
        assert_eq!(self.cols, other.rows, "real product dimension mismatch");
        let mut out = RealMatrix::zeros(self.rows, other.cols);
        for s in 0..self.rows {
            for u in 0..self.cols {
                let a = self.get(s, u);
                if a.is_zero() {
                    continue;
                }
                for t in 0..other.cols {
                    let b = other.get(u, t);
                    if !b.is_zero() {
                        out.data[s * other.cols + t] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Appends the columns of `other`.
    pub fn hcat(&self, other: &RealMatrix) -> RealMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = RealMatrix::zeros(self.rows, self.cols + other.cols);
        for s in 0..self.rows {
            for t in 0..self.cols {
                out.set(s, t, self.get(s, t).clone());
            }
            for t in 0..other.cols {
                out.set(s, self.cols + t, other.get(s, t).clone());
            }
        }
        out
    }

    /// Rank by fraction-based Gaussian elimination over ℚ.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Rational>> = (0..self.rows)
            .map(|s| self.data[s * self.cols..(s + 1) * self.cols].to_vec())
            .collect();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&s| !m[s][c].is_zero()) else {
                continue;
            };
            m.swap(next, p);
            let inv = m[next][c].recip();
            for v in m[next][c..].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            let pivot_row = m[next].clone();
            for row in m.iter_mut().skip(next + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for t in c..self.cols {
                    if !pivot_row[t].is_zero() {
                        row[t] -= &f * &pivot_row[t];
                    }
                }
            }
            next += 1;
        }
        next
    }
}

/// 4x4 matrix of `x ↦ q·x` on the ordered basis `(1, i, j, k)`.
pub fn left_regular(q: &Quaternion) -> [[Rational; 4]; 4] {
    let (a0, a1, a2, a3) = (q.a0.clone(), q.a1.clone(), q.a2.clone(), q.a3.clone());
    [
        [a0.clone(), -a1.clone(), -a2.clone(), -a3.clone()],
        [a1.clone(), a0.clone(), -a3.clone(), a2.clone()],
        [a2.clone(), a3.clone(), a0.clone(), -a1.clone()],
        [a3, -a2, a1, a0],
    ]
}

/// Replaces every entry by its 4x4 left-regular block.
pub fn real_expansion(a: &QMatrix) -> RealMatrix {
    let mut out = RealMatrix::zeros(4 * a.rows(), 4 * a.cols());
    for s in 0..a.rows() {
        for t in 0..a.cols() {
            let block = left_regular(&a[(s, t)]);
            for (u, row) in block.iter().enumerate() {
                for (v, val) in row.iter().enumerate() {
                    if !val.is_zero() {
                        out.set(4 * s + u, 4 * t + v, val.clone());
                    }
                }
            }
        }
    }
    out
}

/// `true` when `a` is a real `n x n` identity.
pub fn real_is_identity(a: &RealMatrix) -> bool {
    a.rows == a.cols
        && (0..a.rows).all(|s| {
            (0..a.cols).all(|t| {
                if s == t {
                    a.get(s, t).is_one()
                } else {
                    a.get(s, t).is_zero()
                }
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q(a0: i64, a1: i64, a2: i64, a3: i64) -> Quaternion {
        Quaternion::from_ints(a0, a1, a2, a3)
    }

    fn sample() -> QMatrix {
        QMatrix::from_rows(vec![
            vec![q(1, 1, 0, 0), q(0, 0, 1, 0), q(2, 0, 0, -1)],
            vec![q(0, 1, 0, 1), q(1, 0, 0, 0), q(0, 0, 0, 0)],
        ])
        .unwrap()
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(rank(&QMatrix::identity(3)), 3);
        assert_eq!(rank(&QMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&QMatrix::zeros(0, 4)), 0);
    }

    #[test]
    fn rank_sees_left_dependence() {
        // second row = i · first row, dependent over ℍ though not over ℂ-style right scaling
        let r0 = vec![q(1, 0, 0, 0), q(0, 0, 1, 0)];
        let r1: Vec<_> = r0.iter().map(|e| &Quaternion::i() * e).collect();
        let m = QMatrix::from_rows(vec![r0, r1]).unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn canonical_form_of_zero() {
        let ec = equivalence_canonical(&QMatrix::zeros(2, 3));
        assert_eq!(ec.rank, 0);
        assert!(ec.left.is_identity());
        assert!(ec.right.is_identity());
    }

    #[test]
    fn canonical_form_pattern() {
        let a = sample();
        let ec = equivalence_canonical(&a);
        let pattern = ec.left.mul(&a).unwrap().mul(&ec.right).unwrap();
        assert_eq!(ec.rank, 2);
        for s in 0..2 {
            for t in 0..3 {
                let expect = if s == t {
                    Quaternion::one()
                } else {
                    Quaternion::zero()
                };
                assert_eq!(pattern[(s, t)], expect);
            }
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            inverse(&QMatrix::identity(3)).unwrap(),
            QMatrix::identity(3)
        );
        let i = QMatrix::from_rows(vec![vec![Quaternion::i()]]).unwrap();
        assert_eq!(inverse(&i).unwrap()[(0, 0)], -Quaternion::i());
        assert_eq!(inverse(&QMatrix::zeros(2, 2)), Err(Error::Singular));
        assert!(matches!(inverse(&sample()), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn null_space_is_annihilated() {
        let a = sample();
        let n = null_space(&a);
        assert_eq!(n.cols(), 1);
        assert!(a.mul(&n).unwrap().is_zero());
    }

    #[test]
    fn solve_recovers_or_rejects() {
        let a = sample();
        let x0 = QMatrix::column(vec![q(1, 0, 0, 0), q(0, 1, 0, 0), q(0, 0, 0, 1)]);
        let b = a.mul(&x0).unwrap();
        let x = solve(&a, &b).unwrap().unwrap();
        assert_eq!(a.mul(&x).unwrap(), b);

        let thin = QMatrix::column(vec![q(1, 0, 0, 0), q(0, 0, 0, 0)]);
        let target = QMatrix::column(vec![q(0, 0, 0, 0), q(1, 0, 0, 0)]);
        assert!(solve(&thin, &target).unwrap().is_none());
    }

    #[test]
    fn left_regular_of_i() {
        let l = left_regular(&Quaternion::i());
        let expected = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]];
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(l[u][v], rat(expected[u][v], 1));
            }
        }
    }

    #[test]
    fn real_rank_is_four_times() {
        let a = sample();
        assert_eq!(real_expansion(&a).rank(), 4 * rank(&a));
    }
}
