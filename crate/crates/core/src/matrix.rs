//! Dense quaternion matrices.
//!
//! Zero-sized matrices are ordinary values: a `2x0` matrix still knows it
//! has two rows, which is what lets block grids with vanishing groups
//! assemble and split without special cases.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::{EtaAxis, Quaternion};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Quaternion::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for s in 0..n {
            m[(s, s)] = Quaternion::one();
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Quaternion,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for s in 0..rows {
            for t in 0..cols {
                entries.push(f(s, t));
            }
        }
        QMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Row-major constructor; `entries.len()` must equal `rows * cols`.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Quaternion>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::dims(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(QMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds from nested rows. All rows must share a length; an empty
    /// outer vector gives a `0x0` matrix.
    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (s, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::dims(format!(
                    "row {s} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(QMatrix {
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Column vector from entries.
    pub fn column(entries: Vec<Quaternion>) -> Self {
        let rows = entries.len();
        QMatrix {
            rows,
            cols: 1,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.entries
    }

    pub fn row(&self, s: usize) -> &[Quaternion] {
        &self.entries[s * self.cols..(s + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Quaternion>> {
        (0..self.rows).map(|s| self.row(s).to_vec()).collect()
    }

    pub fn col(&self, t: usize) -> QMatrix {
        QMatrix::from_fn(self.rows, 1, |s, _| self[(s, t)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Quaternion::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|s| {
                (0..self.cols).all(|t| {
                    let e = &self[(s, t)];
                    if s == t {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for s in 0..self.rows {
            for u in 0..self.cols {
                let a = &self[(s, u)];
                if a.is_zero() {
                    continue;
                }
                for t in 0..other.cols {
                    let b = &other[(u, t)];
                    if b.is_zero() {
                        continue;
                    }
                    let p = a * b;
                    out[(s, t)] += &p;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &QMatrix,
        f: impl Fn(&Quaternion, &Quaternion) -> Quaternion,
    ) -> Result<QMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::dims(format!(
                "shapes {}x{} and {}x{} differ",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn neg(&self) -> QMatrix {
        self.map(|q| -q)
    }

    pub fn map(&self, f: impl Fn(&Quaternion) -> Quaternion) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Left scalar multiplication `q·A`.
    pub fn scale_left(&self, q: &Quaternion) -> QMatrix {
        self.map(|e| q * e)
    }

    /// Right scalar multiplication `A·q`.
    pub fn scale_right(&self, q: &Quaternion) -> QMatrix {
        self.map(|e| e * q)
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |s, t| self[(t, s)].clone())
    }

    /// Conjugate transpose `A*`.
    pub fn conj_transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |s, t| self[(t, s)].conj())
    }

    /// `A^{η*} = −η A* η`, computed entrywise.
    pub fn eta_conj_transpose(&self, eta: EtaAxis) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |s, t| self[(t, s)].eta_conj(eta))
    }

    pub fn is_eta_hermitian(&self, eta: EtaAxis) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.is_eta_hermitian_unchecked(eta))
    }

    pub(crate) fn is_eta_hermitian_unchecked(&self, eta: EtaAxis) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|s| (s..self.cols).all(|t| self[(s, t)] == self[(t, s)].eta_conj(eta)))
    }

    /// `A^{η*} = −A`.
    pub fn is_skew_eta_hermitian(&self, eta: EtaAxis) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|s| (s..self.cols).all(|t| self[(s, t)] == -self[(t, s)].eta_conj(eta)))
    }

    /// Copy of the `rows x cols` window starting at `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> QMatrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        QMatrix::from_fn(rows, cols, |s, t| self[(r0 + s, c0 + t)].clone())
    }

    pub fn set_submatrix(&mut self, r0: usize, c0: usize, block: &QMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for s in 0..block.rows {
            for t in 0..block.cols {
                self[(r0 + s, c0 + t)] = block[(s, t)].clone();
            }
        }
    }

    /// `[self, other]`.
    pub fn hcat(&self, other: &QMatrix) -> Result<QMatrix> {
        QMatrix::hstack(&[self, other])
    }

    /// `[self; other]`.
    pub fn vcat(&self, other: &QMatrix) -> Result<QMatrix> {
        QMatrix::vstack(&[self, other])
    }

    pub fn hstack(parts: &[&QMatrix]) -> Result<QMatrix> {
        let rows = parts.first().map_or(0, |p| p.rows);
        if let Some(bad) = parts.iter().find(|p| p.rows != rows) {
            return Err(Error::dims(format!(
                "hstack row counts differ ({} vs {rows})",
                bad.rows
            )));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = QMatrix::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            out.set_submatrix(0, c0, p);
            c0 += p.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&QMatrix]) -> Result<QMatrix> {
        let cols = parts.first().map_or(0, |p| p.cols);
        if let Some(bad) = parts.iter().find(|p| p.cols != cols) {
            return Err(Error::dims(format!(
                "vstack column counts differ ({} vs {cols})",
                bad.cols
            )));
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = QMatrix::zeros(rows, cols);
        let mut r0 = 0;
        for p in parts {
            out.set_submatrix(r0, 0, p);
            r0 += p.rows;
        }
        Ok(out)
    }

    /// Block-diagonal `diag(a, b)`.
    pub fn block_diag(a: &QMatrix, b: &QMatrix) -> QMatrix {
        let mut out = QMatrix::zeros(a.rows + b.rows, a.cols + b.cols);
        out.set_submatrix(0, 0, a);
        out.set_submatrix(a.rows, a.cols, b);
        out
    }

    /// Assembles a matrix from a grid given as block rows. Each block row
    /// must agree on height and each block column on width; use explicit
    /// zero matrices (possibly empty) for vanishing blocks.
    pub fn from_block_rows(grid: &[Vec<QMatrix>]) -> Result<QMatrix> {
        let rows: Vec<QMatrix> = grid
            .iter()
            .map(|row| QMatrix::hstack(&row.iter().collect::<Vec<_>>()))
            .collect::<Result<_>>()?;
        QMatrix::vstack(&rows.iter().collect::<Vec<_>>())
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;

    fn index(&self, (s, t): (usize, usize)) -> &Quaternion {
        debug_assert!(s < self.rows && t < self.cols);
        &self.entries[s * self.cols + t]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (s, t): (usize, usize)) -> &mut Quaternion {
        debug_assert!(s < self.rows && t < self.cols);
        &mut self.entries[s * self.cols + t]
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|s| self.row(s).iter().map(ToString::to_string).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "  [ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    a.mul(b)
}

pub fn eta_conj_transpose(a: &QMatrix, eta: EtaAxis) -> QMatrix {
    a.eta_conj_transpose(eta)
}

pub fn is_eta_hermitian(a: &QMatrix, eta: EtaAxis) -> Result<bool> {
    a.is_eta_hermitian(eta)
}

/// Ordered group sizes splitting one matrix dimension. Sizes may be zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockPartition {
    sizes: Vec<usize>,
}

impl BlockPartition {
    pub fn new(sizes: Vec<usize>) -> Self {
        BlockPartition { sizes }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn size(&self, group: usize) -> usize {
        self.sizes[group]
    }

    /// Index of the first row/column belonging to `group`.
    pub fn offset(&self, group: usize) -> usize {
        self.sizes[..group].iter().sum()
    }

    /// Index range covered by `group`.
    pub fn range(&self, group: usize) -> std::ops::Range<usize> {
        let start = self.offset(group);
        start..start + self.sizes[group]
    }

    /// Splits `m` into the grid of blocks described by the two partitions.
    pub fn split(&self, cols: &BlockPartition, m: &QMatrix) -> Result<Vec<Vec<QMatrix>>> {
        if m.rows() != self.total() || m.cols() != cols.total() {
            return Err(Error::dims(format!(
                "partition {}x{} does not cover a {}x{} matrix",
                self.total(),
                cols.total(),
                m.rows(),
                m.cols()
            )));
        }
        Ok((0..self.len())
            .map(|s| {
                (0..cols.len())
                    .map(|t| {
                        m.submatrix(self.offset(s), cols.offset(t), self.size(s), cols.size(t))
                    })
                    .collect()
            })
            .collect())
    }

    /// Exact inverse of [`BlockPartition::split`].
    pub fn assemble(&self, cols: &BlockPartition, grid: &[Vec<QMatrix>]) -> Result<QMatrix> {
        if grid.len() != self.len() || grid.iter().any(|row| row.len() != cols.len()) {
            return Err(Error::dims("block grid does not match partitions"));
        }
        let mut out = QMatrix::zeros(self.total(), cols.total());
        for (s, row) in grid.iter().enumerate() {
            for (t, block) in row.iter().enumerate() {
                if block.shape() != (self.size(s), cols.size(t)) {
                    return Err(Error::dims(format!(
                        "block ({s},{t}) is {}x{}, expected {}x{}",
                        block.rows(),
                        block.cols(),
                        self.size(s),
                        cols.size(t)
                    )));
                }
                out.set_submatrix(self.offset(s), cols.offset(t), block);
            }
        }
        Ok(out)
    }

    /// The block of `m` at `(s, t)`.
    pub fn block(&self, cols: &BlockPartition, m: &QMatrix, s: usize, t: usize) -> QMatrix {
        m.submatrix(self.offset(s), cols.offset(t), self.size(s), cols.size(t))
    }
}
