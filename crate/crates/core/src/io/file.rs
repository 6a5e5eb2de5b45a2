//! Plain-text problem files:
//!
//! ```text
//! % comment
//! eta: j
//! kind: herm
//! matrix B 2 3
//! 1 i 0
//! 0 1/2-k 1
//! matrix D 2 0
//! ```
//!
//! A matrix with zero rows or zero columns has no row lines.

use std::fmt::Write as _;
use std::io::Read;

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::scalar::EtaAxis;
use crate::solvers::{validate, EquationKind};

use super::literal::parse_at;

/// The declared purpose of a problem file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    Decompose,
    Equation(EquationKind),
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProblemKind::Decompose => f.write_str("decompose"),
            ProblemKind::Equation(k) => k.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub eta: EtaAxis,
    pub kind: Option<ProblemKind>,
    /// In file order.
    pub matrices: Vec<(String, QMatrix)>,
}

impl ProblemFile {
    pub fn new(eta: EtaAxis, kind: Option<ProblemKind>) -> Self {
        ProblemFile {
            eta,
            kind,
            matrices: Vec::new(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&QMatrix> {
        self.matrices
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
    }

    /// Like [`get`](Self::get), failing with a message naming the matrix.
    pub fn require(&self, name: &str) -> Result<&QMatrix> {
        self.get(name)
            .ok_or_else(|| Error::dims(format!("problem file has no matrix `{name}`")))
    }

    /// Adds or replaces a matrix.
    pub fn insert(&mut self, name: impl Into<String>, m: QMatrix) {
        let name = name.into();
        match self.matrices.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = m,
            None => self.matrices.push((name, m)),
        }
    }

    /// `(A, B, C, D)`.
    pub fn coefficients(&self) -> Result<(&QMatrix, &QMatrix, &QMatrix, &QMatrix)> {
        Ok((
            self.require("A")?,
            self.require("B")?,
            self.require("C")?,
            self.require("D")?,
        ))
    }

    /// Serializes in the format [`parse_problem`] reads.
    pub fn to_text(&self) -> String {
        let mut out = format!("eta: {}\n", self.eta);
        if let Some(kind) = self.kind {
            let _ = writeln!(out, "kind: {kind}");
        }
        for (name, m) in &self.matrices {
            let _ = writeln!(out, "matrix {name} {} {}", m.rows(), m.cols());
            if m.cols() == 0 {
                continue;
            }
            for s in 0..m.rows() {
                let row: Vec<String> = m.row(s).iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
        }
        out
    }
}

struct Pending {
    name: String,
    rows: usize,
    cols: usize,
    entries: Vec<crate::scalar::Quaternion>,
    header_line: usize,
}

fn parse_header_usize(
    tok: Option<(usize, &str)>,
    line: usize,
    what: &str,
    end: usize,
) -> Result<usize> {
    let (col, tok) = tok.ok_or_else(|| Error::parse(line, end, format!("missing {what}")))?;
    tok.parse().map_err(|_| {
        Error::parse(
            line,
            col,
            format!("{what} must be a non-negative integer, got `{tok}`"),
        )
    })
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace()
        .map(move |tok| (tok.as_ptr() as usize - line.as_ptr() as usize + 1, tok))
}

/// Reads a problem file from text.
pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut eta = None;
    let mut kind = None;
    let mut matrices: Vec<(String, QMatrix)> = Vec::new();
    let mut pending: Option<Pending> = None;

    let finish = |p: Pending, matrices: &mut Vec<(String, QMatrix)>| -> Result<()> {
        let m = QMatrix::from_entries(p.rows, p.cols, p.entries)?;
        matrices.push((p.name, m));
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('%').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }

        if let Some(p) = pending.as_mut() {
            let row = p.entries.len() / p.cols;
            let mut count = 0;
            let mut parsed = Vec::with_capacity(p.cols);
            for (col, tok) in tokens(line) {
                count += 1;
                parsed.push(parse_at(tok, line_no, col)?);
            }
            if count != p.cols {
                return Err(Error::dims(format!(
                    "line {line_no}: row {} of matrix {} has {count} entries, expected {}",
                    row + 1,
                    p.name,
                    p.cols
                )));
            }
            p.entries.extend(parsed);
            if p.entries.len() == p.rows * p.cols {
                finish(pending.take().expect("pending"), &mut matrices)?;
            }
            continue;
        }

        let trimmed = line.trim_start();
        let indent = line.len() - trimmed.len();
        if let Some(rest) = trimmed.strip_prefix("eta:") {
            if eta.is_some() {
                return Err(Error::parse(line_no, indent + 1, "duplicate `eta:` line"));
            }
            eta = Some(rest.trim().parse::<EtaAxis>().map_err(|_| {
                Error::parse(
                    line_no,
                    indent + 5,
                    format!("eta must be i, j or k, got `{}`", rest.trim()),
                )
            })?);
        } else if let Some(rest) = trimmed.strip_prefix("kind:") {
            if kind.is_some() {
                return Err(Error::parse(line_no, indent + 1, "duplicate `kind:` line"));
            }
            kind = Some(match rest.trim() {
                "decompose" => ProblemKind::Decompose,
                other => ProblemKind::Equation(other.parse().map_err(|_| {
                    Error::parse(
                        line_no,
                        indent + 6,
                        format!("kind must be herm, mixed or decompose, got `{other}`"),
                    )
                })?),
            });
        } else {
            let mut toks = tokens(line);
            match toks.next() {
                Some((_, "matrix")) => {}
                Some((col, tok)) => {
                    return Err(Error::parse(line_no, col, format!("unexpected `{tok}`")))
                }
                None => unreachable!("blank lines are skipped"),
            }
            let end = line.trim_end().len() + 1;
            let (name_col, name) = toks
                .next()
                .ok_or_else(|| Error::parse(line_no, end, "missing matrix name"))?;
            if matrices.iter().any(|(n, _)| n == name) {
                return Err(Error::parse(
                    line_no,
                    name_col,
                    format!("matrix `{name}` declared twice"),
                ));
            }
            let rows = parse_header_usize(toks.next(), line_no, "row count", end)?;
            let cols = parse_header_usize(toks.next(), line_no, "column count", end)?;
            if let Some((col, tok)) = toks.next() {
                return Err(Error::parse(
                    line_no,
                    col,
                    format!("unexpected `{tok}` after dimensions"),
                ));
            }
            let p = Pending {
                name: name.to_string(),
                rows,
                cols,
                entries: Vec::new(),
                header_line: line_no,
            };
            if rows == 0 || cols == 0 {
                finish(p, &mut matrices)?;
            } else {
                pending = Some(p);
            }
        }
    }

    if let Some(p) = pending {
        return Err(Error::parse(
            p.header_line,
            1,
            format!(
                "matrix {} declares {} rows but only {} were given",
                p.name,
                p.rows,
                p.entries.len() / p.cols
            ),
        ));
    }
    let eta = eta.ok_or_else(|| Error::parse(1, 1, "missing `eta:` line"))?;
    let file = ProblemFile {
        eta,
        kind,
        matrices,
    };
    check_problem(&file)?;
    Ok(file)
}

/// Symmetry of `A` and, when the kind and all four coefficients are present,
/// mutual consistency of their shapes.
fn check_problem(file: &ProblemFile) -> Result<()> {
    if let Some(a) = file.get("A") {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        if !a.is_eta_hermitian_unchecked(file.eta) {
            return Err(Error::NotEtaHermitian("A".into()));
        }
    }
    if let (Some(kind), Ok((a, b, c, d))) = (file.kind, file.coefficients()) {
        let kind = match kind {
            ProblemKind::Decompose => EquationKind::Herm,
            ProblemKind::Equation(k) => k,
        };
        validate(kind, a, b, c, d, file.eta)?;
    }
    Ok(())
}

/// Reads a problem file from a stream.
pub fn parse_matrix_file(mut reader: impl Read) -> Result<ProblemFile> {
    let mut text = String::new();
    reader
        .read_to_string(&mut text)
        .map_err(|e| Error::parse(0, 0, format!("read failed: {e}")))?;
    parse_problem(&text)
}
