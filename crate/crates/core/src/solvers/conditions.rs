use crate::elim::rank;
use crate::error::Result;
use crate::matrix::QMatrix;
use crate::scalar::EtaAxis;
use crate::simdec::SimDecomposition;

use super::{validate, EquationKind};

/// One rank identity `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub label: String,
    pub lhs_rank: usize,
    pub rhs_rank: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub conditions: Vec<Condition>,
    pub overall: bool,
}

impl ConditionReport {
    fn new(items: Vec<(&str, usize, usize)>) -> Self {
        let conditions: Vec<Condition> = items
            .into_iter()
            .map(|(label, lhs, rhs)| Condition {
                label: label.to_string(),
                lhs_rank: lhs,
                rhs_rank: rhs,
                holds: lhs == rhs,
            })
            .collect();
        let overall = conditions.iter().all(|c| c.holds);
        ConditionReport {
            conditions,
            overall,
        }
    }

    /// `(lhs, rhs)` for each condition, in order.
    pub fn ranks(&self) -> Vec<(usize, usize)> {
        self.conditions
            .iter()
            .map(|c| (c.lhs_rank, c.rhs_rank))
            .collect()
    }
}

/// Named boolean checks on the blocks of `S_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalCheck {
    pub checks: Vec<(String, bool)>,
}

impl CanonicalCheck {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn get(&self, label: &str) -> Option<bool> {
        self.checks
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, ok)| *ok)
    }
}

fn grid_rank(grid: Vec<Vec<QMatrix>>) -> Result<usize> {
    Ok(rank(&QMatrix::from_block_rows(&grid)?))
}

fn hrank(parts: &[&QMatrix]) -> Result<usize> {
    Ok(rank(&QMatrix::hstack(parts)?))
}

/// `r([[A, X, Y], [Z^η*, 0, 0]])`.
fn bordered(a: &QMatrix, x: &QMatrix, y: &QMatrix, below: &QMatrix) -> Result<usize> {
    let z = QMatrix::zeros;
    grid_rank(vec![
        vec![a.clone(), x.clone(), y.clone()],
        vec![
            below.clone(),
            z(below.rows(), x.cols()),
            z(below.rows(), y.cols()),
        ],
    ])
}

/// Rank identities characterizing η-Hermitian solvability of the `herm` equation.
pub fn check_herm(
    a: &QMatrix,
    b: &QMatrix,
    c: &QMatrix,
    d: &QMatrix,
    eta: EtaAxis,
) -> Result<ConditionReport> {
    validate(EquationKind::Herm, a, b, c, d, eta)?;
    let m = a.rows();
    let (p1, p2, p3) = (b.cols(), c.cols(), d.cols());
    let e = |x: &QMatrix| x.eta_conj_transpose(eta);
    let z = QMatrix::zeros;

    let big = grid_rank(vec![
        vec![z(p3, p3), e(d), e(d), z(p3, p2), z(p3, p1)],
        vec![d.clone(), a.neg(), z(m, m), z(m, p2), b.clone()],
        vec![d.clone(), z(m, m), a.clone(), c.clone(), z(m, p1)],
        vec![z(p2, p3), e(c), z(p2, m), z(p2, p2), z(p2, p1)],
        vec![z(p1, p3), z(p1, m), e(b), z(p1, p2), z(p1, p1)],
    ])?;
    let stacked = crate::canon3::stacked_rank(b, c, d)?;

    Ok(ConditionReport::new(vec![
        (
            "r(A,B,C,D) = r(B,C,D)",
            hrank(&[a, b, c, d])?,
            hrank(&[b, c, d])?,
        ),
        (
            "r[A B C; D^η* 0 0] = r(B,C) + r(D)",
            bordered(a, b, c, &e(d))?,
            hrank(&[b, c])? + rank(d),
        ),
        (
            "r[A B D; C^η* 0 0] = r(B,D) + r(C)",
            bordered(a, b, d, &e(c))?,
            hrank(&[b, d])? + rank(c),
        ),
        (
            "r[A C D; B^η* 0 0] = r(C,D) + r(B)",
            bordered(a, c, d, &e(b))?,
            hrank(&[c, d])? + rank(b),
        ),
        ("r(5x5 block) = 2 r[D B 0; D 0 C]", big, 2 * stacked),
    ]))
}

/// Rank identities characterizing solvability of the `mixed` equation;
/// `c` is `p2 x m`.
pub fn check_mixed(
    a: &QMatrix,
    b: &QMatrix,
    c: &QMatrix,
    d: &QMatrix,
    eta: EtaAxis,
) -> Result<ConditionReport> {
    validate(EquationKind::Mixed, a, b, c, d, eta)?;
    let m = a.rows();
    let (p1, p2, p3) = (b.cols(), c.rows(), d.cols());
    let e = |x: &QMatrix| x.eta_conj_transpose(eta);
    let z = QMatrix::zeros;
    let ce = e(c);

    let big = grid_rank(vec![
        vec![a.clone(), z(m, m), b.clone(), z(m, p2), d.clone()],
        vec![z(m, m), a.neg(), z(m, p1), ce.clone(), d.clone()],
        vec![e(b), z(p1, m), z(p1, p1), z(p1, p2), z(p1, p3)],
        vec![z(p2, m), c.clone(), z(p2, p1), z(p2, p2), z(p2, p3)],
        vec![e(d), e(d), z(p3, p1), z(p3, p2), z(p3, p3)],
    ])?;
    let rhs_big = grid_rank(vec![
        vec![b.clone(), z(m, p2), d.clone()],
        vec![z(m, p1), ce.clone(), d.clone()],
    ])?;

    Ok(ConditionReport::new(vec![
        (
            "r(A,B,C^η*,D) = r(B,C^η*,D)",
            hrank(&[a, b, &ce, d])?,
            hrank(&[b, &ce, d])?,
        ),
        (
            "r[A B C^η*; D^η* 0 0] = r(B,C^η*) + r(D)",
            bordered(a, b, &ce, &e(d))?,
            hrank(&[b, &ce])? + rank(d),
        ),
        (
            "r[A B D; B^η* 0 0] = r(B,D) + r(B)",
            bordered(a, b, d, &e(b))?,
            hrank(&[b, d])? + rank(b),
        ),
        (
            "r[A C^η* D; C 0 0] = r(C^η*,D) + r(C)",
            bordered(a, &ce, d, c)?,
            hrank(&[&ce, d])? + rank(c),
        ),
        ("r(5x5 block) = 2 r[B 0 D; 0 C^η* D]", big, 2 * rhs_big),
    ]))
}

fn common_checks(dec: &SimDecomposition, checks: &mut Vec<(String, bool)>) {
    checks.push(("Σ = 0".into(), dec.sizes.sigma_rank == 0));
    let coupling_zero = (1..=9).all(|s| dec.block(s, 10).is_zero());
    checks.push(("A_{s,10} = 0".into(), coupling_zero));
}

fn zero_blocks(
    dec: &SimDecomposition,
    blocks: &[(usize, usize)],
    checks: &mut Vec<(String, bool)>,
) {
    for &(s, t) in blocks {
        checks.push((format!("A{s}{t} = 0"), dec.block(s, t).is_zero()));
    }
}

/// Block conditions on a decomposition of `(A, B, C, D)` equivalent to
/// [`check_herm`] holding.
pub fn check_herm_canonical(dec: &SimDecomposition) -> CanonicalCheck {
    let mut checks = Vec::new();
    common_checks(dec, &mut checks);
    checks.push(("A49 = A69".into(), dec.block(4, 9) == dec.block(6, 9)));
    checks.push((
        "A46 η-Hermitian".into(),
        dec.block(4, 6).is_eta_hermitian_unchecked(dec.eta),
    ));
    zero_blocks(
        dec,
        &[
            (2, 9),
            (3, 8),
            (4, 8),
            (5, 6),
            (5, 7),
            (5, 8),
            (5, 9),
            (8, 9),
        ],
        &mut checks,
    );
    CanonicalCheck { checks }
}

/// Block conditions on a decomposition of `(A, B, C^η*, D)` equivalent to
/// [`check_mixed`] holding.
pub fn check_mixed_canonical(dec: &SimDecomposition) -> CanonicalCheck {
    let mut checks = Vec::new();
    common_checks(dec, &mut checks);
    checks.push(("A44 = A66".into(), dec.block(4, 4) == dec.block(6, 6)));
    checks.push(("A49 = A69".into(), dec.block(4, 9) == dec.block(6, 9)));
    zero_blocks(
        dec,
        &[
            (2, 9),
            (5, 9),
            (8, 9),
            (6, 8),
            (7, 8),
            (8, 8),
            (3, 5),
            (4, 5),
            (5, 5),
        ],
        &mut checks,
    );
    CanonicalCheck { checks }
}
