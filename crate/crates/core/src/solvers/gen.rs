//! Deterministic random instances with small rational entries.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::QMatrix;
use crate::scalar::{rat, EtaAxis, Quaternion};

use super::{residual, EquationKind, Solution};

fn random_coefficient<R: Rng>(rng: &mut R) -> crate::scalar::Rational {
    if rng.gen_bool(0.3) {
        return rat(0, 1);
    }
    rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

fn random_quaternion<R: Rng>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        random_coefficient(rng),
        random_coefficient(rng),
        random_coefficient(rng),
        random_coefficient(rng),
    )
}

/// Each entry is zero with probability `sparsity`, otherwise a quaternion
/// whose coefficients are each zero with probability 0.3 and `p/q` with `|p| ≤ 3`,
/// `1 ≤ q ≤ 3` otherwise.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, sparsity: f64) -> QMatrix {
    QMatrix::from_fn(rows, cols, |_, _| {
        if sparsity > 0.0 && rng.gen_bool(sparsity) {
            Quaternion::zero()
        } else {
            random_quaternion(rng)
        }
    })
}

/// `M + M^η*` or, with `skew`, `M − M^η*`.
pub fn random_with_symmetry<R: Rng>(rng: &mut R, n: usize, eta: EtaAxis, skew: bool) -> QMatrix {
    let m = random_matrix(rng, n, n, 0.3);
    let mh = m.eta_conj_transpose(eta);
    if skew {
        m.sub(&mh).expect("square")
    } else {
        m.add(&mh).expect("square")
    }
}

/// Columns drawn as sparse combinations of a random subset of the columns
/// of `pool`; the subset size caps the rank.
fn pooled_columns<R: Rng>(rng: &mut R, pool: &QMatrix, cols: usize) -> QMatrix {
    let most = pool.cols().min(cols);
    let keep = if most == 0 || rng.gen_bool(0.05) {
        0
    } else {
        rng.gen_range(1..=most)
    };
    let mut chosen: Vec<usize> = (0..pool.cols()).collect();
    for i in (1..chosen.len()).rev() {
        chosen.swap(i, rng.gen_range(0..=i));
    }
    let mut coeffs = QMatrix::zeros(pool.cols(), cols);
    let sub = random_matrix(rng, keep, cols, 0.3);
    for (r, &s) in chosen.iter().take(keep).enumerate() {
        for t in 0..cols {
            coeffs[(s, t)] = sub[(r, t)].clone();
        }
    }
    pool.mul(&coeffs).expect("conformable")
}

/// Unit lower triangular times upper triangular with nonzero diagonal.
fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> QMatrix {
    let mut lower = random_matrix(rng, n, n, 0.6);
    let mut upper = random_matrix(rng, n, n, 0.6);
    for s in 0..n {
        for t in 0..n {
            if t > s {
                lower[(s, t)] = Quaternion::zero();
            } else if t < s {
                upper[(s, t)] = Quaternion::zero();
            }
        }
        lower[(s, s)] = Quaternion::one();
        while upper[(s, s)].is_zero() {
            upper[(s, s)] = random_quaternion(rng);
        }
    }
    lower.mul(&upper).expect("square")
}

/// `(B, C, D)` with random group sizes: the canonical patterns for those
/// sizes, mixed by random invertible transforms on both sides.
fn structured_coefficients<R: Rng>(
    rng: &mut R,
    m: usize,
    p1: usize,
    p2: usize,
    p3: usize,
) -> (QMatrix, QMatrix, QMatrix) {
    // per group: contribution to r(B), r(C), r(D) and to the row count
    const USES: [(usize, usize, usize, usize); 8] = [
        (1, 1, 1, 1),
        (1, 1, 0, 1),
        (1, 0, 1, 1),
        (1, 1, 1, 2),
        (1, 0, 0, 1),
        (0, 1, 1, 1),
        (0, 1, 0, 1),
        (0, 0, 1, 1),
    ];
    let mut groups = [0usize; 8];
    let (mut rb, mut rc, mut rd, mut rows) = (0, 0, 0, 0);
    for step in 0..rng.gen_range(1..=m + 1) {
        // the paired group needs every budget at once, so try it first sometimes
        let g = if step == 0 && rng.gen_bool(0.3) {
            3
        } else {
            rng.gen_range(0..8)
        };
        let (ub, uc, ud, ur) = USES[g];
        if rb + ub <= p1 && rc + uc <= p2 && rd + ud <= p3 && rows + ur <= m {
            groups[g] += 1;
            rb += ub;
            rc += uc;
            rd += ud;
            rows += ur;
        }
    }
    let part = crate::canon3::row_groups(&groups, &[m - rows]);
    let p = random_invertible(rng, m);
    let mut side = |pattern: QMatrix, cols: usize| {
        p.mul(&pattern)
            .and_then(|x| x.mul(&random_invertible(rng, cols)))
            .expect("conformable")
    };
    let b = side(crate::canon3::pattern_b(&groups, &part, p1), p1);
    let c = side(crate::canon3::pattern_c(&groups, &part, p2), p2);
    let d = side(crate::canon3::pattern_d(&groups, &part, p3), p3);
    (b, c, d)
}

/// A coefficient tuple `(B, C, D)` sized for `kind`; for `mixed`, `C` is `p2 x m`.
///
/// All three draw from one pool of columns, each from its own subset, so
/// their column spaces overlap in varied ways. Half the time `D` is built
/// instead from sums of a column of `B` and a column of `C`.
fn random_coefficients<R: Rng>(
    rng: &mut R,
    kind: EquationKind,
    m: usize,
    p1: usize,
    p2: usize,
    p3: usize,
    eta: EtaAxis,
) -> (QMatrix, QMatrix, QMatrix) {
    let (b, c, d) = if rng.gen_bool(0.5) {
        structured_coefficients(rng, m, p1, p2, p3)
    } else {
        pooled_coefficients(rng, m, p1, p2, p3)
    };
    let c = match kind {
        EquationKind::Herm => c,
        EquationKind::Mixed => c.eta_conj_transpose(eta),
    };
    (b, c, d)
}

fn pooled_coefficients<R: Rng>(
    rng: &mut R,
    m: usize,
    p1: usize,
    p2: usize,
    p3: usize,
) -> (QMatrix, QMatrix, QMatrix) {
    let pool_size = rng.gen_range(1..=m.max(1) + 1);
    let pool = random_matrix(rng, m, pool_size, 0.2);
    let b = pooled_columns(rng, &pool, p1);
    let c = pooled_columns(rng, &pool, p2);
    let d = if p1 > 0 && p2 > 0 && rng.gen_bool(0.5) {
        let sums = QMatrix::hstack(
            &(0..rng.gen_range(1..=2))
                .map(|_| {
                    let (u, v) = (rng.gen_range(0..p1), rng.gen_range(0..p2));
                    let (qu, qv) = (random_quaternion(rng), random_quaternion(rng));
                    b.col(u)
                        .scale_right(&qu)
                        .add(&c.col(v).scale_right(&qv))
                        .expect("same height")
                })
                .collect::<Vec<_>>()
                .iter()
                .collect::<Vec<_>>(),
        )
        .expect("same height");
        pooled_columns(rng, &sums, p3)
    } else {
        pooled_columns(rng, &pool, p3)
    };
    (b, c, d)
}

/// A generated problem together with the solution it was built from.
#[derive(Clone, Debug)]
pub struct Instance {
    pub kind: EquationKind,
    pub eta: EtaAxis,
    pub a: QMatrix,
    pub b: QMatrix,
    pub c: QMatrix,
    pub d: QMatrix,
    pub planted: Solution,
}

/// A solvable instance: random coefficients and a random solution, with
/// `A` set to the left-hand side. The axis is chosen from the seed.
pub fn gen_instance(
    kind: EquationKind,
    m: usize,
    p1: usize,
    p2: usize,
    p3: usize,
    seed: u64,
) -> Instance {
    gen_instance_with_eta(kind, m, p1, p2, p3, seed, EtaAxis::ALL[(seed % 3) as usize])
}

pub fn gen_instance_with_eta(
    kind: EquationKind,
    m: usize,
    p1: usize,
    p2: usize,
    p3: usize,
    seed: u64,
    eta: EtaAxis,
) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (b, c, d) = random_coefficients(&mut rng, kind, m, p1, p2, p3, eta);
    let planted = match kind {
        EquationKind::Herm => Solution::Herm {
            x: random_with_symmetry(&mut rng, p1, eta, false),
            y: random_with_symmetry(&mut rng, p2, eta, false),
            z: random_with_symmetry(&mut rng, p3, eta, false),
        },
        EquationKind::Mixed => Solution::Mixed {
            x: random_matrix(&mut rng, p1, p2, 0.3),
            y: random_with_symmetry(&mut rng, p3, eta, false),
        },
    };
    let zero = QMatrix::zeros(m, m);
    let a = residual(&zero, &b, &c, &d, &planted, eta)
        .expect("generated shapes are conformable")
        .neg();
    Instance {
        kind,
        eta,
        a,
        b,
        c,
        d,
        planted,
    }
}

/// Random coefficients with an unrelated random η-Hermitian `A`; usually,
/// but not always, unsolvable.
pub fn random_instance(
    kind: EquationKind,
    m: usize,
    p1: usize,
    p2: usize,
    p3: usize,
    seed: u64,
    eta: EtaAxis,
) -> (QMatrix, QMatrix, QMatrix, QMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (b, c, d) = random_coefficients(&mut rng, kind, m, p1, p2, p3, eta);
    let a = random_with_symmetry(&mut rng, m, eta, false);
    (a, b, c, d)
}
