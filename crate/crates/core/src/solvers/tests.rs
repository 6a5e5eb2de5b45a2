use std::collections::BTreeMap;

use super::*;
use crate::scalar::Quaternion;
use crate::simdec::simultaneous_decompose;

fn solve(
    kind: EquationKind,
    a: &QMatrix,
    b: &QMatrix,
    c: &QMatrix,
    d: &QMatrix,
    eta: EtaAxis,
    free: &FreeParams,
) -> SolveOutcome {
    match kind {
        EquationKind::Herm => solve_herm(a, b, c, d, eta, free),
        EquationKind::Mixed => solve_mixed(a, b, c, d, eta, free),
    }
    .unwrap()
}

fn check(
    kind: EquationKind,
    a: &QMatrix,
    b: &QMatrix,
    c: &QMatrix,
    d: &QMatrix,
    eta: EtaAxis,
) -> bool {
    match kind {
        EquationKind::Herm => check_herm(a, b, c, d, eta),
        EquationKind::Mixed => check_mixed(a, b, c, d, eta),
    }
    .unwrap()
    .overall
}

const SHAPES: [(usize, usize, usize, usize); 6] = [
    (1, 1, 1, 1),
    (2, 1, 2, 1),
    (3, 2, 2, 2),
    (3, 1, 3, 2),
    (4, 2, 3, 2),
    (2, 3, 1, 2),
];

#[test]
fn planted_instances_are_solved_with_zero_and_seeded_parameters() {
    for kind in [EquationKind::Herm, EquationKind::Mixed] {
        for seed in 0..24 {
            let (m, p1, p2, p3) = SHAPES[seed as usize % SHAPES.len()];
            let inst = gen_instance(kind, m, p1, p2, p3, seed);
            assert!(
                check(kind, &inst.a, &inst.b, &inst.c, &inst.d, inst.eta),
                "{kind} seed {seed}"
            );
            for free in [FreeParams::Zero, FreeParams::Seed(seed + 100)] {
                let out = solve(kind, &inst.a, &inst.b, &inst.c, &inst.d, inst.eta, &free);
                let sol = out.solution().expect("planted instance is solvable");
                assert!(residual(&inst.a, &inst.b, &inst.c, &inst.d, sol, inst.eta)
                    .unwrap()
                    .is_zero());
                assert!(sol.symmetry_holds(inst.eta));
            }
        }
    }
}

#[test]
fn three_deciders_agree_on_random_right_hand_sides() {
    for kind in [EquationKind::Herm, EquationKind::Mixed] {
        for seed in 0..18 {
            let (m, p1, p2, p3) = SHAPES[seed as usize % SHAPES.len()];
            let eta = EtaAxis::ALL[seed as usize % 3];
            let (a, b, c, d) = random_instance(kind, m, p1, p2, p3, seed, eta);
            let by_rank = check(kind, &a, &b, &c, &d, eta);
            let by_oracle = oracle_solvable(kind, &a, &b, &c, &d, eta).unwrap();
            let cc = match kind {
                EquationKind::Herm => c.clone(),
                EquationKind::Mixed => c.eta_conj_transpose(eta),
            };
            let dec = simultaneous_decompose(&a, &b, &cc, &d, eta).unwrap();
            let by_blocks = match kind {
                EquationKind::Herm => check_herm_canonical(&dec),
                EquationKind::Mixed => check_mixed_canonical(&dec),
            }
            .all_hold();
            assert_eq!(by_rank, by_oracle, "{kind} seed {seed}");
            assert_eq!(by_rank, by_blocks, "{kind} seed {seed}");
            assert_eq!(
                solve(kind, &a, &b, &c, &d, eta, &FreeParams::Zero).is_solution(),
                by_rank
            );
        }
    }
}

#[test]
fn herm_coupling_block_absorbs_free_diagonal_blocks() {
    let inst = gen_instance(EquationKind::Herm, 3, 2, 2, 2, 5);
    let dec = simultaneous_decompose(&inst.a, &inst.b, &inst.c, &inst.d, inst.eta).unwrap();
    let hats = herm::herm_hats(&dec, &FreeParams::Seed(9)).unwrap();
    let x11 = hats.x_part.block(&hats.x_part, &hats.x, 0, 0);
    let y44 = hats.y_part.block(&hats.y_part, &hats.y, 3, 3);
    let z55 = hats.z_part.block(&hats.z_part, &hats.z, 4, 4);
    assert_eq!(x11.add(&y44).unwrap().add(&z55).unwrap(), dec.block(1, 1));
}

#[test]
fn mixed_hat_blocks_have_expected_shapes() {
    let inst = gen_instance(EquationKind::Mixed, 3, 2, 2, 2, 4);
    let cc = inst.c.eta_conj_transpose(inst.eta);
    let dec = simultaneous_decompose(&inst.a, &inst.b, &cc, &inst.d, inst.eta).unwrap();
    let hats = mixed::mixed_hats(&dec, &FreeParams::Zero).unwrap();
    assert_eq!(hats.x.shape(), (hats.x_rows.total(), hats.x_cols.total()));
    assert_eq!(hats.y.shape(), (hats.y_part.total(), hats.y_part.total()));
    assert!(hats.y.is_eta_hermitian_unchecked(inst.eta));
}

#[test]
fn explicit_free_blocks_are_validated() {
    let inst = gen_instance(EquationKind::Herm, 2, 2, 2, 2, 0);
    let mut map = BTreeMap::new();
    map.insert("W99".to_string(), QMatrix::zeros(0, 0));
    let err = solve_herm(
        &inst.a,
        &inst.b,
        &inst.c,
        &inst.d,
        inst.eta,
        &FreeParams::Explicit(map),
    );
    assert!(matches!(err, Err(Error::InvalidFreeParams(_))));
}

#[test]
fn free_params_parse() {
    assert_eq!("zero".parse::<FreeParams>().unwrap(), FreeParams::Zero);
    assert_eq!(
        "seed:17".parse::<FreeParams>().unwrap(),
        FreeParams::Seed(17)
    );
    assert!("seed:x".parse::<FreeParams>().is_err());
    assert_eq!(FreeParams::Seed(3).to_string(), "seed:3");
}

#[test]
fn validate_rejects_bad_shapes_and_asymmetric_a() {
    let a = QMatrix::identity(2);
    let b = QMatrix::zeros(2, 1);
    assert!(validate(
        EquationKind::Herm,
        &a,
        &b,
        &QMatrix::zeros(3, 1),
        &b,
        EtaAxis::I
    )
    .is_err());
    assert!(validate(
        EquationKind::Mixed,
        &a,
        &b,
        &QMatrix::zeros(1, 2),
        &b,
        EtaAxis::I
    )
    .is_ok());
    let mut skew = QMatrix::zeros(2, 2);
    skew[(0, 1)] = Quaternion::one();
    assert!(matches!(
        validate(EquationKind::Herm, &skew, &b, &b, &b, EtaAxis::I),
        Err(Error::NotEtaHermitian(_))
    ));
}

#[test]
fn zero_right_hand_side_is_always_solvable() {
    let z = QMatrix::zeros(2, 2);
    let b = QMatrix::identity(2);
    for kind in [EquationKind::Herm, EquationKind::Mixed] {
        assert!(oracle_solvable(kind, &z, &b, &b, &b, EtaAxis::J).unwrap());
        assert!(solve(kind, &z, &b, &b, &b, EtaAxis::J, &FreeParams::Zero).is_solution());
    }
}

#[test]
fn nonzero_a_with_zero_coefficients_is_unsolvable() {
    let a = QMatrix::identity(2);
    let z = QMatrix::zeros(2, 1);
    let zc = QMatrix::zeros(1, 2);
    assert!(!check_herm(&a, &z, &z, &z, EtaAxis::K).unwrap().overall);
    assert!(!oracle_solvable(EquationKind::Mixed, &a, &z, &zc, &z, EtaAxis::K).unwrap());
    assert!(!solve_mixed(&a, &z, &zc, &z, EtaAxis::K, &FreeParams::Zero)
        .unwrap()
        .is_solution());
}
