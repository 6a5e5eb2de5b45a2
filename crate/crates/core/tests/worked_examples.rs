use std::path::PathBuf;

use etaherm::io::{parse_problem, ProblemFile};
use etaherm::solvers::{
    check_herm, check_mixed, oracle_solvable, residual, solve_herm, solve_mixed,
};
use etaherm::{simultaneous_decompose, EquationKind, EtaAxis, FreeParams, Solution};

fn load(name: &str) -> ProblemFile {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name);
    parse_problem(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn herm_example_rank_table() {
    let f = load("herm_example.txt");
    assert_eq!(f.eta, EtaAxis::J);
    let (a, b, c, d) = f.coefficients().unwrap();
    let report = check_herm(a, b, c, d, f.eta).unwrap();
    assert!(report.overall);
    assert_eq!(report.ranks(), vec![(2, 2), (3, 3), (3, 3), (3, 3), (6, 6)]);
}

#[test]
fn herm_example_printed_solution_is_exact() {
    let f = load("herm_example.txt");
    let (a, b, c, d) = f.coefficients().unwrap();
    let sol = Solution::Herm {
        x: f.require("X").unwrap().clone(),
        y: f.require("Y").unwrap().clone(),
        z: f.require("Z").unwrap().clone(),
    };
    assert!(sol.symmetry_holds(f.eta));
    assert!(residual(a, b, c, d, &sol, f.eta).unwrap().is_zero());
}

#[test]
fn herm_example_is_solved() {
    let f = load("herm_example.txt");
    let (a, b, c, d) = f.coefficients().unwrap();
    assert!(oracle_solvable(EquationKind::Herm, a, b, c, d, f.eta).unwrap());
    for free in [FreeParams::Zero, FreeParams::Seed(1)] {
        let out = solve_herm(a, b, c, d, f.eta, &free).unwrap();
        let sol = out.solution().unwrap();
        assert!(sol.symmetry_holds(f.eta));
        assert!(residual(a, b, c, d, sol, f.eta).unwrap().is_zero());
    }
    let dec = simultaneous_decompose(a, b, c, d, f.eta).unwrap();
    dec.verify(a, b, c, d).unwrap();
}

#[test]
fn mixed_example_rank_table_and_printed_solution() {
    let f = load("mixed_example.txt");
    assert_eq!(f.eta, EtaAxis::I);
    let (a, b, c, d) = f.coefficients().unwrap();
    let report = check_mixed(a, b, c, d, f.eta).unwrap();
    assert_eq!(report.ranks(), vec![(2, 2), (3, 3), (4, 4), (4, 4), (8, 8)]);
    let sol = Solution::Mixed {
        x: f.require("X").unwrap().clone(),
        y: f.require("Y").unwrap().clone(),
    };
    assert!(sol.symmetry_holds(f.eta));
    assert!(residual(a, b, c, d, &sol, f.eta).unwrap().is_zero());
    let out = solve_mixed(a, b, c, d, f.eta, &FreeParams::Seed(7)).unwrap();
    assert!(residual(a, b, c, d, out.solution().unwrap(), f.eta)
        .unwrap()
        .is_zero());
    assert!(oracle_solvable(EquationKind::Mixed, a, b, c, d, f.eta).unwrap());
}
