//! End-to-end acceptance checks, one PASS/FAIL line per criterion.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use etaherm::canon3::lemma1_sizes;
use etaherm::elim::{rank, real_expansion};
use etaherm::etadiag::eta_congruence_diagonalize;
use etaherm::simdec::{size_system_rhs, solve_size_system, SIZE_SYSTEM};
use etaherm::solvers::{
    check_herm, check_herm_canonical, check_mixed, check_mixed_canonical, gen_instance,
    oracle_solvable, random_instance, random_matrix, random_with_symmetry, residual, solve_herm,
    solve_mixed,
};
use etaherm::{
    block_sizes, simultaneous_decompose, EquationKind, EtaAxis, FreeParams, QMatrix, Quaternion,
};

type Outcome = Result<String, String>;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn cli(args: &[&str]) -> Result<(i32, Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_etaherm"))
        .args(args)
        .arg("--json")
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout)
        .map_err(|e| format!("{e}; stderr: {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok((code, v))
}

fn ranks(v: &Value) -> Vec<(u64, u64, bool)> {
    v["conditions"]
        .as_array()
        .map(|a| {
            a.iter()
                .map(|c| {
                    (
                        c["lhs"].as_u64().unwrap(),
                        c["rhs"].as_u64().unwrap(),
                        c["holds"].as_bool().unwrap(),
                    )
                })
                .collect()
        })
        .unwrap_or_default()
}

fn expect_ranks(v: &Value, want: &[u64]) -> Result<(), String> {
    let got = ranks(v);
    let ok = got.len() == want.len()
        && got
            .iter()
            .zip(want)
            .all(|(&(l, r, h), &w)| l == w && r == w && h);
    if ok {
        Ok(())
    } else {
        Err(format!("ranks {got:?}, expected both sides {want:?}"))
    }
}

fn verify_ok(v: &Value) -> Result<(), String> {
    let herm_ok = v["eta_hermitian"]
        .as_object()
        .is_some_and(|m| m.values().all(|h| h == true));
    if v["residual_zero"] == true && herm_ok && v["ok"] == true {
        Ok(())
    } else {
        Err(format!("verify reported {v}"))
    }
}

fn herm_ranks() -> Outcome {
    let start = Instant::now();
    let (code, v) = cli(&[
        "check",
        "--eq",
        "herm",
        data("herm_example.txt").to_str().unwrap(),
    ])?;
    let elapsed = start.elapsed();
    expect_ranks(&v, &[2, 3, 3, 3, 6])?;
    if code != 0 || v["eta"] != "j" {
        return Err(format!("exit {code}, eta {}", v["eta"]));
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "(2,3,3,3,6) both sides in {} ms",
        elapsed.as_millis()
    ))
}

fn herm_printed_solution() -> Outcome {
    let (code, v) = cli(&[
        "verify",
        "--eq",
        "herm",
        data("herm_example.txt").to_str().unwrap(),
    ])?;
    verify_ok(&v)?;
    if code != 0 {
        return Err(format!("exit {code}"));
    }
    Ok("printed X, Y, Z: zero residual, each j-Hermitian".into())
}

fn herm_solve() -> Outcome {
    let file = data("herm_example.txt");
    for free in ["zero", "seed:1", "seed:2"] {
        let (code, v) = cli(&[
            "solve",
            "--eq",
            "herm",
            "--free",
            free,
            file.to_str().unwrap(),
        ])?;
        if code != 0 || v["solvable"] != true || v["residual_zero"] != true {
            return Err(format!("--free {free}: exit {code}, {v}"));
        }
        // re-check the emitted solution independently of the solver
        let f = etaherm::io::parse_problem(&std::fs::read_to_string(&file).unwrap())
            .map_err(|e| e.to_string())?;
        let (a, b, c, d) = f.coefficients().map_err(|e| e.to_string())?;
        let m = |n: &str| etaherm::io::matrix_from_json(&v["solution"][n]).unwrap();
        let sol = etaherm::Solution::Herm {
            x: m("X"),
            y: m("Y"),
            z: m("Z"),
        };
        if !sol.symmetry_holds(f.eta) || !residual(a, b, c, d, &sol, f.eta).unwrap().is_zero() {
            return Err(format!("--free {free}: emitted solution fails re-check"));
        }
    }
    Ok("solutions for three free-parameter choices re-check exactly".into())
}

fn mixed_example() -> Outcome {
    let file = data("mixed_example.txt");
    let (code, v) = cli(&["check", "--eq", "mixed", file.to_str().unwrap()])?;
    expect_ranks(&v, &[2, 3, 4, 4, 8])?;
    if code != 0 || v["eta"] != "i" {
        return Err(format!("exit {code}"));
    }
    let (code, v) = cli(&["verify", "--eq", "mixed", file.to_str().unwrap()])?;
    verify_ok(&v)?;
    if code != 0 || v["eta_hermitian"]["Y"] != true {
        return Err(format!("exit {code}"));
    }
    Ok("(2,3,4,4,8) both sides; printed X, Y: zero residual, Y i-Hermitian".into())
}

/// Shapes with `m ≤ 5` and `p1, p2, p3 ≤ 5`, and a planted or fully random `A`.
fn corpus_instance(seed: u64) -> (EtaAxis, QMatrix, QMatrix, QMatrix, QMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let (m, p1, p2, p3) = (
        rng.gen_range(1..=5),
        rng.gen_range(0..=5),
        rng.gen_range(0..=5),
        rng.gen_range(0..=5),
    );
    if seed.is_multiple_of(2) {
        let i = gen_instance(EquationKind::Herm, m, p1, p2, p3, seed);
        (i.eta, i.a, i.b, i.c, i.d)
    } else {
        let eta = EtaAxis::ALL[(seed / 2 % 3) as usize];
        let (a, b, c, d) = random_instance(EquationKind::Herm, m, p1, p2, p3, seed, eta);
        (eta, a, b, c, d)
    }
}

const CORPUS: u64 = 240;

fn decomposition_round_trip() -> Outcome {
    let start = Instant::now();
    let failures: Vec<String> = (0..CORPUS)
        .into_par_iter()
        .filter_map(|seed| {
            let (eta, a, b, c, d) = corpus_instance(seed);
            let run = || -> Result<(), String> {
                let dec = simultaneous_decompose(&a, &b, &c, &d, eta).map_err(|e| e.to_string())?;
                dec.verify(&a, &b, &c, &d).map_err(|e| e.to_string())?;
                let sizes = block_sizes(&a, &b, &c, &d, eta).map_err(|e| e.to_string())?;
                if dec.sizes != sizes {
                    return Err(format!(
                        "constructive sizes {:?} vs formula {:?}",
                        dec.sizes, sizes
                    ));
                }
                Ok(())
            };
            run().err().map(|e| format!("seed {seed}: {e}"))
        })
        .collect();
    let elapsed = start.elapsed();
    if let Some(first) = failures.first() {
        return Err(format!("{} of {CORPUS} failed; {first}", failures.len()));
    }
    if elapsed >= Duration::from_secs(300) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{CORPUS} instances, four products, patterns and sizes exact in {:.1} s",
        elapsed.as_secs_f64()
    ))
}

fn size_formulas() -> Outcome {
    let failures: Vec<String> = (0..CORPUS)
        .into_par_iter()
        .filter_map(|seed| {
            let (eta, a, b, c, d) = corpus_instance(seed);
            let groups = block_sizes(&a, &b, &c, &d, eta).unwrap().groups();
            let lemma = lemma1_sizes(&b, &c, &d).unwrap();
            if lemma.groups() != groups {
                return Some(format!(
                    "seed {seed}: mapping {:?} vs {groups:?}",
                    lemma.groups()
                ));
            }
            let rhs = size_system_rhs(&b, &c, &d).unwrap();
            for (row, r) in SIZE_SYSTEM.iter().zip(rhs) {
                let lhs: i64 = row.iter().zip(groups).map(|(k, x)| k * x as i64).sum();
                if lhs != r as i64 {
                    return Some(format!(
                        "seed {seed}: size system row {row:?} gives {lhs}, rank {r}"
                    ));
                }
            }
            if solve_size_system(&rhs) != Some(groups) {
                return Some(format!(
                    "seed {seed}: size system does not recover {groups:?}"
                ));
            }
            None
        })
        .collect();
    match failures.first() {
        Some(first) => Err(format!("{} of {CORPUS} failed; {first}", failures.len())),
        None => Ok(format!(
            "{CORPUS} instances, size mapping and 8x8 system exact"
        )),
    }
}

fn equivalence_for(kind: EquationKind) -> Result<(usize, usize), String> {
    let results: Vec<Result<bool, String>> = (0..CORPUS)
        .into_par_iter()
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xe9);
            let (m, p1, p2, p3) = (rng.gen_range(1..=4), rng.gen_range(0..=4), rng.gen_range(0..=4), rng.gen_range(0..=4));
            let (eta, a, b, c, d) = if seed.is_multiple_of(2) {
                let i = gen_instance(kind, m, p1, p2, p3, seed);
                (i.eta, i.a, i.b, i.c, i.d)
            } else {
                let eta = EtaAxis::ALL[(seed / 2 % 3) as usize];
                let (a, b, c, d) = random_instance(kind, m, p1, p2, p3, seed, eta);
                (eta, a, b, c, d)
            };
            let e = |x: etaherm::Error| format!("seed {seed}: {x}");
            let (by_rank, by_blocks, solved) = match kind {
                EquationKind::Herm => (
                    check_herm(&a, &b, &c, &d, eta).map_err(e)?.overall,
                    check_herm_canonical(&simultaneous_decompose(&a, &b, &c, &d, eta).map_err(e)?).all_hold(),
                    solve_herm(&a, &b, &c, &d, eta, &FreeParams::Seed(seed)).map_err(e)?.is_solution(),
                ),
                EquationKind::Mixed => (
                    check_mixed(&a, &b, &c, &d, eta).map_err(e)?.overall,
                    check_mixed_canonical(
                        &simultaneous_decompose(&a, &b, &c.eta_conj_transpose(eta), &d, eta).map_err(e)?,
                    )
                    .all_hold(),
                    solve_mixed(&a, &b, &c, &d, eta, &FreeParams::Seed(seed)).map_err(e)?.is_solution(),
                ),
            };
            let by_oracle = oracle_solvable(kind, &a, &b, &c, &d, eta).map_err(e)?;
            if by_rank == by_blocks && by_rank == by_oracle && by_rank == solved {
                Ok(by_rank)
            } else {
                Err(format!(
                    "seed {seed}: ranks {by_rank}, blocks {by_blocks}, oracle {by_oracle}, solver {solved}"
                ))
            }
        })
        .collect();
    let mut solvable = 0;
    for r in &results {
        if r.clone()? {
            solvable += 1;
        }
    }
    Ok((solvable, results.len() - solvable))
}

fn three_way_equivalence() -> Outcome {
    let mut parts = Vec::new();
    for kind in [EquationKind::Herm, EquationKind::Mixed] {
        let (yes, no) = equivalence_for(kind).map_err(|e| format!("{kind}: {e}"))?;
        if yes == 0 || no == 0 {
            return Err(format!(
                "{kind}: corpus is one-sided ({yes} solvable, {no} not)"
            ));
        }
        parts.push(format!("{kind} {yes} solvable / {no} not"));
    }
    Ok(format!("all four deciders agree; {}", parts.join(", ")))
}

const CASES: u64 = 600;

fn property(name: &str, check: impl Fn(&mut ChaCha8Rng) -> bool + Sync) -> Result<(), String> {
    let bad: Vec<u64> = (0..CASES)
        .into_par_iter()
        .filter(|&seed| !check(&mut ChaCha8Rng::seed_from_u64(seed)))
        .collect();
    match bad.first() {
        Some(seed) => Err(format!("{name} fails for seed {seed}")),
        None => Ok(()),
    }
}

fn low_rank(rng: &mut ChaCha8Rng) -> QMatrix {
    let (r, k, c) = (
        rng.gen_range(1..=4),
        rng.gen_range(0..=3),
        rng.gen_range(1..=4),
    );
    let l = random_matrix(rng, r, k, 0.2);
    l.mul(&random_matrix(rng, k, c, 0.2)).unwrap()
}

fn axis(rng: &mut ChaCha8Rng) -> EtaAxis {
    EtaAxis::ALL[rng.gen_range(0..3)]
}

fn property_suites() -> Outcome {
    property("involution", |rng| {
        let eta = axis(rng);
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a = random_matrix(rng, r, c, 0.2);
        a.eta_conj_transpose(eta).eta_conj_transpose(eta) == a
    })?;
    property("product reversal", |rng| {
        let eta = axis(rng);
        let (r, k, c) = (
            rng.gen_range(1..=3),
            rng.gen_range(1..=3),
            rng.gen_range(1..=3),
        );
        let a = random_matrix(rng, r, k, 0.2);
        let b = random_matrix(rng, k, c, 0.2);
        a.mul(&b).unwrap().eta_conj_transpose(eta)
            == b.eta_conj_transpose(eta)
                .mul(&a.eta_conj_transpose(eta))
                .unwrap()
    })?;
    property("rank under eta-conjugate transpose", |rng| {
        let eta = axis(rng);
        let a = low_rank(rng);
        rank(&a) == rank(&a.eta_conj_transpose(eta))
    })?;
    property("real rank law", |rng| {
        let a = low_rank(rng);
        real_expansion(&a).rank() == 4 * rank(&a)
    })?;
    property("scalar pivoting lemma", |rng| {
        let eta = axis(rng);
        let q = random_matrix(rng, 1, 1, 0.0)[(0, 0)].clone();
        if q.is_zero() {
            return true;
        }
        let eq: Quaternion = &eta.unit() * &q;
        !(&q + &q.eta_conj(eta)).is_zero() || !(&eq + &eq.eta_conj(eta)).is_zero()
    })?;
    property("congruence diagonalization", |rng| {
        let eta = axis(rng);
        let n = rng.gen_range(1..=4);
        let mut a = random_with_symmetry(rng, n, eta, false);
        // zero diagonals force the pivot-creation path
        for s in 0..rng.gen_range(0..=n) {
            a[(s, s)] = Quaternion::zero();
        }
        let out = eta_congruence_diagonalize(&a, eta).unwrap();
        let d = out
            .transform
            .mul(&a)
            .unwrap()
            .mul(&out.transform.eta_conj_transpose(eta))
            .unwrap();
        d == out.diagonal_matrix(n)
            && rank(&out.transform) == n
            && out.rank == rank(&a)
            && out
                .diag
                .iter()
                .all(|p| !p.is_zero() && p.is_eta_hermitian(eta))
    })?;
    Ok(format!("six suites x {CASES} seeded cases, all exact"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 herm example rank table", herm_ranks),
        ("2 herm example printed solution", herm_printed_solution),
        ("3 herm example solve", herm_solve),
        ("4 mixed example ranks and printed solution", mixed_example),
        ("5 decomposition round trip", decomposition_round_trip),
        ("6 size formulas", size_formulas),
        ("7 three-way solvability equivalence", three_way_equivalence),
        ("8 property suites", property_suites),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
