use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use etaherm::io::{
    canonical_to_json, decomposition_to_json, emit_json, matrix_to_json, outcome_to_json,
    parse_problem, report_to_json, sizes_to_json, ProblemFile, ProblemKind,
};
use etaherm::solvers::{
    check_herm, check_herm_canonical, check_mixed, check_mixed_canonical, gen_instance, residual,
    solve_herm, solve_mixed, ConditionReport,
};
use etaherm::{simultaneous_decompose, EquationKind, FreeParams, QMatrix, Solution, SolveOutcome};

#[derive(Parser)]
#[command(
    name = "etaherm",
    version,
    about = "Exact eta-Hermitian quaternion matrix equations"
)]
struct Cli {
    /// Emit JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simultaneous decomposition of (A, B, C, D).
    Decompose {
        /// Problem file, or `-` for stdin.
        file: PathBuf,
    },
    /// Evaluate the rank conditions for solvability.
    Check {
        #[command(flatten)]
        eq: EqArg,
        file: PathBuf,
    },
    /// Solve, printing one member of the general solution.
    Solve {
        #[command(flatten)]
        eq: EqArg,
        /// `zero` or `seed:<n>`.
        #[arg(long, default_value = "zero")]
        free: FreeParams,
        file: PathBuf,
    },
    /// Residual of a candidate solution.
    Verify {
        #[command(flatten)]
        eq: EqArg,
        /// File holding X, Y (and Z); defaults to the problem file.
        #[arg(long)]
        solution: Option<PathBuf>,
        file: PathBuf,
    },
    /// Print a random solvable instance with its planted solution.
    Gen {
        #[command(flatten)]
        eq: EqArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p1: usize,
        #[arg(long)]
        p2: usize,
        #[arg(long)]
        p3: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct EqArg {
    /// `herm` or `mixed`; defaults to the file's `kind:` line.
    #[arg(long = "eq")]
    eq: Option<EquationKind>,
}

impl EqArg {
    fn resolve(&self, file: Option<&ProblemFile>) -> Result<EquationKind> {
        if let Some(k) = self.eq {
            return Ok(k);
        }
        match file.and_then(|f| f.kind) {
            Some(ProblemKind::Equation(k)) => Ok(k),
            _ => bail!("no equation given: pass --eq herm|mixed"),
        }
    }
}

fn load(path: &Path) -> Result<ProblemFile> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_problem(&text).with_context(|| format!("parsing {}", path.display()))
}

fn matrix_text(name: &str, m: &QMatrix) -> String {
    let mut f = ProblemFile::new(etaherm::EtaAxis::I, None);
    f.insert(name, m.clone());
    f.to_text()
        .split_once('\n')
        .map(|(_, rest)| rest.to_string())
        .unwrap_or_default()
}

fn report_table(report: &ConditionReport) -> String {
    let width = report
        .conditions
        .iter()
        .map(|c| c.label.chars().count())
        .max()
        .unwrap_or(0);
    let mut out = format!(
        "{:<width$}  {:>4}  {:>4}  holds\n",
        "condition", "lhs", "rhs"
    );
    for c in &report.conditions {
        let pad = width - c.label.chars().count();
        out += &format!(
            "{}{}  {:>4}  {:>4}  {}\n",
            c.label,
            " ".repeat(pad),
            c.lhs_rank,
            c.rhs_rank,
            if c.holds { "yes" } else { "no" }
        );
    }
    out
}

fn coefficients(f: &ProblemFile) -> Result<(&QMatrix, &QMatrix, &QMatrix, &QMatrix)> {
    Ok(f.coefficients()?)
}

fn check_report(kind: EquationKind, f: &ProblemFile) -> Result<ConditionReport> {
    let (a, b, c, d) = coefficients(f)?;
    Ok(match kind {
        EquationKind::Herm => check_herm(a, b, c, d, f.eta)?,
        EquationKind::Mixed => check_mixed(a, b, c, d, f.eta)?,
    })
}

fn run(cli: Cli, out: &mut impl Write) -> Result<ExitCode> {
    let json = cli.json;
    match cli.command {
        Command::Decompose { file } => {
            let f = load(&file)?;
            let (a, b, c, d) = coefficients(&f)?;
            // mixed files store C as p2 x m; the decomposition wants m x p2
            let c = match f.kind {
                Some(ProblemKind::Equation(EquationKind::Mixed)) => c.eta_conj_transpose(f.eta),
                _ => c.clone(),
            };
            let dec = simultaneous_decompose(a, b, &c, d, f.eta)?;
            dec.verify(a, b, &c, d)?;
            if json {
                let mut v = decomposition_to_json(&dec);
                v["verified"] = json!(true);
                write!(out, "{}", emit_json(&v))?;
            } else {
                let s = &dec.sizes;
                writeln!(
                    out,
                    "sizes: m1={} m2={} m3={} m4={} m5={} m6={} m7={} m8={} sigma={} tail={}",
                    s.m1, s.m2, s.m3, s.m4, s.m5, s.m6, s.m7, s.m8, s.sigma_rank, s.tail
                )?;
                let sigma: Vec<String> = dec.sigma.iter().map(ToString::to_string).collect();
                writeln!(out, "sigma: [{}]", sigma.join(", "))?;
                for (name, m) in [
                    ("P", &dec.p),
                    ("T1", &dec.t1),
                    ("T2", &dec.t2),
                    ("T3", &dec.t3),
                    ("S_A", &dec.s_a),
                ] {
                    write!(out, "{}", matrix_text(name, m))?;
                }
                writeln!(out, "verified: yes")?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { eq, file } => {
            let f = load(&file)?;
            let kind = eq.resolve(Some(&f))?;
            let report = check_report(kind, &f)?;
            let (a, b, c, d) = coefficients(&f)?;
            let dec = match kind {
                EquationKind::Herm => simultaneous_decompose(a, b, c, d, f.eta)?,
                EquationKind::Mixed => {
                    simultaneous_decompose(a, b, &c.eta_conj_transpose(f.eta), d, f.eta)?
                }
            };
            let canonical = match kind {
                EquationKind::Herm => check_herm_canonical(&dec),
                EquationKind::Mixed => check_mixed_canonical(&dec),
            };
            if json {
                let v = json!({
                    "equation": kind.to_string(),
                    "eta": f.eta.to_string(),
                    "conditions": report_to_json(&report),
                    "canonical": canonical_to_json(&canonical),
                    "sizes": sizes_to_json(&dec.sizes),
                    "solvable": report.overall,
                });
                write!(out, "{}", emit_json(&v))?;
            } else {
                write!(out, "{}", report_table(&report))?;
                writeln!(
                    out,
                    "solvable: {}",
                    if report.overall { "yes" } else { "no" }
                )?;
            }
            if report.overall != canonical.all_hold() {
                bail!("rank conditions and block conditions disagree");
            }
            Ok(if report.overall {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Solve { eq, free, file } => {
            let f = load(&file)?;
            let kind = eq.resolve(Some(&f))?;
            let (a, b, c, d) = coefficients(&f)?;
            let outcome = match kind {
                EquationKind::Herm => solve_herm(a, b, c, d, f.eta, &free)?,
                EquationKind::Mixed => solve_mixed(a, b, c, d, f.eta, &free)?,
            };
            if json {
                write!(out, "{}", emit_json(&outcome_to_json(&outcome)))?;
            } else {
                match &outcome {
                    SolveOutcome::Unsolvable { report } => {
                        write!(out, "{}", report_table(report))?;
                        writeln!(out, "solvable: no")?;
                    }
                    SolveOutcome::Solution { solution, free, .. } => {
                        writeln!(
                            out,
                            "% solution of the {kind} equation, free blocks: {free}, residual: 0"
                        )?;
                        let mut sol = ProblemFile::new(f.eta, Some(ProblemKind::Equation(kind)));
                        for (name, m) in solution.named() {
                            sol.insert(name, m.clone());
                        }
                        write!(out, "{}", sol.to_text())?;
                    }
                }
            }
            Ok(if outcome.is_solution() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Verify { eq, solution, file } => {
            let f = load(&file)?;
            let kind = eq.resolve(Some(&f))?;
            let sol_file = match &solution {
                Some(p) => load(p)?,
                None => f.clone(),
            };
            if sol_file.eta != f.eta {
                bail!(
                    "solution file uses eta {} but the problem uses {}",
                    sol_file.eta,
                    f.eta
                );
            }
            let get = |n: &str| -> Result<QMatrix> { Ok(sol_file.require(n)?.clone()) };
            let candidate = match kind {
                EquationKind::Herm => Solution::Herm {
                    x: get("X")?,
                    y: get("Y")?,
                    z: get("Z")?,
                },
                EquationKind::Mixed => Solution::Mixed {
                    x: get("X")?,
                    y: get("Y")?,
                },
            };
            let (a, b, c, d) = coefficients(&f)?;
            let res = residual(a, b, c, d, &candidate, f.eta)?;
            let hermitian: Vec<(&str, bool)> = candidate
                .named()
                .into_iter()
                .filter(|(n, _)| kind == EquationKind::Herm || *n == "Y")
                .map(|(n, m)| (n, m.is_eta_hermitian(f.eta).unwrap_or(false)))
                .collect();
            let ok = res.is_zero() && hermitian.iter().all(|(_, h)| *h);
            if json {
                let herm: serde_json::Map<String, serde_json::Value> = hermitian
                    .iter()
                    .map(|(n, h)| (n.to_string(), json!(h)))
                    .collect();
                let v = json!({
                    "equation": kind.to_string(),
                    "eta": f.eta.to_string(),
                    "residual": matrix_to_json(&res),
                    "residual_zero": res.is_zero(),
                    "eta_hermitian": herm,
                    "ok": ok,
                });
                write!(out, "{}", emit_json(&v))?;
            } else {
                write!(out, "{}", matrix_text("residual", &res))?;
                writeln!(
                    out,
                    "residual zero: {}",
                    if res.is_zero() { "yes" } else { "no" }
                )?;
                for (n, h) in &hermitian {
                    writeln!(
                        out,
                        "{n} {}-Hermitian: {}",
                        f.eta,
                        if *h { "yes" } else { "no" }
                    )?;
                }
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Gen {
            eq,
            m,
            p1,
            p2,
            p3,
            seed,
        } => {
            let kind = eq.resolve(None)?;
            let inst = gen_instance(kind, m, p1, p2, p3, seed);
            let mut f = ProblemFile::new(inst.eta, Some(ProblemKind::Equation(kind)));
            for (name, mat) in [
                ("A", &inst.a),
                ("B", &inst.b),
                ("C", &inst.c),
                ("D", &inst.d),
            ] {
                f.insert(name, mat.clone());
            }
            for (name, mat) in inst.planted.named() {
                f.insert(name, mat.clone());
            }
            if json {
                let mats: serde_json::Map<String, serde_json::Value> = f
                    .matrices
                    .iter()
                    .map(|(n, m)| (n.clone(), matrix_to_json(m)))
                    .collect();
                let v = json!({"equation": kind.to_string(), "eta": inst.eta.to_string(), "seed": seed, "matrices": mats});
                write!(out, "{}", emit_json(&v))?;
            } else {
                writeln!(
                    out,
                    "% generated with seed {seed}; X, Y{} are the planted solution",
                    if kind == EquationKind::Herm {
                        ", Z"
                    } else {
                        ""
                    }
                )?;
                write!(out, "{}", f.to_text())?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
