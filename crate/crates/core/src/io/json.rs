//! JSON output. Quaternions are strings in the literal grammar and
//! matrices are arrays of row arrays; object keys come out sorted, so equal
//! values always serialize to identical text.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::scalar::Quaternion;
use crate::simdec::{BlockSizes, SimDecomposition};
use crate::solvers::{CanonicalCheck, ConditionReport, Solution, SolveOutcome};

use super::literal::parse_quaternion;

pub fn quaternion_to_json(q: &Quaternion) -> Value {
    Value::String(q.to_string())
}

/// A matrix with no rows serializes as `[]` and reads back as `0 x 0`.
pub fn matrix_to_json(m: &QMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|s| Value::Array(m.row(s).iter().map(quaternion_to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value) -> Result<QMatrix> {
    let bad = |msg: String| Error::parse(0, 0, msg);
    let rows = v
        .as_array()
        .ok_or_else(|| bad("matrix must be an array of rows".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for (s, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| bad(format!("row {} is not an array", s + 1)))?;
        let entries = row
            .iter()
            .enumerate()
            .map(|(t, e)| {
                let text = e
                    .as_str()
                    .ok_or_else(|| bad(format!("entry ({}, {}) is not a string", s + 1, t + 1)))?;
                parse_quaternion(text)
                    .map_err(|err| bad(format!("entry ({}, {}): {err}", s + 1, t + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(entries);
    }
    if out.is_empty() {
        return Ok(QMatrix::zeros(0, 0));
    }
    QMatrix::from_rows(out)
}

/// Parses a JSON matrix from text.
pub fn parse_matrix_json(text: &str) -> Result<QMatrix> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    matrix_from_json(&v)
}

pub fn sizes_to_json(s: &BlockSizes) -> Value {
    json!({
        "m1": s.m1, "m2": s.m2, "m3": s.m3, "m4": s.m4,
        "m5": s.m5, "m6": s.m6, "m7": s.m7, "m8": s.m8,
        "sigma": s.sigma_rank, "tail": s.tail,
    })
}

pub fn report_to_json(r: &ConditionReport) -> Value {
    Value::Array(
        r.conditions
            .iter()
            .map(|c| json!({"label": c.label, "lhs": c.lhs_rank, "rhs": c.rhs_rank, "holds": c.holds}))
            .collect(),
    )
}

pub fn canonical_to_json(c: &CanonicalCheck) -> Value {
    Value::Array(
        c.checks
            .iter()
            .map(|(label, holds)| json!({"label": label, "holds": holds}))
            .collect(),
    )
}

pub fn decomposition_to_json(d: &SimDecomposition) -> Value {
    json!({
        "eta": d.eta.to_string(),
        "sizes": sizes_to_json(&d.sizes),
        "P": matrix_to_json(&d.p),
        "T1": matrix_to_json(&d.t1),
        "T2": matrix_to_json(&d.t2),
        "T3": matrix_to_json(&d.t3),
        "S_A": matrix_to_json(&d.s_a),
        "sigma": d.sigma.iter().map(quaternion_to_json).collect::<Vec<_>>(),
    })
}

pub fn solution_to_json(s: &Solution) -> Value {
    let mut map = Map::new();
    for (name, m) in s.named() {
        map.insert(name.to_string(), matrix_to_json(m));
    }
    Value::Object(map)
}

pub fn outcome_to_json(o: &SolveOutcome) -> Value {
    match o {
        SolveOutcome::Unsolvable { report } => json!({
            "solvable": false,
            "conditions": report_to_json(report),
        }),
        SolveOutcome::Solution {
            solution,
            free,
            residual_is_zero,
        } => json!({
            "solvable": true,
            "free": free.to_string(),
            "residual_zero": residual_is_zero,
            "solution": solution_to_json(solution),
        }),
    }
}

/// Pretty-printed text with a trailing newline.
pub fn emit_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values built here always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let m = QMatrix::from_rows(vec![
            vec!["1+2i-3j+4/5k".parse().unwrap(), Quaternion::zero()],
            vec![-Quaternion::i(), "3/2".parse().unwrap()],
        ])
        .unwrap();
        let text = emit_json(&matrix_to_json(&m));
        assert_eq!(parse_matrix_json(&text).unwrap(), m);
        assert!(text.contains("\"1+2i-3j+4/5k\""));
    }

    #[test]
    fn empty_sizes_are_all_zero() {
        let v = sizes_to_json(&BlockSizes::default());
        for (_, n) in v.as_object().unwrap() {
            assert_eq!(n, &json!(0));
        }
    }

    #[test]
    fn rejects_malformed_json_matrices() {
        for text in ["{", "1", "[1]", "[[1]]", "[[\"x\"]]", "[[\"1\"],[]]"] {
            assert!(parse_matrix_json(text).is_err(), "{text}");
        }
        assert_eq!(parse_matrix_json("[[],[]]").unwrap().shape(), (2, 0));
    }
}
