//! Quaternion literals, the text problem format and JSON output.

mod file;
mod json;
mod literal;

pub use file::{parse_matrix_file, parse_problem, ProblemFile, ProblemKind};
pub use json::{
    canonical_to_json, decomposition_to_json, emit_json, matrix_from_json, matrix_to_json,
    outcome_to_json, parse_matrix_json, quaternion_to_json, report_to_json, sizes_to_json,
    solution_to_json,
};
pub use literal::parse_quaternion;
