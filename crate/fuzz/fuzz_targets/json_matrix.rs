#![no_main]

use etaherm::io::{emit_json, matrix_to_json, parse_matrix_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(m) = parse_matrix_json(s) {
            let again =
                parse_matrix_json(&emit_json(&matrix_to_json(&m))).expect("emitted json parses");
            assert_eq!(again, m);
        }
    }
});
