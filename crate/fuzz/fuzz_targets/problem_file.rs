#![no_main]

use etaherm::io::parse_problem;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(file) = parse_problem(s) {
            let again = parse_problem(&file.to_text()).expect("serialized file parses");
            assert_eq!(again, file);
        }
    }
});
