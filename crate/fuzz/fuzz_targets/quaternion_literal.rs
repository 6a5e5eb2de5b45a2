#![no_main]

use etaherm::io::parse_quaternion;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(q) = parse_quaternion(s) {
            let again = parse_quaternion(&q.to_string()).expect("display output parses");
            assert_eq!(again, q);
        }
    }
});
