#![no_main]

use libfuzzer_sys::fuzz_target;
use sgdist::formats::{emit_permutation_json, parse_permutation_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse_permutation_json(text) {
        assert_eq!(parse_permutation_json(&emit_permutation_json(&p)).unwrap(), p);
    }
});
