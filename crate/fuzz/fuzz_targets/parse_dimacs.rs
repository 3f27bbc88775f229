#![no_main]

use libfuzzer_sys::fuzz_target;
use sgdist::formats::{emit_dimacs, parse_dimacs, parse_source};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_source(text);
    if let Ok(f) = parse_dimacs(text) {
        assert_eq!(parse_dimacs(&emit_dimacs(&f)).unwrap(), f);
    }
});
