#![no_main]

use libfuzzer_sys::fuzz_target;
use sgdist::formats::{emit_x3hs, parse_x3hs};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(h) = parse_x3hs(text) {
        assert_eq!(parse_x3hs(&emit_x3hs(&h)).unwrap(), h);
    }
});
