#![no_main]

use libfuzzer_sys::fuzz_target;
use sgdist::reductions::{decode_witness, DistanceInstance};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(inst) = DistanceInstance::from_json(text) {
        assert_eq!(DistanceInstance::from_json(&inst.to_json()).unwrap(), inst);
        let zeros = vec![0.into(); inst.generators.len()];
        let _ = decode_witness(&inst, &zeros);
    }
});
