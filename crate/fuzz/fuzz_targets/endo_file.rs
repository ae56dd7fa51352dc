#![no_main]

use libfuzzer_sys::fuzz_target;
use tczeta::group::{class_map, parse_endomorphism};
use tczeta::zoo;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for name in ["s3", "z6", "q8"] {
        let g = zoo::group(name).unwrap();
        if let Ok(phi) = parse_endomorphism(&g, text) {
            let cm = class_map(&phi).expect("homomorphisms induce class maps");
            assert_eq!(cm.sigma.len(), cm.partition.count());
        }
    }
});
