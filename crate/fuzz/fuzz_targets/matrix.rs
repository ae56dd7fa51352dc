#![no_main]

use libfuzzer_sys::fuzz_target;
use tczeta::abelian::{lattice_reidemeister, parse_matrix};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_matrix(text) {
        let again = parse_matrix(&m.to_string()).expect("display re-parses");
        assert_eq!(again.matrix(), m.matrix());
        let _ = lattice_reidemeister(&m, 2);
    }
});
