#![no_main]

use libfuzzer_sys::fuzz_target;
use tczeta::zeta::RationalFunction;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 512 {
        return;
    }
    if let Ok(r) = RationalFunction::parse(text) {
        let again = RationalFunction::parse(&r.to_string()).expect("display re-parses");
        assert_eq!(again, r);
    }
});
