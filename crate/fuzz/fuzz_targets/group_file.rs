#![no_main]

use libfuzzer_sys::fuzz_target;
use tczeta::group::{conjugacy_classes, load_group_with, LoadOptions};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = load_group_with(text, &LoadOptions { cap: 4096 }) {
        let p = conjugacy_classes(&g);
        assert_eq!(p.sizes.iter().sum::<usize>(), g.order());
    }
});
