#![no_main]

use libfuzzer_sys::fuzz_target;
use tczeta::chartable::{compute_character_table, parse_rep, Representation};
use tczeta::zoo;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(rep) = parse_rep(text) {
        if let Some(g) = zoo::group(&rep.group_name) {
            let table = compute_character_table(&g).unwrap();
            let _ = Representation::from_data(&table, &rep);
        }
    }
});
