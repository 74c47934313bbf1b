//! Fuzz the PD-notation text parser: must never panic, and every accepted
//! link must agree with the JSON interchange round-trip.

#![no_main]

use covers::diagram::{embedded_from_json, embedded_to_json, parse_pd_text};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(link) = parse_pd_text(text) {
        let again = embedded_from_json(&embedded_to_json(&link)).expect("round-trip parses");
        assert_eq!(again.pd, link.pd);
        assert_eq!(again.next, link.next);
    }
});
