//! Fuzz the embedded-link interchange parser: must never panic, and every
//! accepted link must round-trip and support its derived views.

#![no_main]

use covers::diagram::{embedded_from_json, embedded_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(link) = embedded_from_json(text) {
        let again = embedded_from_json(&embedded_to_json(&link)).expect("round-trip parses");
        assert_eq!(again.pd, link.pd);
        assert_eq!(again.next, link.next);
        // derived structures must be computable on anything the parser accepts
        let _ = link.arc_diagram();
        let _ = link.faces();
    }
});
