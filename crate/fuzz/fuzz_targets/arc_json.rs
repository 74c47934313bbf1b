//! Fuzz the arc-diagram interchange parser: must never panic, and every
//! accepted diagram must satisfy its own invariants and round-trip.

#![no_main]

use covers::diagram::ArcDiagram;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(diag) = ArcDiagram::from_json(text) {
        diag.validate().expect("accepted diagram must validate");
        let again = ArcDiagram::from_json(&diag.to_json()).expect("round-trip parses");
        assert_eq!(again.arcs, diag.arcs);
        assert_eq!(again.crossings.len(), diag.crossings.len());
    }
});
