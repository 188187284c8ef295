#![no_main]

use libfuzzer_sys::fuzz_target;
use pilab::parse::parse_poly_spec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(poly) = parse_poly_spec(text, None) {
        // Canonical printing must round-trip exactly.
        let printed = poly.canonical_string();
        let reparsed = parse_poly_spec(&printed, Some(poly.alphabet()))
            .expect("canonical form must reparse");
        assert_eq!(poly, reparsed);
        assert_eq!(reparsed.canonical_string(), printed);
    }
});
