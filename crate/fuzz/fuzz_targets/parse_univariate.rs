#![no_main]

use libfuzzer_sys::fuzz_target;
use pilab::parse::parse_univariate;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(coeffs) = parse_univariate(text) {
        // Never empty, never a spurious leading zero.
        assert!(!coeffs.is_empty());
        assert!(coeffs.len() == 1 || *coeffs.last().unwrap() != 0);
    }
});
