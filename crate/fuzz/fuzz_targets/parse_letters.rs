#![no_main]

use libfuzzer_sys::fuzz_target;
use pilab::parse::parse_letters;

fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else { return };
    let n = first % 8 + 1;
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(word) = parse_letters(text, n) {
        assert!(word.letters().iter().all(|&l| (1..=n).contains(&l)));
        let reparsed = parse_letters(&word.letters_string(), n).unwrap();
        assert_eq!(word, reparsed);
    }
});
