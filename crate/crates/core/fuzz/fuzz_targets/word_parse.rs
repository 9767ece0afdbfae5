#![no_main]

//! Words in the simple reflections: parsing never panics and the length of
//! the product never exceeds the number of letters.

use flagchow::weyl::parse_word;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|input: &str| {
    if let Ok(w) = parse_word(3, input) {
        let letters = input.split_whitespace().filter(|t| *t != "id").count();
        assert!(w.length() <= letters);
        let back = w.inverse().compose(&w);
        assert!(back.is_identity());
    }
});
