#![no_main]

//! Parsing never panics, and whatever parses prints back to an equal
//! polynomial.

use flagchow::poly::Poly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|input: &str| {
    for nvars in [1, 3] {
        if let Ok(p) = Poly::parse(input, nvars) {
            let printed = p.to_string();
            let again = Poly::parse(&printed, nvars).expect("printed form parses");
            assert_eq!(p, again, "{input:?} -> {printed:?}");
        }
    }
    let names = vec!["l1".to_string(), "l2".to_string(), "lt1".to_string()];
    if let Ok(p) = Poly::parse_with(input, &names) {
        let printed = p.to_string_with(&names);
        assert_eq!(Poly::parse_with(&printed, &names).expect("round trip"), p);
    }
});
