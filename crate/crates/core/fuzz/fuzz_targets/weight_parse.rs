#![no_main]

use flagchow::roots::Weight;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|input: &str| {
    if let Ok(w) = Weight::parse(input, 4) {
        assert_eq!(Weight::parse(&w.to_string(), 4).expect("round trip"), w);
    }
});
