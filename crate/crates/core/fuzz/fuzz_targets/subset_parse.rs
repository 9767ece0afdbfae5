#![no_main]

use flagchow::report::parse_subset;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|input: &str| {
    if let Ok(k) = parse_subset(4, input) {
        let listed: Vec<String> = k.indices().map(|i| (i + 1).to_string()).collect();
        assert_eq!(parse_subset(4, &listed.join(",")).expect("round trip"), k);
    }
});
