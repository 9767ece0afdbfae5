//! The fuzz target properties, run over the checked-in seeds and random
//! inputs.

use std::path::Path;

use flagchow::poly::Poly;
use flagchow::report::parse_subset;
use flagchow::roots::Weight;
use flagchow::weyl::parse_word;
use proptest::prelude::*;

fn poly_property(input: &str) {
    for nvars in [1, 3] {
        if let Ok(p) = Poly::parse(input, nvars) {
            let printed = p.to_string();
            assert_eq!(Poly::parse(&printed, nvars).unwrap(), p, "{input:?}");
        }
    }
    let names = vec!["l1".to_string(), "l2".to_string(), "lt1".to_string()];
    if let Ok(p) = Poly::parse_with(input, &names) {
        let printed = p.to_string_with(&names);
        assert_eq!(Poly::parse_with(&printed, &names).unwrap(), p);
    }
}

fn weight_property(input: &str) {
    if let Ok(w) = Weight::parse(input, 4) {
        assert_eq!(Weight::parse(&w.to_string(), 4).unwrap(), w);
    }
}

fn word_property(input: &str) {
    if let Ok(w) = parse_word(3, input) {
        let letters = input.split_whitespace().filter(|t| *t != "id").count();
        assert!(w.length() <= letters);
        assert!(w.inverse().compose(&w).is_identity());
    }
}

fn subset_property(input: &str) {
    if let Ok(k) = parse_subset(4, input) {
        let listed: Vec<String> = k.indices().map(|i| (i + 1).to_string()).collect();
        assert_eq!(parse_subset(4, &listed.join(",")).unwrap(), k);
    }
}

fn seeds(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<String> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| std::fs::read(e.unwrap().path()).unwrap())
        .map(|b| String::from_utf8_lossy(&b).into_owned())
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn corpus_seeds() {
    for s in seeds("poly_parse") {
        poly_property(&s);
    }
    for s in seeds("weight_parse") {
        weight_property(&s);
    }
    for s in seeds("word_parse") {
        word_property(&s);
    }
    for s in seeds("subset_parse") {
        subset_property(&s);
    }
}

proptest! {
    #[test]
    fn random_polynomial_text(s in "[ e0-9lt/*^+()-]{0,24}") {
        poly_property(&s);
    }

    #[test]
    fn random_weight_text(s in "[ e0-9+*/-]{0,16}") {
        weight_property(&s);
    }

    #[test]
    fn random_words(s in "(s[0-4] ){0,8}") {
        word_property(&s);
    }

    #[test]
    fn random_subsets(s in "[0-5e,+2 -]{0,12}") {
        subset_property(&s);
    }

    #[test]
    fn arbitrary_text_never_panics(s in "\\PC{0,32}") {
        poly_property(&s);
        weight_property(&s);
        word_property(&s);
        subset_property(&s);
    }
}
