//! Replays the checked-in fuzz corpus seeds through the parser entry points,
//! so the seeds stay valid without a fuzzing toolchain installed.

use std::fs;
use std::path::PathBuf;

use slicebound::construct::{build_family, ConstructError};
use slicebound::io::{
    canonical_json, family_to_descriptor, knot_to_seifert, parse_family_file, parse_knot_file,
    seifert_to_knot,
};

fn corpus(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out = Vec::new();
    for entry in fs::read_dir(&dir).unwrap_or_else(|e| panic!("missing corpus {dir:?}: {e}")) {
        let path = entry.expect("dir entry").path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        out.push((name, fs::read_to_string(&path).expect("readable seed")));
    }
    out.sort();
    assert!(!out.is_empty(), "corpus {target} has seeds checked in");
    out
}

#[test]
fn knot_seeds_parse_resolve_and_round_trip() {
    for (name, text) in corpus("knot_file") {
        let file = parse_knot_file(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let knot = knot_to_seifert(&file).unwrap_or_else(|e| panic!("{name}: {e}"));
        let canon = canonical_json(&seifert_to_knot(&knot));
        let reparsed = parse_knot_file(&canon).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(canonical_json(&reparsed), canon, "{name}: canonical form is stable");
        assert_eq!(
            knot_to_seifert(&reparsed).unwrap().matrix(),
            knot.matrix(),
            "{name}: normalization preserves the matrix"
        );
    }
}

#[test]
fn family_seeds_parse_and_gate_as_expected() {
    for (name, text) in corpus("family_file") {
        let file = parse_family_file(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let canon = canonical_json(&file);
        assert_eq!(
            canonical_json(&parse_family_file(&canon).unwrap()),
            canon,
            "{name}: canonical form is stable"
        );
        let descriptor = family_to_descriptor(&file).unwrap_or_else(|e| panic!("{name}: {e}"));
        let built = build_family(&descriptor);
        match name.as_str() {
            "prime-power.json" => {
                assert!(matches!(built, Err(ConstructError::PrimePower { n: 9, p: 3 })), "{name}");
            }
            "two-primes.json" => {
                assert!(matches!(built, Err(ConstructError::TooFewPrimes { n: 6, .. })), "{name}");
            }
            _ => {
                let family = built.unwrap_or_else(|e| panic!("{name}: {e}"));
                assert_eq!(
                    family.seifert.size(),
                    2 * family.block.size() * family.g as usize,
                    "{name}"
                );
            }
        }
    }
}
