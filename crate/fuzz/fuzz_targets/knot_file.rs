#![no_main]

use libfuzzer_sys::fuzz_target;
use slicebound::io::{canonical_json, knot_to_seifert, parse_knot_file, seifert_to_knot, KnotFile};

/// Caps that keep single inputs cheap: resolution of a parsed document runs
/// exact determinant checks, so unbounded dimensions or catalog parameters
/// would turn the fuzzer into a benchmark instead of a parser test.
fn small_enough(file: &KnotFile) -> bool {
    match file {
        KnotFile::Matrix { matrix, .. } => {
            matrix.len() <= 24
                && matrix.iter().all(|row| row.len() <= 24 && row.iter().all(|e| e.len() <= 96))
        }
        KnotFile::Catalog { params, .. } => params.iter().all(|p| p.unsigned_abs() <= 99),
    }
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = parse_knot_file(text) else { return };
    if !small_enough(&file) {
        return;
    }
    // Resolution must reject invalid data with an error, never a panic.
    if let Ok(knot) = knot_to_seifert(&file) {
        // Normalization is a fixed point: canonical output reparses to the
        // byte-identical document.
        let canon = canonical_json(&seifert_to_knot(&knot));
        let reparsed = parse_knot_file(&canon).expect("canonical form parses");
        assert_eq!(canonical_json(&reparsed), canon, "canonical form is stable");
        let resolved = knot_to_seifert(&reparsed).expect("canonical form resolves");
        assert_eq!(resolved.matrix(), knot.matrix(), "normalization preserves the matrix");
    }
});
