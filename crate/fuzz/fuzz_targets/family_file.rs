#![no_main]

use libfuzzer_sys::fuzz_target;
use slicebound::construct::build_family;
use slicebound::io::{
    canonical_json, family_to_descriptor, knot_to_seifert, parse_family_file, KnotFile,
};

fn knot_small(file: &KnotFile) -> bool {
    match file {
        KnotFile::Matrix { matrix, .. } => {
            matrix.len() <= 16
                && matrix.iter().all(|row| row.len() <= 16 && row.iter().all(|e| e.len() <= 64))
        }
        KnotFile::Catalog { params, .. } => params.iter().all(|p| p.unsigned_abs() <= 99),
    }
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = parse_family_file(text) else { return };
    if !knot_small(&file.j) || !knot_small(&file.j_prime) {
        return;
    }
    // Canonical serialization is a fixed point of parse ∘ serialize.
    let canon = canonical_json(&file);
    let reparsed = parse_family_file(&canon).expect("canonical form parses");
    assert_eq!(canonical_json(&reparsed), canon, "canonical form is stable");

    // Resolution and construction must fail loudly only through error values.
    let Ok(descriptor) = family_to_descriptor(&file) else { return };
    if file.g > 3 || file.n > 70 {
        return;
    }
    if let Ok(family) = build_family(&descriptor) {
        let m = family.block.size();
        assert_eq!(family.seifert.size(), 2 * m * family.g as usize);
        assert!(family.ledger.len() <= 2 * family.g as usize);
        for entry in &family.ledger {
            assert!(entry.sign == 1 || entry.sign == -1);
            assert!(knot_to_seifert(&slicebound::io::seifert_to_knot(&entry.companion)).is_ok());
        }
    }
});
