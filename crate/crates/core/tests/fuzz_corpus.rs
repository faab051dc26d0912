//! Replays the checked-in fuzz seeds through the same properties the fuzz
//! targets assert.

use std::fs;
use std::path::PathBuf;

use hdgcert::params::validate;
use hdgcert::scanner::{parse_prime_list, ScanReport};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (path.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn json_seeds_round_trip() {
    for (name, data) in seeds("parse_report_json") {
        let report = ScanReport::from_json(std::str::from_utf8(&data).unwrap()).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(ScanReport::from_json(&report.to_json()).unwrap(), report, "{name}");
    }
}

#[test]
fn csv_seeds_round_trip() {
    for (name, data) in seeds("parse_report_csv") {
        let rows = ScanReport::rows_from_csv(std::str::from_utf8(&data).unwrap()).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(!rows.is_empty(), "{name}");
        let encoded = ScanReport::new(rows.clone()).to_csv();
        assert_eq!(encoded.as_bytes(), &data[..], "{name}");
    }
}

#[test]
fn prime_list_seeds() {
    let parsed: Vec<_> = seeds("parse_prime_list")
        .into_iter()
        .map(|(name, data)| (name, parse_prime_list(std::str::from_utf8(&data).unwrap()).ok()))
        .collect();
    assert_eq!(
        parsed,
        vec![
            ("empty_item".to_string(), None),
            ("largest".to_string(), Some(vec![1_099_511_627_689])),
            ("small".to_string(), Some(vec![2, 3, 5, 7])),
            ("spaces_dupes".to_string(), Some(vec![2, 11, 13])),
        ]
    );
}

#[test]
fn param_seeds_decode() {
    for (name, data) in seeds("validate_params") {
        assert_eq!(data.len(), 24, "{name}");
        let word = |k: usize| i64::from_le_bytes(data[8 * k..8 * k + 8].try_into().unwrap());
        let result = validate(word(0), word(1), word(2));
        let expect_ok = !matches!(name.as_str(), "negative" | "huge_r");
        assert_eq!(result.is_ok(), expect_ok, "{name}");
    }
}
