#![no_main]

use hdgcert::scanner::ScanReport;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(rows) = ScanReport::rows_from_csv(text) {
        let encoded = ScanReport::new(rows.clone()).to_csv();
        assert_eq!(ScanReport::rows_from_csv(&encoded).expect("re-encoded rows decode"), rows);
    }
});
