#![no_main]

use hdgcert::scanner::ScanReport;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(report) = ScanReport::from_json(text) {
        let again = ScanReport::from_json(&report.to_json()).expect("re-encoded report decodes");
        assert_eq!(again, report);
    }
});
