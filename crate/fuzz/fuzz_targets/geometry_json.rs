#![no_main]

use freethrow::CourtGeometry;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = CourtGeometry::from_json_str(s);
    }
});
