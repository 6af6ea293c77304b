#![no_main]

use freethrow::parse_archetypes;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let _ = parse_archetypes(data);
});
