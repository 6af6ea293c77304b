#![no_main]

use freethrow::{parse_shots, ParseMode};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let _ = parse_shots(data, ParseMode::Lenient);
    let _ = parse_shots(data, ParseMode::Strict);
});
