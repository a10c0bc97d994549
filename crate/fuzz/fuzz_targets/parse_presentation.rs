#![no_main]

use libfuzzer_sys::fuzz_target;

use confmod::presets::load_presentation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = load_presentation(text, "fuzz");
});
