#![no_main]

use libfuzzer_sys::fuzz_target;

use confmod::presets::load_lie_data;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(lie) = load_lie_data(text) {
        // the validators must run on anything that loads
        let _ = lie.validate();
    }
});
