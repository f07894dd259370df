#![no_main]

use libfuzzer_sys::fuzz_target;
use minviol::scenario::{lint, Scenario};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = Scenario::parse(s);
        let _ = lint(s);
    }
});
