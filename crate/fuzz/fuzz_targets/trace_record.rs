#![no_main]

use libfuzzer_sys::fuzz_target;
use minviol::io::TraceRecord;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(rec) = TraceRecord::parse(s) {
        let _ = rec.to_text();
    }
});
