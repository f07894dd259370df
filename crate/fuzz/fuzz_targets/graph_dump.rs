#![no_main]

use libfuzzer_sys::fuzz_target;
use minviol::io::GraphDump;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = GraphDump::parse(s) {
        let _ = g.to_text();
    }
});
