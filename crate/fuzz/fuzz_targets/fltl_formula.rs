#![no_main]

use libfuzzer_sys::fuzz_target;
use minviol::fltl::{denext, parse_g, parse_gx, parse_pair_prop, parse_prop};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(phi) = parse_gx(s) {
        // printing and reparsing must round-trip
        let again = parse_gx(&phi.to_string()).expect("printed formula reparses");
        assert_eq!(again, phi);
        let _ = denext(&phi);
    }
    let _ = parse_g(s);
    let _ = parse_prop(s);
    let _ = parse_pair_prop(s);
});
