#![no_main]

use libfuzzer_sys::fuzz_target;
use qss_core::document::{read_state, write_state};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(psi) = read_state(text) {
        let written = write_state(&psi);
        let again = read_state(&written).expect("written documents parse");
        assert_eq!(write_state(&again), written);
    }
});
