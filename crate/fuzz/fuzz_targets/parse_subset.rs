#![no_main]

use libfuzzer_sys::fuzz_target;
use qss_core::ShareSubset;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(j) = text.parse::<ShareSubset>() {
        assert_eq!(j.to_string().parse::<ShareSubset>().unwrap(), j);
        assert!(j.members().all(|m| (1..=5).contains(&m)));
    }
});
