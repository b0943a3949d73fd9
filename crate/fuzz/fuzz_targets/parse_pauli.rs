#![no_main]

use libfuzzer_sys::fuzz_target;
use qss_core::code5::{apply_pauli, encode_classical, kl_deviations, Bit, PauliOperator};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = text.parse::<PauliOperator>() {
        assert_eq!(p.to_string().parse::<PauliOperator>().unwrap(), p);
        if p.len() == 5 {
            let psi = apply_pauli(&p, &encode_classical(Bit::One)).unwrap();
            assert!((psi.norm_sqr() - 1.0).abs() < 1e-9);
            let _ = kl_deviations(&p);
        }
    }
});
