#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(order) = repi::parse::parse_order(s) {
            assert!(order.alpha() > 1.0);
            assert!(order.conj() >= 1.0);
        }
    }
});
