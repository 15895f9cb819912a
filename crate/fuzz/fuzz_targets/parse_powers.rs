#![no_main]
use libfuzzer_sys::fuzz_target;
use repi::optimizer::{optimal_weights, thm2_constant};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(powers) = repi::parse::parse_powers(s) else {
        return;
    };
    if powers.len() > 64 || powers.positive_count() == 0 {
        return;
    }
    let order = repi::Order::new(2.0).unwrap();
    if let Ok(t) = optimal_weights(&powers, order) {
        let sum: f64 = t.as_slice().iter().sum();
        assert!((sum - 1.0).abs() < 1e-9, "{:?} -> {:?}", powers, t);
    }
    let _ = thm2_constant(&powers, order);
});
