#![no_main]
use libfuzzer_sys::fuzz_target;
use repi::verify::{renyi_entropy_of_grid, MASS_TOLERANCE};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(f) = repi::parse::parse_grid_csv(text) else {
        return;
    };
    assert!(f.spacing() > 0.0);
    if f.mass().is_finite() {
        assert!((f.mass() - 1.0).abs() <= MASS_TOLERANCE, "mass {}", f.mass());
    }
    let _ = renyi_entropy_of_grid(&f, repi::Order::infinity());
});
