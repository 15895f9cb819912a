#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let s = String::from_utf8_lossy(data);
    if let Ok(grid) = repi::parse::parse_alpha_grid(&s) {
        assert!(!grid.is_empty());
        for w in grid.windows(2) {
            assert!(w[1].alpha() > w[0].alpha());
        }
    }
});
