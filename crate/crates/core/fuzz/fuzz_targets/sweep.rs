#![no_main]

use coverdepth_cli::sweep::{parse_sweep, MAX_SWEEP_CELLS};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(specs) = parse_sweep(text) {
        assert!(specs.len() <= MAX_SWEEP_CELLS);
    }
});
