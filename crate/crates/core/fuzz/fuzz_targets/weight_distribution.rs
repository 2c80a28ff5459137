#![no_main]

use coverdepth::enumeration::{macwilliams_dual, WeightDistribution};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(w) = serde_json::from_slice::<WeightDistribution>(data) else {
        return;
    };
    let json = serde_json::to_string(&w).unwrap();
    assert_eq!(
        serde_json::from_str::<WeightDistribution>(&json).unwrap(),
        w
    );
    if w.n() <= 64 {
        for (q, k) in [(2, 1), (2, 2), (3, 1)] {
            let _ = macwilliams_dual(&w, q, k);
        }
    }
});
