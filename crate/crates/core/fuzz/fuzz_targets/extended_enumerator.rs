#![no_main]

use coverdepth::enumeration::{extension_weight_distribution, ExtendedEnumerator};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(e) = serde_json::from_slice::<ExtendedEnumerator>(data) else {
        return;
    };
    let json = serde_json::to_string(&e).unwrap();
    assert_eq!(
        serde_json::from_str::<ExtendedEnumerator>(&json).unwrap(),
        e
    );
    if e.n() <= 64 && e.k() <= 64 {
        for m in 0..3 {
            let _ = extension_weight_distribution(&e, 2, m);
        }
    }
});
