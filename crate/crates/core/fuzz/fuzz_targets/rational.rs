#![no_main]

use coverdepth::ExactRational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = text.parse::<ExactRational>() {
        assert_eq!(r.to_string().parse::<ExactRational>().unwrap(), r);
    }
    if let Ok(r) = serde_json::from_str::<ExactRational>(text) {
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<ExactRational>(&json).unwrap(), r);
    }
});
