#![no_main]

use coverdepth::codefile::{parse_code_file, to_code_file};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(code) = parse_code_file(text) {
        let again = parse_code_file(&to_code_file(&code)).expect("written files parse");
        assert_eq!(again.generator(), code.generator());
    }
});
