#![no_main]

use coverdepth::gf::FieldDescriptor;
use coverdepth::FiniteField;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(d) = serde_json::from_slice::<FieldDescriptor>(data) else {
        return;
    };
    if let Ok(f) = FiniteField::from_descriptor(&d) {
        assert_eq!(f.descriptor(), d);
        let one = 1 % f.order() as u32;
        assert_eq!(f.mul(one, one), one);
    }
});
