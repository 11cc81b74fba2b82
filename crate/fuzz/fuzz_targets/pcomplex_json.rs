#![no_main]

use libfuzzer_sys::fuzz_target;
use nilhecke::pcomplex::parse_json;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    for p in [3, 5] {
        if let Ok(c) = parse_json(src, p) {
            if c.verify_p_nilpotent() {
                let blocks = c.jordan_blocks();
                assert_eq!(blocks.iter().map(|b| b.size).sum::<usize>(), c.total_dim());
            }
        }
    }
});
