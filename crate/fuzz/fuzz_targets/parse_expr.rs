#![no_main]

use libfuzzer_sys::fuzz_target;
use nilhecke::parse::{parse_expr, Context};

// First byte picks the context and rank, the rest is the expression.
fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else { return };
    let Ok(src) = std::str::from_utf8(rest) else { return };
    if src.len() > 256 {
        return;
    }
    let (context, n) = match head % 3 {
        0 => (Context::Ring, 1 + (head as usize / 3) % 5),
        1 => (Context::Algebra, 1 + (head as usize / 3) % 4),
        _ => (Context::K0, [3, 5, 7][(head as usize / 3) % 3]),
    };
    if let Ok(v) = parse_expr(src, n, context) {
        // printing must give something that parses back to the same value
        let again = parse_expr(&v.to_string(), n, context).expect("printed form parses");
        assert_eq!(again, v);
    }
});
