//! Replays the checked-in fuzz seeds through the same logic the fuzz
//! targets run, so the corpus stays meaningful without a nightly toolchain.

use std::fs;
use std::path::PathBuf;

use nilhecke::parse::{parse_expr, Context};
use nilhecke::pcomplex::parse_json;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect();
    out.sort();
    out
}

#[test]
fn parse_expr_seeds_parse_and_roundtrip() {
    let all = seeds("parse_expr");
    assert!(all.len() >= 4);
    for (name, data) in all {
        let (&head, rest) = data.split_first().unwrap();
        let src = std::str::from_utf8(rest).unwrap();
        let (context, n) = match head % 3 {
            0 => (Context::Ring, 1 + (head as usize / 3) % 5),
            1 => (Context::Algebra, 1 + (head as usize / 3) % 4),
            _ => (Context::K0, [3, 5, 7][(head as usize / 3) % 3]),
        };
        let v = parse_expr(src, n, context).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_expr(&v.to_string(), n, context).unwrap(), v, "{name}");
    }
}

#[test]
fn pcomplex_seeds_decode() {
    let all = seeds("pcomplex_json");
    assert!(all.len() >= 2);
    for (name, data) in all {
        let src = std::str::from_utf8(&data).unwrap();
        let c = parse_json(src, 5).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(c.verify_p_nilpotent(), "{name}");
        assert_eq!(c.jordan_blocks().iter().map(|b| b.size).sum::<usize>(), c.total_dim(), "{name}");
    }
}
