//! Frozen values from independent computations: a separate symbolic
//! implementation of `d_n` on `R_n`, closed-form counts, and hand expansions.

use std::collections::BTreeMap;

use nilhecke::coeff::Int;
use nilhecke::cyclo::{CycloElement, QLambda};
use nilhecke::derivations::{dn, DerivationKind, DerivationSpec, Sl2Op};
use nilhecke::extpoly::ExtPolynomial;
use nilhecke::ktheory::{categorified_e_class, e_class};
use nilhecke::parse::{parse_expr, Context, Parsed};
use nilhecke::pcomplex::{parse_json, Block};
use nilhecke::sl2rep::{conabla_character, nilhecke_length_character, omega_character, scan_slice, weyl_dimension};

type P = ExtPolynomial<Int>;

fn ring(src: &str, n: usize) -> P {
    match parse_expr(src, n, Context::Ring).unwrap() {
        Parsed::Ring(p) => p,
        other => panic!("{other:?}"),
    }
}

fn algebra(src: &str, n: usize) -> String {
    parse_expr(src, n, Context::Algebra).unwrap().to_string()
}

// (n, f, d_n(f)) from a standalone sympy implementation of d_n.
const D_CASES: [(usize, &str, &str); 4] = [
    (
        3,
        "x1^2*x2*w1*w2",
        "(2*x1^3*x2 + x1^2*x2^2)*w1*w2 + (-x1^2*x2^2*x3^2 + x1^2*x2*x3^3)*w2*w3 + (x1^2*x2*x3^2)*w1*w3",
    ),
    (
        4,
        "w1*w3 + x4^3",
        "(x2^2 + x3^2 + x4^2)*w2*w3 + (-x2*x3*x4^2 + x2*x4^3 + x3*x4^3 - x4^4)*w3*w4 + (x4^2)*w1*w4 + (3*x4^4)",
    ),
    (
        5,
        "x1*w1*w2*w3",
        "(x1^2)*w1*w2*w3 + (x1*x2*x3*x4^2 + x1*x2*x3*x5^2 - x1*x2*x4^3 - x1*x2*x5^3 - x1*x3*x4^3 - x1*x3*x5^3 \
         + x1*x4^4 + x1*x5^4)*w2*w3*w4 + (x1*x2*x3*x4*x5^2 - x1*x2*x3*x5^3 - x1*x2*x4*x5^3 + x1*x2*x5^4 \
         - x1*x3*x4*x5^3 + x1*x3*x5^4 + x1*x4*x5^4 - x1*x5^5)*w2*w3*w5 + (-x1*x3*x4^2 - x1*x3*x5^2 + x1*x4^3 \
         + x1*x5^3)*w1*w3*w4 + (-x1*x3*x4*x5^2 + x1*x3*x5^3 + x1*x4*x5^3 - x1*x5^4)*w1*w3*w5 \
         + (x1*x4^2 + x1*x5^2)*w1*w2*w4 + (x1*x4*x5^2 - x1*x5^3)*w1*w2*w5",
    ),
    (2, "x1*x2*w1", "(x1^2*x2 + x1*x2^2)*w1 + (x1*x2^3)*w2"),
];

#[test]
fn d_matches_symbolic_oracle() {
    for (n, f, want) in D_CASES {
        assert_eq!(dn::<Int>(n, ()).apply(&ring(f, n)), ring(want, n), "d_{n}({f})");
    }
    let d = dn::<Int>(3, ());
    assert_eq!(
        d.apply_pow(&ring("w1", 3), 2),
        ring("(2*x2^3 + 2*x3^3)*w2 + (2*x2^2*x3^2 + 2*x2*x3^3 - 2*x3^4)*w3", 3)
    );
}

#[test]
fn printed_forms() {
    assert_eq!(ring("x1*x2 + 3", 2).to_string(), "x1*x2 + 3");
    assert_eq!(ring("x2*2*w1*x1^2*w3 - w2", 3).to_string(), "2*x1^2*x2*w1*w3 - w2");
    assert_eq!(algebra("T1*x1 - x2*T1", 2), "1");
    assert_eq!(algebra("w1*w1", 2), "0");
    assert_eq!(algebra("T1*T1", 2), "0");
    assert_eq!(algebra("T1*x1", 2), "1 + x2*T1");
}

#[test]
fn sl2_on_small_elements() {
    let h = DerivationSpec::<Int>::new(DerivationKind::Sl2(Sl2Op::H), 2, ()).unwrap();
    assert_eq!(h.apply(&ring("x1^3", 2)), ring("6*x1^3", 2));
    assert_eq!(h.apply(&ring("w1", 2)), ring("2*x2*w2", 2));
    let e = DerivationSpec::<Int>::new(DerivationKind::Sl2(Sl2Op::E), 2, ()).unwrap();
    assert_eq!(e.apply(&ring("x1", 2)), ring("x1^2", 2));
}

fn char_of(pairs: &[(i64, u64)]) -> BTreeMap<i64, u64> {
    pairs.iter().copied().collect()
}

#[test]
fn characters() {
    // C(d+2, 2) in degree 2d
    assert_eq!(conabla_character(3, 8).0, char_of(&[(0, 1), (2, 3), (4, 6), (6, 10), (8, 15)]));
    // 2-subsets of {1,2,3}: sums 3, 4, 5
    assert_eq!(omega_character(3, 2).0, char_of(&[(-10, 1), (-8, 1), (-6, 1)]));
    assert_eq!(omega_character(4, 0).0, char_of(&[(0, 1)]));
    // (1)(1 + q^-2)(1 + q^-2 + q^-4)
    assert_eq!(nilhecke_length_character(3).0, char_of(&[(-6, 1), (-4, 2), (-2, 2), (0, 1)]));
    assert_eq!(nilhecke_length_character(4).total(), 24);
}

fn slice_dim_by_count(n: usize, m: u64) -> usize {
    let binom = |a: u64, b: u64| (0..b).fold(1u64, |acc, i| acc * (a - i) / (i + 1));
    (0u32..1 << n)
        .map(|s| {
            let sum: u64 = (0..n).filter(|i| s >> i & 1 == 1).map(|i| i as u64 + 1).sum();
            binom(m / 2 + sum + n as u64 - 1, n as u64 - 1) as usize
        })
        .sum()
}

#[test]
fn slice_dimensions() {
    let frozen2 = [10, 14, 18, 22, 26];
    let frozen3 = [94, 134, 182, 238, 302];
    for (k, (d2, d3)) in frozen2.iter().zip(frozen3).enumerate() {
        let m = 2 * k as u32;
        assert_eq!(scan_slice(2, m).dim, *d2);
        assert_eq!(slice_dim_by_count(2, m as u64), *d2);
        assert_eq!(slice_dim_by_count(3, m as u64), d3);
    }
    assert_eq!(scan_slice(3, 2).dim, 134);
    assert_eq!(scan_slice(2, 3).dim, 0);
}

#[test]
fn weyl_dimensions() {
    assert_eq!(weyl_dimension(&[3]), Some(4));
    assert_eq!(weyl_dimension(&[1, 0]), Some(3));
    assert_eq!(weyl_dimension(&[1, 1]), Some(8));
    assert_eq!(weyl_dimension(&[2, 0]), Some(6));
    assert_eq!(weyl_dimension(&[1, 0, 0]), Some(4));
    assert_eq!(weyl_dimension(&[-1, 0]), None);
}

fn qlam(p: u64, terms: &[(i64, i64, i64)]) -> QLambda {
    terms.iter().fold(QLambda::zero(p), |acc, &(qe, le, c)| {
        &acc + &QLambda::monomial(CycloElement::from_int_laurent(p, &[(qe, c)]), le)
    })
}

#[test]
fn e_class_values() {
    // [2](λq^-2 - λ^-1 q^2) = λ(q^-1 + q^-3) - λ^-1(q + q^3)
    for p in [5u64, 7] {
        let want = qlam(p, &[(-1, 1, 1), (-3, 1, 1), (1, -1, -1), (3, -1, -1)]);
        assert_eq!(e_class(p, 2), want);
        assert_eq!(categorified_e_class(2, p).value, want);
    }
    // [3] = q^-2 + 1 + q^2
    let want = qlam(7, &[(-5, 1, 1), (-3, 1, 1), (-1, 1, 1), (1, -1, -1), (3, -1, -1), (5, -1, -1)]);
    assert_eq!(categorified_e_class(3, 7).value, want);
    // [p] = 0
    assert!(e_class(5, 5).is_zero());
}

#[test]
fn pcomplex_json_blocks() {
    let src = r#"{
        "pieces": [
            {"q": 0, "lambda": 0, "parity": 0, "dim": 2},
            {"q": 2, "lambda": 0, "parity": 0, "dim": 1},
            {"q": 4, "lambda": 0, "parity": 0, "dim": 1}
        ],
        "maps": [
            {"from": {"q": 0, "lambda": 0, "parity": 0}, "to": {"q": 2, "lambda": 0, "parity": 0}, "matrix": [[1, 0]]},
            {"from": {"q": 2, "lambda": 0, "parity": 0}, "to": {"q": 4, "lambda": 0, "parity": 0}, "matrix": [[4]]}
        ]
    }"#;
    let c = parse_json(src, 5).unwrap();
    assert!(c.verify_p_nilpotent());
    let mut b = c.jordan_blocks();
    b.sort();
    let mut want = vec![Block { size: 3, q: 0, lambda: 0, parity: 0 }, Block { size: 1, q: 0, lambda: 0, parity: 0 }];
    want.sort();
    assert_eq!(b, want);
    // q^0 + q^2 + q^4 plus q^0
    assert_eq!(c.k0_symbol(), qlam(5, &[(0, 0, 2), (2, 0, 1), (4, 0, 1)]));
    assert!(parse_json(src, 4).is_err());
    assert!(parse_json(&src.replace("\"q\": 4, \"lambda\": 0, \"parity\": 0}, \"matrix\"", "\"q\": 6, \"lambda\": 0, \"parity\": 0}, \"matrix\""), 5).is_err());
}
