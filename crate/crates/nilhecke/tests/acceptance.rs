//! The twelve acceptance criteria, one PASS/FAIL line each.

use std::io::Write;

use nilhecke::coeff::Int;
use nilhecke::derivations::{alpha_poly, dn};
use nilhecke::extpoly::ExtPolynomial;
use nilhecke::suite::run_all;

#[test]
fn acceptance_criteria() {
    let crits = run_all();
    let mut out = std::io::stdout().lock();
    for c in &crits {
        // written straight to stdout so the lines survive output capture
        writeln!(out, "{}", c.line()).unwrap();
    }
    let failed: Vec<u8> = crits.iter().filter(|c| !c.passed()).map(|c| c.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

#[test]
fn r5_alpha_printed() {
    let expect = [
        (1, 2, "x2^2 + x3^2 + x4^2 + x5^2"),
        (1, 3, "x2*x3^2 + x2*x4^2 + x2*x5^2 - x3^3 - x4^3 - x5^3"),
        (1, 4, "x2*x3*x4^2 + x2*x3*x5^2 - x2*x4^3 - x2*x5^3 - x3*x4^3 - x3*x5^3 + x4^4 + x5^4"),
        (1, 5, "x2*x3*x4*x5^2 - x2*x3*x5^3 - x2*x4*x5^3 + x2*x5^4 - x3*x4*x5^3 + x3*x5^4 + x4*x5^4 - x5^5"),
        (2, 3, "x3^2 + x4^2 + x5^2"),
        (2, 4, "x3*x4^2 + x3*x5^2 - x4^3 - x5^3"),
        (2, 5, "x3*x4*x5^2 - x3*x5^3 - x4*x5^3 + x5^4"),
        (3, 4, "x4^2 + x5^2"),
        (3, 5, "x4*x5^2 - x5^3"),
        (4, 5, "x5^2"),
    ];
    for (i, j, s) in expect {
        assert_eq!(alpha_poly::<Int>(i, j, 5, ()).unwrap().to_string(), s, "alpha_{i},{j}");
    }
}

#[test]
fn r5_d_on_omegas_printed() {
    let d = dn::<Int>(5, ());
    let w = |i| ExtPolynomial::<Int>::w(5, (), i);
    assert_eq!(d.apply(&w(3)).to_string(), "x4^2*w4 + x4*x5^2*w5 - x5^3*w5 + x5^2*w4");
    assert_eq!(d.apply(&w(4)).to_string(), "x5^2*w5");
    assert_eq!(d.apply(&w(5)).to_string(), "0");
    assert_eq!(
        d.apply(&w(2)).to_string(),
        "x3^2*w3 + x3*x4^2*w4 + x3*x4*x5^2*w5 - x3*x5^3*w5 + x3*x5^2*w4 - x4^3*w4 + x4^2*w3 - x4*x5^3*w5 + x5^4*w5 - x5^3*w4 + x5^2*w3"
    );
}
