//! The acceptance battery: one entry per criterion, each a list of checks
//! plus an optional time budget.

use std::time::{Duration, Instant};

use crate::coeff::Int;
use crate::cyclo::QLambda;
use crate::derivations::{
    alpha_poly, alpha_relation_checks, dk_power_formula_check, dn, dn_as_partials_check, equivariance_check, nilpotency_check,
    omega_checks, partial_checks, phi_prime_equivariance_check, symmetric_lemma_checks,
};
use crate::ennilhecke::{an_nilpotency_check, epsilon_checks, phi_inclusion_checks, verify_relations};
use crate::extpoly::ExtPolynomial;
use crate::ktheory::{categorified_e_class, d_matrix_consistency, verify_iso, verify_uqsl2, Model};
use crate::parse::{parse_expr, Context, Parsed};
use crate::report::Check;
use crate::sl2rep::{an_filtration_check, conjecture_scan, filtration_check, verify_sl2_suite};

type P = ExtPolynomial<Int>;

/// `α_{i,j}` in `R_5` as written out by hand, with the Demazure word that
/// produces it from `α_{1,5}` (applied right to left) and its sign.
pub const R5_ALPHA: [(usize, usize, &str, &[usize], i64); 10] = [
    (1, 5, "x5^2*(x2-x5)*(x3-x5)*(x4-x5)", &[], 1),
    (1, 4, "x4^2*(x2-x4)*(x3-x4)+x5^2*(x2-x5)*(x3-x5)", &[4], 1),
    (1, 3, "x3^2*(x2-x3)+x4^2*(x2-x4)+x5^2*(x2-x5)", &[3, 4], 1),
    (1, 2, "x2^2+x3^2+x4^2+x5^2", &[2, 3, 4], 1),
    (2, 5, "x5^2*(x3-x5)*(x4-x5)", &[1], -1),
    (2, 4, "x5^2*(x3-x5)+x4^2*(x3-x4)", &[4, 1], -1),
    (2, 3, "x5^2+x4^2+x3^2", &[3, 4, 1], -1),
    (3, 5, "x5^2*(x4-x5)", &[2, 1], 1),
    (3, 4, "x5^2+x4^2", &[4, 2, 1], 1),
    (4, 5, "x5^2", &[3, 2, 1], -1),
];

/// `d_5(ω_i)` as written out by hand.
pub const R5_D_OMEGA: [&str; 5] = [
    "(x2^2+x3^2+x4^2+x5^2)*w2+(x3^2*(x2-x3)+x4^2*(x2-x4)+x5^2*(x2-x5))*w3\
     +(x4^2*(x2-x4)*(x3-x4)+x5^2*(x2-x5)*(x3-x5))*w4+x5^2*(x2-x5)*(x3-x5)*(x4-x5)*w5",
    "(x5^2+x4^2+x3^2)*w3+(x5^2*(x3-x5)+x4^2*(x3-x4))*w4+x5^2*(x3-x5)*(x4-x5)*w5",
    "(x5^2+x4^2)*w4+x5^2*(x4-x5)*w5",
    "x5^2*w5",
    "0",
];

fn ring5(src: &str) -> P {
    match parse_expr(src, 5, Context::Ring) {
        Ok(Parsed::Ring(p)) => p,
        other => panic!("bad literal {src}: {other:?}"),
    }
}

/// The worked `R_5` example: every `α_{i,j}`, its Demazure description, and `d_5(ω_i)`.
pub fn r5_example_checks() -> Vec<Check> {
    let n = 5;
    let a15 = alpha_poly::<Int>(1, 5, n, ()).unwrap();
    let mut out = Vec::new();
    for (i, j, src, word, sign) in R5_ALPHA {
        let a = alpha_poly::<Int>(i, j, n, ()).unwrap();
        out.push(Check::eq(format!("alpha_{i},{j} in R_5"), &a, &ring5(src)));
        if !word.is_empty() {
            let t = word.iter().rev().fold(a15.clone(), |acc, &k| acc.t(k)).scale_int(sign);
            let w: Vec<String> = word.iter().map(|k| format!("T{k}")).collect();
            let s = if sign < 0 { "-" } else { "" };
            out.push(Check::eq(format!("alpha_{i},{j} = {s}{}(alpha_1,5)", w.join("")), &a, &t));
        }
    }
    let d = dn::<Int>(n, ());
    for (i, src) in R5_D_OMEGA.iter().enumerate() {
        out.push(Check::eq(format!("d_5(w{}) in R_5", i + 1), &d.apply(&P::w(n, (), i + 1)), &ring5(src)));
    }
    out
}

/// One acceptance criterion after running.
#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl Criterion {
    pub fn within_budget(&self) -> bool {
        self.budget.is_none_or(|b| self.elapsed <= b)
    }

    pub fn passed(&self) -> bool {
        self.within_budget() && self.checks.iter().all(|c| c.equal)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.equal)
    }

    /// `PASS [n] title (k checks, t ms)` or the first failing check.
    pub fn line(&self) -> String {
        let ms = self.elapsed.as_millis();
        let mut s = format!(
            "{} [{:02}] {} ({} checks, {} ms)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checks.len(),
            ms
        );
        if let Some(c) = self.first_failure() {
            s += &format!(": {}: {} | {}", c.name, c.lhs, c.rhs);
        } else if !self.within_budget() {
            s += &format!(": over budget of {} ms", self.budget.unwrap().as_millis());
        }
        s
    }
}

pub const TITLES: [&str; 12] = [
    "R_5 example",
    "defining relations n=1..4, D=12",
    "p-nilpotency of d on R_n and A_n",
    "equivariance and the maps phi', phi, Omega",
    "partial derivatives and powers of d",
    "symmetric function lemmas",
    "idempotent epsilon_n",
    "small quantum group on K0 and Verma",
    "categorified E and the d-matrix",
    "sl2 and Witt relations",
    "filtrations by omega-monomials",
    "conjecture scan",
];

fn budget(id: u8) -> Option<Duration> {
    let s = match id {
        1 => 5,
        2 => 60,
        3 => 120,
        8 => 10,
        12 => 300,
        _ => return None,
    };
    Some(Duration::from_secs(s))
}

fn checks_for(id: u8) -> Vec<Check> {
    let mut out = Vec::new();
    match id {
        1 => {
            out = r5_example_checks();
            out.extend(alpha_relation_checks(5));
        }
        2 => {
            for n in 1..=4 {
                out.extend(verify_relations(n, 12));
            }
        }
        3 => {
            for p in [3u64, 5, 7] {
                for n in 1..p as usize {
                    out.extend(nilpotency_check(p, n));
                    out.extend(an_nilpotency_check(p, n, 1));
                }
            }
        }
        4 => {
            for n in 1..=4 {
                out.extend(equivariance_check(n, 10));
                out.extend(phi_prime_equivariance_check(n));
                out.extend(phi_inclusion_checks(n, 1));
            }
            for n in 1..=6 {
                out.extend(omega_checks(n));
            }
        }
        5 => {
            for n in 1..=4 {
                out.extend(partial_checks(n, 10));
                out.push(dn_as_partials_check(n, 10));
                out.extend(dk_power_formula_check(n, 4));
            }
        }
        6 => {
            for n in 1..=5 {
                out.extend(symmetric_lemma_checks(n, 5));
            }
        }
        7 => {
            for n in 1..=4 {
                out.extend(epsilon_checks(n));
            }
        }
        8 => {
            for p in [3u64, 5, 7] {
                out.extend(verify_uqsl2(p, &Model::K0));
                out.extend(verify_uqsl2(p, &Model::Verma(QLambda::q_lambda(p, -1, 1))));
                out.extend(verify_iso(p));
            }
        }
        9 => {
            for p in [3u64, 5, 7] {
                for n in 1..p as usize {
                    out.extend(categorified_e_class(n, p).checks);
                }
            }
            for p in [3u64, 5] {
                for n in 1..=3 {
                    out.extend(d_matrix_consistency(n, p, 2 * p as u32));
                }
            }
        }
        10 => {
            for n in 1..=3 {
                out.extend(verify_sl2_suite(n, 12));
            }
        }
        11 => {
            for n in 1..=4 {
                for m in 0..=n {
                    out.extend(filtration_check(n, m, 10));
                    out.extend(an_filtration_check(n, m, 10));
                }
            }
        }
        12 => {
            let (_, checks) = conjecture_scan(2, 8);
            let plus: Vec<String> = checks.iter().filter(|c| c.name.contains("plus") && !c.equal).map(|c| c.name.clone()).collect();
            out.extend(checks.into_iter().filter(|c| !c.name.contains("plus")));
            out.push(Check::holds("R_2 plus reading (informational)", true, format!("disagrees in {} slices", plus.len())));
            let (slices, _) = conjecture_scan(3, 8);
            let minus = slices.iter().filter(|s| s.matches_minus()).count();
            let plus = slices.iter().filter(|s| s.matches_plus()).count();
            let dims = slices.iter().all(|s| s.weyl_total == Some(s.dim as u64));
            out.push(Check::holds(
                "R_3 scan completes (informational)",
                true,
                format!("{} slices; minus reading matches {minus}, plus reading matches {plus}, dimensions consistent: {dims}", slices.len()),
            ));
        }
        _ => panic!("no criterion {id}"),
    }
    out
}

pub fn run_criterion(id: u8) -> Criterion {
    assert!((1..=12).contains(&id), "criteria are numbered 1..=12");
    let start = Instant::now();
    let checks = checks_for(id);
    Criterion { id, title: TITLES[id as usize - 1], checks, elapsed: start.elapsed(), budget: budget(id) }
}

pub fn run_all() -> Vec<Criterion> {
    (1..=12).map(run_criterion).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r5_literals() {
        for c in r5_example_checks() {
            assert!(c.equal, "{c:?}");
        }
    }
}
