use proptest::prelude::*;

use nilhecke::coeff::{Fp, Int};
use nilhecke::cyclo::{CycloElement, QLambda};
use nilhecke::derivations::{dn, partial, DerivationKind, DerivationSpec, SlnOp};
use nilhecke::ennilhecke::{acts_as_zero, AnDerivation, AnElement};
use nilhecke::extpoly::{ExtPolynomial, Mono, Permutation};
use nilhecke::ktheory::K0Vector;
use nilhecke::parse::{parse_expr, Context, Parsed};
use nilhecke::pcomplex::{Block, GradedPComplex};

type P = ExtPolynomial<Int>;
type A = AnElement<Int>;

fn poly(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = P> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), 0u32..(1 << n), -3i64..=3), 0..=max_terms).prop_map(
        move |terms| {
            terms.into_iter().fold(P::zero(n, ()), |acc, (x, w, c)| acc.add(&P::term(n, (), Mono { x, w }, Int::Small(c))))
        },
    )
}

fn an_element(n: usize) -> impl Strategy<Value = A> {
    let perms = Permutation::all(n);
    let k = perms.len();
    prop::collection::vec((poly(n, 1, 2), 0..k), 0..=3).prop_map(move |parts| {
        parts.into_iter().fold(A::zero(n, ()), |acc, (f, i)| acc.add(&A::monomial(f, perms[i].clone())))
    })
}

fn rank_and<T: std::fmt::Debug>(f: impl Fn(usize) -> BoxedStrategy<T>) -> impl Strategy<Value = (usize, T)> {
    (1usize..=3).prop_flat_map(move |n| f(n).prop_map(move |t| (n, t)))
}

fn ring_ops(n: usize) -> Vec<DerivationSpec<Int>> {
    let mut ops = vec![dn::<Int>(n, ())];
    ops.extend((1..=n).map(|r| partial::<Int>(r, n, ())));
    for k in -1..=2 {
        ops.push(DerivationSpec::new(DerivationKind::Witt(k), n, ()).unwrap());
    }
    for i in 1..n {
        ops.push(DerivationSpec::new(DerivationKind::Sln(SlnOp::E(i)), n, ()).unwrap());
        ops.push(DerivationSpec::new(DerivationKind::Sln(SlnOp::F(i)), n, ()).unwrap());
    }
    ops.push(DerivationSpec::new(DerivationKind::DegQ, n, ()).unwrap());
    ops
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_is_associative_and_distributive((n, (a, b, c)) in rank_and(|n| (poly(n, 2, 4), poly(n, 2, 4), poly(n, 2, 4)).boxed())) {
        let _ = n;
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).sub(&b), a);
    }

    #[test]
    fn ring_is_supercommutative((n, (x1, w1, x2, w2)) in rank_and(|n| (prop::collection::vec(0..=2u32, n), 0u32..(1 << n), prop::collection::vec(0..=2u32, n), 0u32..(1 << n)).boxed())) {
        let a = P::term(n, (), Mono { x: x1, w: w1 }, Int::Small(1));
        let b = P::term(n, (), Mono { x: x2, w: w2 }, Int::Small(1));
        let sign = if w1.count_ones() % 2 == 1 && w2.count_ones() % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(a.mul(&b), b.mul(&a).scale_int(sign));
    }

    #[test]
    fn derivations_obey_leibniz((n, (f, g)) in rank_and(|n| (poly(n, 2, 3), poly(n, 2, 3)).boxed())) {
        for d in ring_ops(n) {
            prop_assert_eq!(d.apply(&f.mul(&g)), d.apply(&f).mul(&g).add(&f.mul(&d.apply(&g))), "{}", d.kind);
        }
    }

    #[test]
    fn twisted_d_obeys_module_leibniz((n, (f, g, alpha)) in rank_and(|n| (poly(n, 2, 3), poly(n, 2, 3), prop::collection::vec(-3i64..=3, n)).boxed())) {
        let d = dn::<Int>(n, ());
        let tw = DerivationSpec::<Int>::new(DerivationKind::TwistedDn(alpha), n, ()).unwrap();
        prop_assert_eq!(tw.apply(&f.mul(&g)), d.apply(&f).mul(&g).add(&f.mul(&tw.apply(&g))));
    }

    #[test]
    fn d_commutes_with_symmetric_group((n, f) in rank_and(|n| poly(n, 3, 4).boxed())) {
        let d = dn::<Int>(n, ());
        for j in 1..n {
            prop_assert_eq!(d.apply(&f).s(j), d.apply(&f.s(j)));
        }
    }

    #[test]
    fn demazure_twisted_leibniz((n, (f, g)) in rank_and(|n| (poly(n, 2, 3), poly(n, 2, 3)).boxed())) {
        for j in 1..n {
            prop_assert_eq!(f.mul(&g).t(j), f.t(j).mul(&g).add(&f.s(j).mul(&g.t(j))));
        }
    }

    #[test]
    fn d_to_the_p_vanishes_mod_p((n, f) in rank_and(|n| poly(n, 3, 3).boxed()), pi in 0usize..3) {
        let p = [5u64, 7, 11][pi];
        let fp = f.reduce_mod(p);
        let d = dn::<Fp>(n, p);
        prop_assert!(d.apply_pow(&fp, p as u32).is_zero());
    }

    #[test]
    fn parse_print_roundtrip_ring((n, f) in rank_and(|n| poly(n, 3, 5).boxed())) {
        let s = f.to_string();
        prop_assert_eq!(parse_expr(&s, n, Context::Ring).unwrap(), Parsed::Ring(f), "{}", s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn algebra_is_associative_and_acts((n, (x, y, z)) in rank_and(|n| (an_element(n), an_element(n), an_element(n)).boxed()), f in poly(3, 2, 3)) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        let f = if f.n() == n { f } else { P::x(n, (), 1).pow(2).add(&P::w(n, (), n)) };
        prop_assert_eq!(x.mul(&y).act(&f), x.act(&y.act(&f)));
    }

    #[test]
    fn d_a_is_a_derivation_of_an((n, (x, y)) in rank_and(|n| (an_element(n), an_element(n)).boxed()), a in -2i64..=2) {
        let d = AnDerivation::<Int>::new(a, n, ());
        prop_assert_eq!(d.apply(&x.mul(&y)), d.apply(&x).mul(&y).add(&x.mul(&d.apply(&y))));
    }

    #[test]
    fn action_is_faithful((n, x) in rank_and(|n| an_element(n).boxed())) {
        let _ = n;
        prop_assert_eq!(x.is_zero(), acts_as_zero(&x));
    }

    #[test]
    fn parse_print_roundtrip_algebra((n, x) in rank_and(|n| an_element(n).boxed())) {
        let s = x.to_string();
        prop_assert_eq!(parse_expr(&s, n, Context::Algebra).unwrap(), Parsed::Algebra(x), "{}", s);
    }

    #[test]
    fn parse_print_roundtrip_k0(pi in 0usize..3, terms in prop::collection::vec((0usize..3, -3i64..=3, -2i64..=2, -3i64..=3), 0..=5)) {
        let p = [3u64, 5, 7][pi];
        let v = terms.into_iter().fold(K0Vector::zero(p, "A"), |acc, (i, qe, le, c)| {
            let s = QLambda::monomial(CycloElement::from_int_laurent(p, &[(qe, c)]), le);
            acc.add(&K0Vector::k0_basis(p, i).scale(&s))
        });
        let s = v.to_string();
        prop_assert_eq!(parse_expr(&s, p as usize, Context::K0).unwrap(), Parsed::K0(v), "{}", s);
    }

    #[test]
    fn jordan_blocks_roundtrip(pi in 0usize..2, raw in prop::collection::vec((1usize..=7, -4i64..=4, -1i64..=1, 0u8..=1), 1..=5)) {
        let p = [5u64, 7][pi];
        let mut blocks: Vec<Block> = raw.into_iter().map(|(s, q, l, par)| Block { size: s.min(p as usize), q: 2 * q, lambda: l, parity: par }).collect();
        let c = GradedPComplex::<Fp>::from_blocks(p, p, &blocks);
        prop_assert!(c.verify_p_nilpotent());
        let mut got = c.jordan_blocks();
        got.sort();
        blocks.sort();
        prop_assert_eq!(got, blocks);
    }
}
