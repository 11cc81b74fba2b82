//! The sl₂ and Witt actions on `R_n` and `A_n`: relation suites, the
//! filtrations by ω-monomials with their characters, and a highest-weight
//! scanner for the sl_n action on q-degree slices.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{Coeff, Int, Rat};
use crate::derivations::{DerivationKind, DerivationSpec, Sl2Op, SlnOp};
use crate::ennilhecke::{gen_element, random_words, AnDerivation, AnElement, Gen, WordExpr};
use crate::extpoly::{monomials_up_to, monomials_with_omega, wset_cmp, ExtPolynomial, Mono, Permutation};
use crate::linalg::{kernel, rank, solve, Matrix};
use crate::report::Check;

type P = ExtPolynomial<Int>;

fn one() -> Int {
    Int::Small(1)
}

fn mono_poly(n: usize, m: &Mono) -> P {
    P::term(n, (), m.clone(), one())
}

fn omega_sum(w: u32) -> i64 {
    (0..32).filter(|i| w >> i & 1 == 1).map(|i| i as i64 + 1).sum()
}

fn omega_name(w: u32) -> String {
    if w == 0 {
        return "1".into();
    }
    (0..32).filter(|i| w >> i & 1 == 1).map(|i| format!("w{}", i + 1)).collect::<Vec<_>>().join("*")
}

/// The `m`-element ω-subsets of `{1..n}` in lexicographic order of their
/// index lists, so `ω_1⋯ω_m` comes first and `ω_{n-m+1}⋯ω_n` last.
#[derive(Clone, Debug)]
pub struct OmegaMonomialOrder {
    pub n: usize,
    pub m: usize,
    pub subsets: Vec<u32>,
}

impl OmegaMonomialOrder {
    pub fn new(n: usize, m: usize) -> Self {
        let mut subsets: Vec<u32> = (0u32..1 << n).filter(|w| w.count_ones() as usize == m).collect();
        subsets.sort_by(|a, b| wset_cmp(*a, *b));
        OmegaMonomialOrder { n, m, subsets }
    }

    pub fn position(&self, w: u32) -> Option<usize> {
        self.subsets.iter().position(|&s| s == w)
    }

    pub fn cmp(&self, a: u32, b: u32) -> Ordering {
        wset_cmp(a, b)
    }

    pub fn first(&self) -> Option<u32> {
        self.subsets.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.subsets.last().copied()
    }
}

/// Dimensions by q-degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedCharacter(pub BTreeMap<i64, u64>);

impl GradedCharacter {
    pub fn bump(&mut self, deg: i64, k: u64) {
        if k > 0 {
            *self.0.entry(deg).or_insert(0) += k;
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&d, &k) in &o.0 {
            r.bump(d, k);
        }
        r
    }

    pub fn shift(&self, s: i64) -> Self {
        GradedCharacter(self.0.iter().map(|(&d, &k)| (d + s, k)).collect())
    }

    /// Product of two characters, keeping degrees at most `max`. Both factors
    /// must be bounded below for the truncation to be exact.
    pub fn mul_truncated(&self, o: &Self, max: i64) -> Self {
        let mut r = GradedCharacter::default();
        for (&a, &k) in &self.0 {
            for (&b, &l) in &o.0 {
                if a + b <= max {
                    r.bump(a + b, k * l);
                }
            }
        }
        r
    }

    pub fn truncate(&self, max: i64) -> Self {
        GradedCharacter(self.0.iter().filter(|(&d, _)| d <= max).map(|(&d, &k)| (d, k)).collect())
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }
}

impl fmt::Display for GradedCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(d, k)| format!("{k}q^{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `∇(0)^{⊗n}`, i.e. `Z[x_1..x_n]` with `x_i` in degree 2, up to degree `max`.
pub fn conabla_character(n: usize, max: i64) -> GradedCharacter {
    let mut c = GradedCharacter::default();
    let mut d = 0i64;
    while 2 * d <= max {
        c.bump(2 * d, binom(d as u64 + n as u64 - 1, n as u64 - 1));
        d += 1;
    }
    c
}

/// `Σ_{|S|=m} q^{-2ΣS}`, built one index at a time.
pub fn omega_character(n: usize, m: usize) -> GradedCharacter {
    // table[k] = character of k-subsets of the indices seen so far
    let mut table = vec![GradedCharacter::default(); m + 1];
    table[0].bump(0, 1);
    for i in 1..=n {
        for k in (1..=m).rev() {
            let grown = table[k - 1].shift(-2 * i as i64);
            table[k] = table[k].add(&grown);
        }
    }
    table[m].clone()
}

/// Lengths in `S_n`: `Π_{k=1}^{n} (1 + q^{-2} + ⋯ + q^{-2(k-1)})`.
pub fn nilhecke_length_character(n: usize) -> GradedCharacter {
    let mut c = GradedCharacter::default();
    c.bump(0, 1);
    for k in 1..=n {
        let mut f = GradedCharacter::default();
        for j in 0..k as i64 {
            f.bump(-2 * j, 1);
        }
        c = c.mul_truncated(&f, i64::MAX);
    }
    c
}

fn ring_op(kind: DerivationKind, n: usize) -> DerivationSpec<Int> {
    DerivationSpec::new(kind, n, ()).expect("valid derivation")
}

fn sl2(op: Sl2Op, n: usize) -> DerivationSpec<Int> {
    ring_op(DerivationKind::Sl2(op), n)
}

/// `[A, B](f)` for derivations of `R_n`.
fn bracket(a: &DerivationSpec<Int>, b: &DerivationSpec<Int>, f: &P) -> P {
    a.apply(&b.apply(f)).sub(&b.apply(&a.apply(f)))
}

/// Witt, sl₂ and gl₂ relations on `R_n`, on all monomials up to q-degree `d`.
pub fn ring_sl2_checks(n: usize, d: u32) -> Vec<Check> {
    let monos = monomials_up_to(n, d);
    let witt: BTreeMap<i64, DerivationSpec<Int>> = (-1..=6).map(|k| (k, ring_op(DerivationKind::Witt(k), n))).collect();
    let mut out = Vec::new();
    for k in -1..=3i64 {
        for r in k + 1..=3 {
            let name = format!("[l{k},l{r}] = {}*l{} on R_{n} (D={d})", r - k, k + r);
            out.push(Check::over(name, monos.iter(), |m| {
                let f = mono_poly(n, m);
                (bracket(&witt[&k], &witt[&r], &f), witt[&(k + r)].apply(&f).scale_int(r - k))
            }));
        }
    }
    let (e, f, h) = (sl2(Sl2Op::E, n), sl2(Sl2Op::F, n), sl2(Sl2Op::H, n));
    let degq = ring_op(DerivationKind::DegQ, n);
    let zero = |_: &P| P::zero(n, ());
    type Rel<'a> = (&'a str, &'a DerivationSpec<Int>, &'a DerivationSpec<Int>, Box<dyn Fn(&P) -> P + 'a>);
    let rels: Vec<Rel> = vec![
        ("[e,f] = h", &e, &f, Box::new(|g: &P| h.apply(g))),
        ("[h,e] = 2e", &h, &e, Box::new(|g: &P| e.apply(g).scale_int(2))),
        ("[h,f] = -2f", &h, &f, Box::new(|g: &P| f.apply(g).scale_int(-2))),
        ("[degq,e] = 2e", &degq, &e, Box::new(|g: &P| e.apply(g).scale_int(2))),
        ("[degq,f] = -2f", &degq, &f, Box::new(|g: &P| f.apply(g).scale_int(-2))),
        ("[degq,h] = 0", &degq, &h, Box::new(zero)),
    ];
    for (name, a, b, rhs) in rels {
        out.push(Check::over(format!("{name} on R_{n} (D={d})"), monos.iter(), |m| {
            let g = mono_poly(n, m);
            (bracket(a, b, &g), rhs(&g))
        }));
    }
    out
}

/// `e = d_1`, `f` and `h` on `A_n`, with `f(T_i) = 0` and `h(T_i) = h_t·T_i`.
/// Only `h_t = -2` gives an sl₂ action.
pub fn an_sl2_operators(n: usize, h_t: i64) -> [AnDerivation<Int>; 3] {
    let e = AnDerivation::new(1, n, ());
    let f = AnDerivation::from_parts(sl2(Sl2Op::F, n), (1..n).map(|_| AnElement::zero(n, ())).collect());
    let h = AnDerivation::from_parts(sl2(Sl2Op::H, n), (1..n).map(|i| AnElement::t(n, (), i).scale_int(h_t)).collect());
    [e, f, h]
}

struct Named(String, AnElement<Int>);

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn word_name(w: &[Gen]) -> String {
    w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*")
}

fn an_test_elements(n: usize) -> Vec<Named> {
    let mut gens: Vec<Gen> = (1..=n).map(Gen::X).collect();
    gens.extend((1..=n).map(Gen::W));
    gens.extend((1..n).map(Gen::T));
    let mut out: Vec<Named> = gens.into_iter().map(|g| Named(g.to_string(), gen_element::<Int>(g, n, ()))).collect();
    for w in random_words(0x51 + n as u64, n, 12, 3) {
        out.push(Named(word_name(&w), WordExpr::word(&w).normal_form::<Int>(n, ())));
    }
    out
}

/// sl₂ relations for the operators on `A_n`, on generators and seeded random words.
pub fn an_sl2_checks(n: usize, h_t: i64) -> Vec<Check> {
    let [e, f, h] = an_sl2_operators(n, h_t);
    let items = an_test_elements(n);
    let br = |a: &AnDerivation<Int>, b: &AnDerivation<Int>, x: &AnElement<Int>| a.apply(&b.apply(x)).sub(&b.apply(&a.apply(x)));
    let tag = if h_t == -2 { String::new() } else { format!(", h(T_i) = {h_t}T_i") };
    vec![
        Check::over(format!("[e,f] = h on A_{n}{tag}"), items.iter(), |x| (br(&e, &f, &x.1), h.apply(&x.1))),
        Check::over(format!("[h,e] = 2e on A_{n}{tag}"), items.iter(), |x| (br(&h, &e, &x.1), e.apply(&x.1).scale_int(2))),
        Check::over(format!("[h,f] = -2f on A_{n}{tag}"), items.iter(), |x| (br(&h, &f, &x.1), f.apply(&x.1).scale_int(-2))),
    ]
}

/// The full suite: `R_n` relations up to q-degree `d`, then `A_n`.
pub fn verify_sl2_suite(n: usize, d: u32) -> Vec<Check> {
    let mut out = ring_sl2_checks(n, d);
    out.extend(an_sl2_checks(n, -2));
    out
}

/// `x^b` with `2|b| - 2ΣS <= d`, i.e. basis of the `ω̲_S` layer in degree at most `d`.
fn layer_polys(n: usize, s: u32, max_q: i64) -> Vec<Mono> {
    let top = max_q + 2 * omega_sum(s);
    if top < 0 {
        return Vec::new();
    }
    (0..=(top / 2) as u32).flat_map(|t| monomials_with_omega(n, s, t)).collect()
}

/// `e = Σ x_i²∂_i`, `f = -Σ ∂_i`, `h = 2Σ x_i∂_i` on `x^b`, written with ω-part `s`.
fn pol_op(op: Sl2Op, b: &[u32], s: u32) -> P {
    let n = b.len();
    let mut r = P::zero(n, ());
    for i in 0..n {
        if b[i] == 0 && op != Sl2Op::E {
            continue;
        }
        let mut x = b.to_vec();
        let c = match op {
            Sl2Op::E => {
                x[i] += 1;
                b[i] as i64
            }
            Sl2Op::F => {
                x[i] -= 1;
                -(b[i] as i64)
            }
            Sl2Op::H => 2 * b[i] as i64,
        };
        if c != 0 {
            r = r.add(&P::term(n, (), Mono { x, w: s }, Int::Small(c)));
        }
    }
    r
}

const SL2_OPS: [(Sl2Op, &str); 3] = [(Sl2Op::E, "e"), (Sl2Op::F, "f"), (Sl2Op::H, "h")];

/// The filtration of `(R_n)^{2m}` by ω-monomials: each operator never lowers
/// the ω-part, acts on the bottom layer as on polynomials, and each layer has
/// the character of `∇(0)^{⊗n}` shifted by `deg_q ω̲`.
pub fn filtration_check(n: usize, m: usize, d: u32) -> Vec<Check> {
    let order = OmegaMonomialOrder::new(n, m);
    let dq = d as i64;
    let mut out = Vec::new();
    let basis: Vec<(u32, Mono)> =
        order.subsets.iter().flat_map(|&s| layer_polys(n, s, dq).into_iter().map(move |x| (s, x))).collect();
    for (op, name) in SL2_OPS {
        let spec = sl2(op, n);
        let mut order_fail = None;
        let mut quot_fail = None;
        for (s, x) in &basis {
            let img = spec.apply(&mono_poly(n, x));
            if order_fail.is_none() {
                if let Some((bad, _)) = img.terms().find(|(t, _)| wset_cmp(t.w, *s) == Ordering::Less) {
                    order_fail = Some(format!("{name}({x}) has term {bad}"));
                }
            }
            if quot_fail.is_none() {
                let bottom = img.omega_component(*s);
                let expect = pol_op(op, &x.x, *s);
                if bottom != expect {
                    quot_fail = Some((x.clone(), bottom, expect));
                }
            }
        }
        let tag = format!("(n={n}, m={m}, D={d})");
        out.push(Check::holds(
            format!("{name} never lowers the omega order {tag}"),
            order_fail.is_none(),
            order_fail.unwrap_or_else(|| format!("{} basis monomials", basis.len())),
        ));
        out.push(match quot_fail {
            None => {
                let s = format!("agree on {} basis monomials", basis.len());
                Check::new(format!("{name} on each layer is the polynomial operator {tag}"), s.clone(), s, true)
            }
            Some((x, l, r)) => Check::new(format!("{name} on each layer is the polynomial operator {tag}"), l.to_string(), r.to_string(), false)
                .detail(format!("fails at {x}")),
        });
    }
    let mut graded = GradedCharacter::default();
    for &s in &order.subsets {
        let mut layer = GradedCharacter::default();
        for x in layer_polys(n, s, dq) {
            layer.bump(x.bidegree().0, 1);
        }
        let expect = conabla_character(n, dq + 2 * omega_sum(s)).shift(-2 * omega_sum(s));
        out.push(Check::eq(format!("char of layer {} = char nabla(0)^{n} shifted (m={m}, D={d})", omega_name(s)), &layer, &expect));
        graded = graded.add(&layer);
    }
    let floor = -2 * (n * (n + 1) / 2) as i64;
    let total = omega_character(n, m).mul_truncated(&conabla_character(n, dq - floor), dq);
    out.push(Check::eq(format!("sum of layer chars = char (R_{n})^{} (D={d})", 2 * m), &graded, &total));
    out
}

/// The same filtration on `A_n^{2m}` with layers `ω̲_S·nh_n`, where `nh_n`
/// is the ω-free part of `A_n`.
pub fn an_filtration_check(n: usize, m: usize, d: u32) -> Vec<Check> {
    let order = OmegaMonomialOrder::new(n, m);
    let dq = d as i64;
    let perms = Permutation::all(n);
    let ops = an_sl2_operators(n, -2);
    let ring_ops: Vec<DerivationSpec<Int>> = SL2_OPS.iter().map(|(o, _)| sl2(*o, n)).collect();
    let mut out = Vec::new();
    let tag = format!("(n={n}, m={m}, D={d})");
    let mut count = 0usize;
    let mut fails: [(Option<String>, Option<(String, String, String)>); 3] = Default::default();
    // images of T_w under each operator
    let tw: Vec<Vec<AnElement<Int>>> =
        ops.iter().map(|o| perms.iter().map(|w| if w.is_identity() { AnElement::zero(n, ()) } else { o.apply_tw(w) }).collect()).collect();
    let mut layer_chars = Vec::new();
    for &s in &order.subsets {
        let wpoly = P::term(n, (), Mono { x: vec![0; n], w: s }, one());
        let mut layer = GradedCharacter::default();
        for (wi, w) in perms.iter().enumerate() {
            let len = w.length() as i64;
            for x in layer_polys(n, s, dq + 2 * len) {
                count += 1;
                layer.bump(x.bidegree().0 - 2 * len, 1);
                let f = mono_poly(n, &x);
                let plain = P::term(n, (), Mono { x: x.x.clone(), w: 0 }, one());
                for (k, (_, name)) in SL2_OPS.iter().enumerate() {
                    let img = AnElement::monomial(ring_ops[k].apply(&f), w.clone()).add(&tw[k][wi].ring_left_mul(&f));
                    let (order_fail, quot_fail) = &mut fails[k];
                    let mut bottom = AnElement::zero(n, ());
                    for (v, c) in img.terms() {
                        if order_fail.is_none() {
                            if let Some((bad, _)) = c.terms().find(|(t, _)| wset_cmp(t.w, s) == Ordering::Less) {
                                *order_fail = Some(format!("{name}({x}*T{:?}) has coefficient term {bad}", w.images()));
                            }
                        }
                        bottom = bottom.add(&AnElement::monomial(c.omega_component(s), v.clone()));
                    }
                    if quot_fail.is_none() {
                        let expect = AnElement::monomial(pol_op(SL2_OPS[k].0, &x.x, s), w.clone())
                            .add(&tw[k][wi].ring_left_mul(&plain).ring_left_mul(&wpoly));
                        if bottom != expect {
                            *quot_fail = Some((format!("{x}*T{:?}", w.images()), bottom.to_string(), expect.to_string()));
                        }
                    }
                }
            }
        }
        let expect = conabla_character(n, dq + 2 * omega_sum(s) + (n * n) as i64)
            .mul_truncated(&nilhecke_length_character(n), dq + 2 * omega_sum(s))
            .shift(-2 * omega_sum(s));
        out.push(Check::eq(format!("char of layer {}*nh_{n} = char Pol_{n} * [n]! shifted {tag}", omega_name(s)), &layer, &expect));
        layer_chars.push(layer);
    }
    for (k, (_, name)) in SL2_OPS.iter().enumerate() {
        let (order_fail, quot_fail) = fails[k].clone();
        out.push(Check::holds(
            format!("{name} never lowers the omega order on A_{n} {tag}"),
            order_fail.is_none(),
            order_fail.unwrap_or_else(|| format!("{count} basis elements")),
        ));
        out.push(match quot_fail {
            None => {
                let s = format!("agree on {count} basis elements");
                Check::new(format!("{name} on each layer is the nh_{n} operator {tag}"), s.clone(), s, true)
            }
            Some((at, l, r)) => Check::new(format!("{name} on each layer is the nh_{n} operator {tag}"), l, r, false).detail(format!("fails at {at}")),
        });
    }
    let graded = layer_chars.iter().fold(GradedCharacter::default(), |a, c| a.add(c));
    let floor = -2 * (n * (n + 1) / 2) as i64 - (n * n) as i64;
    let total = omega_character(n, m)
        .mul_truncated(&nilhecke_length_character(n), i64::MAX)
        .mul_truncated(&conabla_character(n, dq - floor), dq);
    out.push(Check::eq(format!("sum of layer chars = char A_{n}^{} {tag}", 2 * m), &graded, &total));
    out
}

/// Weyl dimension of the sl_n irrep with Dynkin labels `a`.
pub fn weyl_dimension(a: &[i64]) -> Option<u64> {
    if a.iter().any(|&x| x < 0) {
        return None;
    }
    let n = a.len() + 1;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..n {
        for j in i + 1..n {
            let s: i64 = a[i..j].iter().sum();
            num *= (s + (j - i) as i64) as u128;
            den *= (j - i) as u128;
        }
    }
    Some((num / den) as u64)
}

/// What the scan saw in one slice `R_{n,m}`.
#[derive(Clone, Debug)]
pub struct ConjectureSlice {
    pub m: u32,
    pub dim: usize,
    pub observed: BTreeMap<Vec<i64>, usize>,
    pub minus: BTreeMap<Vec<i64>, usize>,
    pub plus: BTreeMap<Vec<i64>, usize>,
    /// `Σ mult · dim V_hw`; `None` if some observed weight is not dominant.
    pub weyl_total: Option<u64>,
    /// Joint eigenspaces of the `h_i` fill the highest-weight space.
    pub diagonalizable: bool,
}

impl ConjectureSlice {
    pub fn matches_minus(&self) -> bool {
        self.observed == self.minus
    }
    pub fn matches_plus(&self) -> bool {
        self.observed == self.plus
    }
}

fn render_weights(w: &BTreeMap<Vec<i64>, usize>) -> String {
    if w.is_empty() {
        return "{}".into();
    }
    let parts: Vec<String> = w
        .iter()
        .map(|(k, v)| {
            let t = k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            if *v == 1 {
                format!("({t})")
            } else {
                format!("({t})x{v}")
            }
        })
        .collect();
    format!("{{{}}}", parts.join(" "))
}

fn sl_n_ops(n: usize, op: fn(usize) -> SlnOp) -> Vec<DerivationSpec<Int>> {
    (1..n).map(|i| ring_op(DerivationKind::Sln(op(i)), n)).collect()
}

fn rat(c: &Int) -> Rat {
    Rat::from(c)
}

/// Decomposes the q-degree-`m` slice of `R_n` under `sl_n`.
pub fn scan_slice(n: usize, m: u32) -> ConjectureSlice {
    let mut basis = Vec::new();
    let mut minus = BTreeMap::new();
    let mut plus = BTreeMap::new();
    if m.is_multiple_of(2) {
        for s in 0u32..1 << n {
            let t = (m as i64 + 2 * omega_sum(s)) / 2;
            basis.extend(monomials_with_omega(n, s, t as u32));
            let mut hw = vec![0i64; n.saturating_sub(1)];
            if let Some(first) = hw.first_mut() {
                *first = t;
                *minus.entry(hw.clone()).or_insert(0) += 1;
                hw[0] = m as i64 / 2 - omega_sum(s);
                *plus.entry(hw).or_insert(0) += 1;
            }
        }
    }
    let dim = basis.len();
    let index: BTreeMap<&Mono, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let matrix_of = |op: &DerivationSpec<Int>| -> Matrix<Rat> {
        let mut mat = vec![vec![Rat::zero(()); dim]; dim];
        for (j, b) in basis.iter().enumerate() {
            for (t, c) in op.apply(&mono_poly(n, b)).terms() {
                let i = index[t];
                mat[i][j] = rat(c);
            }
        }
        mat
    };
    let es: Vec<Matrix<Rat>> = sl_n_ops(n, SlnOp::E).iter().map(matrix_of).collect();
    let hs: Vec<Matrix<Rat>> = sl_n_ops(n, SlnOp::H).iter().map(matrix_of).collect();
    let stacked: Matrix<Rat> = es.iter().flatten().cloned().collect();
    let ker = if n == 1 { (0..dim).map(|j| (0..dim).map(|i| Rat::from_i64((), (i == j) as i64)).collect()).collect() } else { kernel(&stacked, dim, ()) };
    let k = ker.len();
    // the kernel basis as columns
    let kcols: Matrix<Rat> = (0..dim).map(|i| ker.iter().map(|v| v[i].clone()).collect()).collect();
    let h_on_ker: Vec<Matrix<Rat>> = hs
        .iter()
        .map(|h| {
            let cols: Vec<Vec<Rat>> = ker
                .iter()
                .map(|v| {
                    let hv: Vec<Rat> = h.iter().map(|row| row.iter().zip(v).fold(Rat::zero(()), |a, (x, y)| a.add(&x.mul(y)))).collect();
                    solve(&kcols, k, &hv, ()).expect("h_i preserves highest-weight vectors")
                })
                .collect();
            (0..k).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
        })
        .collect();
    let bound = basis.iter().map(|b| b.x_degree() as i64).max().unwrap_or(0) + 2 * n as i64;
    let mut observed = BTreeMap::new();
    if n == 1 {
        if k > 0 {
            observed.insert(Vec::new(), k);
        }
    } else {
        let shifted = |h: &Matrix<Rat>, t: i64| -> Matrix<Rat> {
            let mut a = h.clone();
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = row[i].sub(&Rat::from_i64((), t));
            }
            a
        };
        let mut stack: Vec<(Vec<i64>, Matrix<Rat>)> = vec![(Vec::new(), Vec::new())];
        for h in &h_on_ker {
            let mut next = Vec::new();
            for (pre, mat) in &stack {
                for t in -bound..=bound {
                    let mut m2 = mat.clone();
                    m2.extend(shifted(h, t));
                    if rank(&m2, k) < k {
                        let mut p = pre.clone();
                        p.push(t);
                        next.push((p, m2));
                    }
                }
            }
            stack = next;
        }
        for (w, mat) in stack {
            observed.insert(w, k - rank(&mat, k));
        }
    }
    let diagonalizable = observed.values().sum::<usize>() == k;
    let weyl_total = observed.iter().try_fold(0u64, |acc, (w, &c)| weyl_dimension(w).map(|d| acc + d * c as u64));
    ConjectureSlice { m, dim, observed, minus, plus, weyl_total, diagonalizable }
}

/// Scans every `m <= m_max`. The checks record agreement with each reading
/// of the highest weight; the caller decides which, if any, must hold.
pub fn conjecture_scan(n: usize, m_max: u32) -> (Vec<ConjectureSlice>, Vec<Check>) {
    let slices: Vec<ConjectureSlice> = (0..=m_max).map(|m| scan_slice(n, m)).collect();
    let mut checks = Vec::new();
    for s in &slices {
        let m = s.m;
        let obs = render_weights(&s.observed);
        checks.push(Check::new(format!("R_{n},{m:02} highest weights vs minus reading"), obs.clone(), render_weights(&s.minus), s.matches_minus()));
        checks.push(Check::new(format!("R_{n},{m:02} highest weights vs plus reading"), obs, render_weights(&s.plus), s.matches_plus()));
        let wt = s.weyl_total.map(|x| x.to_string()).unwrap_or_else(|| "non-dominant weight".into());
        checks.push(
            Check::new(format!("R_{n},{m:02} sum of irrep dims = dim slice"), wt, s.dim.to_string(), s.weyl_total == Some(s.dim as u64))
                .detail(if s.diagonalizable { "h_i diagonalizable on highest-weight vectors" } else { "h_i not diagonalizable on highest-weight vectors" }),
        );
    }
    (slices, checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_on_cube_and_omega() {
        let h = sl2(Sl2Op::H, 1);
        let x = P::x(1, (), 1);
        assert_eq!(h.apply(&x.pow(3)), x.pow(3).scale_int(6));
        let (e, f) = (sl2(Sl2Op::E, 1), sl2(Sl2Op::F, 1));
        assert_eq!(bracket(&e, &f, &x.pow(3)), x.pow(3).scale_int(6));
        let h2 = sl2(Sl2Op::H, 2);
        assert_eq!(h2.apply(&P::w(2, (), 1)).to_string(), "2*x2*w2");
    }

    #[test]
    fn order_extremes() {
        let o = OmegaMonomialOrder::new(4, 2);
        assert_eq!(o.subsets.len(), 6);
        assert_eq!(o.first(), Some(0b0011));
        assert_eq!(o.last(), Some(0b1100));
    }

    #[test]
    fn e_kills_w1_modulo_w2() {
        let e = sl2(Sl2Op::E, 2);
        let img = e.apply(&P::w(2, (), 1));
        assert_eq!(img.to_string(), "x2^2*w2");
        assert!(img.omega_component(0b01).is_zero());
    }

    #[test]
    fn plus_two_on_t_breaks_sl2() {
        assert!(an_sl2_checks(2, -2).iter().all(|c| c.equal));
        assert!(an_sl2_checks(2, 2).iter().any(|c| !c.equal));
    }

    #[test]
    fn characters() {
        assert_eq!(conabla_character(2, 4).to_string(), "1q^0 + 2q^2 + 3q^4");
        assert_eq!(omega_character(3, 2).to_string(), "1q^-10 + 1q^-8 + 1q^-6");
        assert_eq!(nilhecke_length_character(3).to_string(), "1q^-6 + 2q^-4 + 2q^-2 + 1q^0");
    }

    #[test]
    fn small_filtrations() {
        for (n, m) in [(1, 0), (1, 1), (2, 1), (3, 2)] {
            for c in filtration_check(n, m, 6) {
                assert!(c.equal, "{c:?}");
            }
        }
        for (n, m) in [(1, 1), (2, 1), (2, 2)] {
            for c in an_filtration_check(n, m, 6) {
                assert!(c.equal, "{c:?}");
            }
        }
    }

    #[test]
    fn slice_r22() {
        let s = scan_slice(2, 2);
        assert_eq!(s.dim, 14);
        assert!(s.matches_minus(), "{:?}", s.observed);
        assert_eq!(s.weyl_total, Some(14));
    }

    #[test]
    fn ring_suite_small() {
        for c in verify_sl2_suite(2, 6) {
            assert!(c.equal, "{c:?}");
        }
    }
}
