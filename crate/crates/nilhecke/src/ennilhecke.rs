//! The enhanced nilHecke algebra `A_n` in left normal form `Σ_w f_w T_w`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{Coeff, Fp, Int};
use crate::derivations::{dn, phi_prime, DerivationSpec};
use crate::extpoly::{monomials_up_to, staircase, ExtError, ExtPolynomial, Mono, Permutation};
use crate::report::Check;

type P<C> = ExtPolynomial<C>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AnElement<C: Coeff> {
    n: usize,
    ctx: C::Ctx,
    terms: BTreeMap<Permutation, P<C>>,
}

impl<C: Coeff> AnElement<C> {
    pub fn zero(n: usize, ctx: C::Ctx) -> Self {
        AnElement { n, ctx, terms: BTreeMap::new() }
    }

    pub fn from_ring(f: P<C>) -> Self {
        let n = f.n();
        Self::monomial(f, Permutation::identity(n))
    }

    /// `f T_w`.
    pub fn monomial(f: P<C>, w: Permutation) -> Self {
        let (n, ctx) = (f.n(), f.ctx());
        assert_eq!(w.n(), n, "rank mismatch");
        let mut a = Self::zero(n, ctx);
        a.add_term(w, f);
        a
    }

    pub fn one(n: usize, ctx: C::Ctx) -> Self {
        Self::from_ring(P::one(n, ctx))
    }

    pub fn int(n: usize, ctx: C::Ctx, v: i64) -> Self {
        Self::from_ring(P::int(n, ctx, v))
    }

    pub fn x(n: usize, ctx: C::Ctx, i: usize) -> Self {
        Self::from_ring(P::x(n, ctx, i))
    }

    pub fn w(n: usize, ctx: C::Ctx, i: usize) -> Self {
        Self::from_ring(P::w(n, ctx, i))
    }

    pub fn try_t(n: usize, ctx: C::Ctx, i: usize) -> Result<Self, ExtError> {
        if i == 0 || i >= n {
            return Err(ExtError::IndexOutOfRange { index: i as i64, n });
        }
        Ok(Self::monomial(P::one(n, ctx), Permutation::simple(n, i)))
    }

    pub fn t(n: usize, ctx: C::Ctx, i: usize) -> Self {
        Self::try_t(n, ctx, i).expect("T index")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> C::Ctx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &P<C>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Permutation) -> P<C> {
        self.terms.get(w).cloned().unwrap_or_else(|| P::zero(self.n, self.ctx))
    }

    fn add_term(&mut self, w: Permutation, f: P<C>) {
        if f.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(|| P::zero(f.n(), f.ctx()));
        *e = e.add(&f);
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ExtError> {
        if self.n != o.n {
            return Err(ExtError::RankMismatch(self.n, o.n));
        }
        let mut r = self.clone();
        for (w, f) in &o.terms {
            r.add_term(w.clone(), f.clone());
        }
        Ok(r)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("rank mismatch")
    }

    pub fn neg(&self) -> Self {
        let mut r = Self::zero(self.n, self.ctx);
        for (w, f) in &self.terms {
            r.add_term(w.clone(), f.neg());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let mut r = Self::zero(self.n, self.ctx);
        for (w, f) in &self.terms {
            r.add_term(w.clone(), f.scale_int(k));
        }
        r
    }

    /// `g · self` for a ring element `g`.
    pub fn ring_left_mul(&self, g: &P<C>) -> Self {
        let mut r = Self::zero(self.n, self.ctx);
        for (w, f) in &self.terms {
            r.add_term(w.clone(), g.mul(f));
        }
        r
    }

    /// `T_i · self`, using `T_i (h T_v) = T_i(h) T_v + s_i(h) T_i T_v`.
    pub fn t_left_mul(&self, i: usize) -> Self {
        let si = Permutation::simple(self.n, i);
        let mut r = Self::zero(self.n, self.ctx);
        for (v, h) in &self.terms {
            r.add_term(v.clone(), h.t(i));
            let sv = si.compose(v);
            if sv.length() > v.length() {
                r.add_term(sv, h.s(i));
            }
        }
        r
    }

    /// `T_w · self`.
    pub fn tw_left_mul(&self, w: &Permutation) -> Self {
        let mut r = self.clone();
        for &i in w.reduced_word().iter().rev() {
            r = r.t_left_mul(i);
            if r.is_zero() {
                break;
            }
        }
        r
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, ExtError> {
        if self.n != o.n {
            return Err(ExtError::RankMismatch(self.n, o.n));
        }
        let mut r = Self::zero(self.n, self.ctx);
        for (w, f) in &self.terms {
            r = r.add(&o.tw_left_mul(w).ring_left_mul(f));
        }
        Ok(r)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("rank mismatch")
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.n, self.ctx), |acc, _| acc.mul(self))
    }

    /// The action on `R_n`.
    pub fn try_act(&self, f: &P<C>) -> Result<P<C>, ExtError> {
        if self.n != f.n() {
            return Err(ExtError::RankMismatch(self.n, f.n()));
        }
        let mut r = P::zero(self.n, self.ctx);
        for (w, g) in &self.terms {
            let mut h = f.clone();
            for &i in w.reduced_word().iter().rev() {
                h = h.t(i);
            }
            r = r.add(&g.mul(&h));
        }
        Ok(r)
    }

    pub fn act(&self, f: &P<C>) -> P<C> {
        self.try_act(f).expect("rank mismatch")
    }

    /// Bidegree of each term `f_w T_w`, shifted by `(-2ℓ(w), 0)`.
    pub fn bidegrees(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for (w, f) in &self.terms {
            for (d, _) in f.homogeneous_parts() {
                out.push((d.0 - 2 * w.length() as i64, d.1));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, ctx: D::Ctx, g: impl Fn(&C) -> D + Copy) -> AnElement<D> {
        let mut r = AnElement::zero(self.n, ctx);
        for (w, f) in &self.terms {
            r.add_term(w.clone(), f.map_coeffs(ctx, g));
        }
        r
    }
}

impl AnElement<Int> {
    pub fn reduce_mod(&self, p: u64) -> AnElement<Fp> {
        self.map_coeffs(p, |c| crate::coeff::int_to_fp(c, p))
    }
}

impl<C: Coeff> fmt::Display for AnElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, g) in &self.terms {
            let word: Vec<String> = w.reduced_word().iter().map(|i| format!("T{i}")).collect();
            for (m, c) in g.terms().collect::<Vec<_>>().into_iter().rev() {
                let (neg, abs) = c.sign_abs();
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {} ", if neg { "-" } else { "+" })?;
                }
                first = false;
                let mut factors: Vec<String> = Vec::new();
                let is_one = m.x.iter().all(|&e| e == 0) && m.w == 0;
                if !is_one {
                    factors.push(m.to_string());
                }
                factors.extend(word.iter().cloned());
                if factors.is_empty() {
                    write!(f, "{abs}")?;
                } else if abs == "1" {
                    write!(f, "{}", factors.join("*"))?;
                } else {
                    write!(f, "{abs}*{}", factors.join("*"))?;
                }
            }
        }
        Ok(())
    }
}

/// `d_a` on `A_n`: `d_n` on `R_n` and
/// `d_a(T_i) = a - (a+1) x_i T_i + (a-1) x_{i+1} T_i`.
#[derive(Clone, Debug)]
pub struct AnDerivation<C: Coeff> {
    a: i64,
    n: usize,
    ring: DerivationSpec<C>,
    t_img: Vec<AnElement<C>>,
}

impl<C: Coeff> AnDerivation<C> {
    pub fn new(a: i64, n: usize, ctx: C::Ctx) -> Self {
        let t_img = (1..n)
            .map(|i| {
                let ti = AnElement::t(n, ctx, i);
                AnElement::int(n, ctx, a)
                    .sub(&ti.ring_left_mul(&P::x(n, ctx, i).scale_int(a + 1)))
                    .add(&ti.ring_left_mul(&P::x(n, ctx, i + 1).scale_int(a - 1)))
            })
            .collect();
        AnDerivation { a, n, ring: dn(n, ctx), t_img }
    }

    /// A derivation given by a ring derivation and the images of the `T_i`.
    pub fn from_parts(ring: DerivationSpec<C>, t_img: Vec<AnElement<C>>) -> Self {
        let n = ring.n();
        assert_eq!(t_img.len(), n.saturating_sub(1));
        AnDerivation { a: 0, n, ring, t_img }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn t_image(&self, i: usize) -> &AnElement<C> {
        &self.t_img[i - 1]
    }

    /// Derivative of `T_w` via the Leibniz rule along the reduced word.
    pub fn apply_tw(&self, w: &Permutation) -> AnElement<C> {
        let ctx = self.ring.x_image(1).ctx();
        let word = w.reduced_word();
        let mut r = AnElement::zero(self.n, ctx);
        for k in 0..word.len() {
            let pre = Permutation::from_word(self.n, &word[..k]);
            let post = Permutation::from_word(self.n, &word[k + 1..]);
            let right = AnElement::monomial(P::one(self.n, ctx), post);
            let mid = self.t_img[word[k] - 1].mul(&right);
            r = r.add(&mid.tw_left_mul(&pre));
        }
        r
    }

    pub fn apply(&self, x: &AnElement<C>) -> AnElement<C> {
        let mut r = AnElement::zero(self.n, x.ctx());
        for (w, f) in x.terms() {
            r = r.add(&AnElement::monomial(self.ring.apply(f), w.clone()));
            if !w.is_identity() {
                r = r.add(&self.apply_tw(w).ring_left_mul(f));
            }
        }
        r
    }

    pub fn apply_pow(&self, x: &AnElement<C>, k: u32) -> AnElement<C> {
        (0..k).fold(x.clone(), |acc, _| self.apply(&acc))
    }
}

/// `φ_n : A_n → A_{n+1}` on normal forms.
pub fn phi_inclusion<C: Coeff>(x: &AnElement<C>) -> AnElement<C> {
    let m = x.n() + 1;
    let mut r = AnElement::zero(m, x.ctx());
    for (w, f) in x.terms() {
        r = r.add(&AnElement::monomial(phi_prime(f), w.widen(m)));
    }
    r
}

/// `(-1)^{n(n-1)/2} T_{w_0} x_2 x_3^2 ... x_n^{n-1}`.
pub fn epsilon<C: Coeff>(n: usize, ctx: C::Ctx) -> AnElement<C> {
    let mut mono = Mono::one(n);
    for i in 0..n {
        mono.x[i] = i as u32;
    }
    let xd = AnElement::from_ring(P::term(n, ctx, mono, C::one(ctx)));
    let sign = if (n * (n.saturating_sub(1)) / 2).is_multiple_of(2) { 1 } else { -1 };
    AnElement::monomial(P::int(n, ctx, sign), Permutation::longest(n)).mul(&xd)
}

/// A generator of `A_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    X(usize),
    W(usize),
    T(usize),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::X(i) => write!(f, "x{i}"),
            Gen::W(i) => write!(f, "w{i}"),
            Gen::T(i) => write!(f, "T{i}"),
        }
    }
}

/// An integer combination of generator words.
#[derive(Clone, Debug)]
pub struct WordExpr(pub Vec<(i64, Vec<Gen>)>);

impl WordExpr {
    pub fn word(w: &[Gen]) -> Self {
        WordExpr(vec![(1, w.to_vec())])
    }

    pub fn plus(mut self, c: i64, w: &[Gen]) -> Self {
        self.0.push((c, w.to_vec()));
        self
    }

    pub fn normal_form<C: Coeff>(&self, n: usize, ctx: C::Ctx) -> AnElement<C> {
        let mut r = AnElement::zero(n, ctx);
        for (c, w) in &self.0 {
            let mut t = AnElement::int(n, ctx, *c);
            for g in w {
                t = t.mul(&gen_element(*g, n, ctx));
            }
            r = r.add(&t);
        }
        r
    }

    /// Applies each word letter by letter, right to left.
    pub fn act<C: Coeff>(&self, f: &P<C>) -> P<C> {
        let mut r = P::zero(f.n(), f.ctx());
        for (c, w) in &self.0 {
            let mut h = f.clone();
            for g in w.iter().rev() {
                h = match *g {
                    Gen::X(i) => P::x(f.n(), f.ctx(), i).mul(&h),
                    Gen::W(i) => P::w(f.n(), f.ctx(), i).mul(&h),
                    Gen::T(i) => h.t(i),
                };
            }
            r = r.add(&h.scale_int(*c));
        }
        r
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, w)) in self.0.iter().enumerate() {
            let body = if w.is_empty() { String::new() } else { w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*") };
            let abs = c.abs();
            let sign = if *c < 0 { "-" } else { "+" };
            if k == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (abs, body.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (1, false) => write!(f, "{body}")?,
                _ => write!(f, "{abs}*{body}")?,
            }
        }
        Ok(())
    }
}

pub fn gen_element<C: Coeff>(g: Gen, n: usize, ctx: C::Ctx) -> AnElement<C> {
    match g {
        Gen::X(i) => AnElement::x(n, ctx, i),
        Gen::W(i) => AnElement::w(n, ctx, i),
        Gen::T(i) => AnElement::t(n, ctx, i),
    }
}

/// The defining relations of `A_n` and the θ-presentation, as `lhs = rhs` pairs.
pub fn relation_list(n: usize) -> Vec<(String, WordExpr, WordExpr)> {
    use Gen::*;
    let mut out: Vec<(String, WordExpr, WordExpr)> = Vec::new();
    let zero = || WordExpr(vec![]);
    let one = || WordExpr(vec![(1, vec![])]);
    for i in 1..=n {
        for j in i + 1..=n {
            out.push((format!("x{i} x{j} = x{j} x{i}"), WordExpr::word(&[X(i), X(j)]), WordExpr::word(&[X(j), X(i)])));
        }
    }
    for i in 1..n {
        out.push((format!("T{i}^2 = 0"), WordExpr::word(&[T(i), T(i)]), zero()));
        for j in i + 2..n {
            out.push((format!("T{i} T{j} = T{j} T{i}"), WordExpr::word(&[T(i), T(j)]), WordExpr::word(&[T(j), T(i)])));
        }
        if i + 1 < n {
            out.push((
                format!("T{i} T{} T{i} braid", i + 1),
                WordExpr::word(&[T(i), T(i + 1), T(i)]),
                WordExpr::word(&[T(i + 1), T(i), T(i + 1)]),
            ));
        }
        for j in 1..=n {
            if j != i && j != i + 1 {
                out.push((format!("x{j} T{i} = T{i} x{j}"), WordExpr::word(&[X(j), T(i)]), WordExpr::word(&[T(i), X(j)])));
            }
        }
        out.push((format!("x{i} T{i} - T{i} x{} = 1", i + 1), WordExpr::word(&[X(i), T(i)]).plus(-1, &[T(i), X(i + 1)]), one()));
        out.push((format!("T{i} x{i} - x{} T{i} = 1", i + 1), WordExpr::word(&[T(i), X(i)]).plus(-1, &[X(i + 1), T(i)]), one()));
        for j in 1..=n {
            if j != i {
                out.push((format!("T{i} w{j} = w{j} T{i}"), WordExpr::word(&[T(i), W(j)]), WordExpr::word(&[W(j), T(i)])));
            }
        }
        out.push((
            format!("T{i} (w{i} - x{} w{}) commute", i + 1, i + 1),
            WordExpr::word(&[T(i), W(i)]).plus(-1, &[T(i), X(i + 1), W(i + 1)]),
            WordExpr::word(&[W(i), T(i)]).plus(-1, &[X(i + 1), W(i + 1), T(i)]),
        ));
    }
    for i in 1..=n {
        for j in i..=n {
            out.push((format!("w{i} w{j} = -w{j} w{i}"), WordExpr::word(&[W(i), W(j)]), WordExpr(vec![(-1, vec![W(j), W(i)])])));
        }
        for j in 1..=n {
            out.push((format!("x{i} w{j} = w{j} x{i}"), WordExpr::word(&[X(i), W(j)]), WordExpr::word(&[W(j), X(i)])));
        }
    }
    // θ = ω_1
    out.push(("theta^2 = 0".into(), WordExpr::word(&[W(1), W(1)]), zero()));
    for i in 1..=n {
        out.push((format!("theta x{i} = x{i} theta"), WordExpr::word(&[W(1), X(i)]), WordExpr::word(&[X(i), W(1)])));
    }
    for i in 2..n {
        out.push((format!("theta T{i} = T{i} theta"), WordExpr::word(&[W(1), T(i)]), WordExpr::word(&[T(i), W(1)])));
    }
    if n >= 2 {
        out.push((
            "theta T1 theta T1 + T1 theta T1 theta = 0".into(),
            WordExpr::word(&[W(1), T(1), W(1), T(1)]).plus(1, &[T(1), W(1), T(1), W(1)]),
            zero(),
        ));
        out.push((
            "w2 = T1 w1 T1 x2 - x1 T1 w1 T1".into(),
            WordExpr::word(&[W(2)]),
            WordExpr::word(&[T(1), W(1), T(1), X(2)]).plus(-1, &[X(1), T(1), W(1), T(1)]),
        ));
    }
    out
}

/// Every relation checked as a normal-form identity and as an operator identity
/// on monomials up to q-degree `d`.
pub fn verify_relations(n: usize, d: u32) -> Vec<Check> {
    verify_relations_in::<Int>(n, d, (), "")
}

/// The same over `F_p`.
pub fn verify_relations_mod(n: usize, d: u32, p: u64) -> Vec<Check> {
    verify_relations_in::<Fp>(n, d, p, &format!(" over F_{p}"))
}

fn verify_relations_in<C: Coeff>(n: usize, d: u32, ctx: C::Ctx, tag: &str) -> Vec<Check> {
    let monos = monomials_up_to(n, d);
    relation_list(n)
        .into_iter()
        .map(|(name, l, r)| {
            let ln = l.normal_form::<C>(n, ctx);
            let rn = r.normal_form::<C>(n, ctx);
            let mut bad = None;
            for m in &monos {
                let f = P::term(n, ctx, m.clone(), C::one(ctx));
                if l.act(&f) != r.act(&f) {
                    bad = Some(m.to_string());
                    break;
                }
            }
            let ok = ln == rn && bad.is_none();
            let detail = match bad {
                None => format!("normal form and action on {} monomials", monos.len()),
                Some(m) => format!("action differs at {m}"),
            };
            Check::new(format!("{name} (n={n}{tag})"), ln.to_string(), rn.to_string(), ok).detail(detail)
        })
        .collect()
}

fn rand_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<Gen> {
    (0..len)
        .map(|_| {
            let k = rng.gen_range(0..3);
            match k {
                0 => Gen::X(rng.gen_range(1..=n)),
                1 => Gen::W(rng.gen_range(1..=n)),
                _ if n >= 2 => Gen::T(rng.gen_range(1..n)),
                _ => Gen::X(1),
            }
        })
        .collect()
}

/// Seeded random words of length at most `maxlen`.
pub fn random_words(seed: u64, n: usize, count: usize, maxlen: usize) -> Vec<Vec<Gen>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=maxlen);
            rand_word(&mut rng, n, len)
        })
        .collect()
}

fn word_name(w: &[Gen]) -> String {
    w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*")
}

fn all_gens(n: usize) -> Vec<Gen> {
    let mut g: Vec<Gen> = (1..=n).map(Gen::X).collect();
    g.extend((1..=n).map(Gen::W));
    g.extend((1..n).map(Gen::T));
    g
}

/// `ε_n² = ε_n` and `d(ε_n) = -Σ (n-i) x_i ε_n`.
pub fn epsilon_checks(n: usize) -> Vec<Check> {
    let e = epsilon::<Int>(n, ());
    let d = AnDerivation::<Int>::new(1, n, ());
    let s = (1..=n).fold(P::zero(n, ()), |acc, i| acc.add(&P::x(n, (), i).scale_int((n - i) as i64)));
    vec![
        Check::eq(format!("epsilon_{n}^2 = epsilon_{n}"), &e.mul(&e), &e),
        Check::eq(format!("d(epsilon_{n}) = -sum (n-i) x_i epsilon_{n}"), &d.apply(&e), &e.ring_left_mul(&s).neg()),
    ]
}

/// `d_a^p` kills every generator, and a few random products, over `F_p`.
pub fn an_nilpotency_check(p: u64, n: usize, a: i64) -> Vec<Check> {
    let d = AnDerivation::<Fp>::new(a, n, p);
    let mut words: Vec<Vec<Gen>> = all_gens(n).into_iter().map(|g| vec![g]).collect();
    words.extend(random_words(p * 31 + n as u64, n, 6, 3));
    words
        .into_iter()
        .map(|w| {
            let x = WordExpr::word(&w).normal_form::<Fp>(n, p);
            let dp = d.apply_pow(&x, p as u32);
            Check::eq(format!("d_{a}^{p}({}) = 0 in A_{n}", word_name(&w)), &dp, &AnElement::zero(n, p))
        })
        .collect()
}

/// `act(d_a ξ) = [d_twisted, act(ξ)]` with weights `α_i = a(i - n)`.
pub fn d_a_commutator_check(a: i64, n: usize, d: u32) -> Vec<Check> {
    let weights: Vec<i64> = (1..=n).map(|i| a * (i as i64 - n as i64)).collect();
    let tw = DerivationSpec::<Int>::new(crate::derivations::DerivationKind::TwistedDn(weights), n, ()).unwrap();
    let da = AnDerivation::<Int>::new(a, n, ());
    let mut words: Vec<Vec<Gen>> = all_gens(n).into_iter().map(|g| vec![g]).collect();
    words.extend(random_words(7 + n as u64, n, 4, 3));
    let monos = monomials_up_to(n, d);
    words
        .into_iter()
        .map(|w| {
            let xi = WordExpr::word(&w).normal_form::<Int>(n, ());
            let dx = da.apply(&xi);
            Check::over(format!("d_{a}({}) = [d, -] on R_{n} (D={d})", word_name(&w)), monos.iter().cloned(), |m| {
                let f = P::term(n, (), m.clone(), Int::Small(1));
                (dx.act(&f), tw.apply(&xi.act(&f)).sub(&xi.act(&tw.apply(&f))))
            })
        })
        .collect()
}

/// `φ_n ∘ d_a = d_a ∘ φ_n` on generators of `A_n`.
pub fn phi_inclusion_checks(n: usize, a: i64) -> Vec<Check> {
    let d = AnDerivation::<Int>::new(a, n, ());
    let d1 = AnDerivation::<Int>::new(a, n + 1, ());
    all_gens(n)
        .into_iter()
        .map(|g| {
            let x = gen_element::<Int>(g, n, ());
            Check::eq(format!("phi_{n} d_{a}({g}) = d_{a} phi_{n}({g})"), &phi_inclusion(&d.apply(&x)), &d1.apply(&phi_inclusion(&x)))
        })
        .collect()
}

/// The basis `x^b ω_S`, `b` in the staircase, on which `A_n` acts faithfully.
pub fn faithful_basis(n: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    for b in staircase(n) {
        for w in 0u32..(1 << n) {
            out.push(Mono { x: b.clone(), w });
        }
    }
    out
}

/// True when `x` acts as zero on the staircase-ω basis.
pub fn acts_as_zero<C: Coeff>(x: &AnElement<C>) -> bool {
    let (n, ctx) = (x.n(), x.ctx());
    faithful_basis(n).into_iter().all(|m| x.act(&P::term(n, ctx, m, C::one(ctx))).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    type A = AnElement<Int>;

    #[test]
    fn nilhecke_products() {
        let t1 = A::t(2, (), 1);
        let x1 = A::x(2, (), 1);
        let x2 = A::x(2, (), 2);
        assert_eq!(t1.mul(&x1), x2.mul(&t1).add(&A::one(2, ())));
        assert!(t1.mul(&t1).is_zero());
        let w1 = A::w(2, (), 1);
        let w2 = A::w(2, (), 2);
        let rhs = w1.mul(&t1).add(&x1.sub(&x2).mul(&w2).mul(&t1)).sub(&w2);
        assert_eq!(t1.mul(&w1), rhs);
    }

    #[test]
    fn action_values() {
        let w1 = P::<Int>::w(2, (), 1);
        assert_eq!(A::t(2, (), 1).act(&w1), P::w(2, (), 2).neg());
        let e = WordExpr::word(&[Gen::T(1), Gen::W(1), Gen::T(1), Gen::X(2)]).plus(-1, &[Gen::X(1), Gen::T(1), Gen::W(1), Gen::T(1)]);
        assert_eq!(e.normal_form::<Int>(2, ()).act(&P::one(2, ())), P::w(2, (), 2));
    }

    #[test]
    fn epsilon_two() {
        let e = epsilon::<Int>(2, ());
        assert_eq!(e, A::one(2, ()).sub(&A::x(2, (), 1).mul(&A::t(2, (), 1))));
        assert_eq!(epsilon::<Int>(1, ()), A::one(1, ()));
        for c in epsilon_checks(2).into_iter().chain(epsilon_checks(3)) {
            assert!(c.equal, "{c:?}");
        }
    }

    #[test]
    fn d_on_t() {
        let d = AnDerivation::<Int>::new(1, 2, ());
        let t1 = A::t(2, (), 1);
        assert_eq!(d.apply(&t1), A::one(2, ()).sub(&t1.ring_left_mul(&P::x(2, (), 1).scale_int(2))));
        assert_eq!(d.apply(&A::x(2, (), 1)), A::from_ring(P::x(2, (), 1).pow(2)));
    }

    #[test]
    fn inclusion_values() {
        let w = phi_inclusion(&A::w(1, (), 1));
        assert_eq!(w, A::from_ring(P::w(2, (), 1).sub(&P::x(2, (), 2).mul(&P::w(2, (), 2)))));
        assert_eq!(phi_inclusion(&A::t(2, (), 1)), A::t(3, (), 1));
    }

    #[test]
    fn relations_small() {
        for n in 1..=3 {
            for c in verify_relations(n, 6) {
                assert!(c.equal, "{c:?}");
            }
        }
    }
}
