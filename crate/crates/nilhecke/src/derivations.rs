//! Derivations of `R_n` given by generator images: `d_n`, the partials
//! `∂/∂x_r`, Witt operators, the sl₂ and sl_n operators, and the degree
//! operator. Also the homomorphisms `φ'_n`, `φ'_{m,n}` and `Ω_n`.

use std::fmt;

use crate::coeff::{Coeff, Fp, Int};
use crate::extpoly::{complete_h, elementary_e, labeled_omega, monomials_up_to, ExtError, ExtPolynomial, Mono};
use crate::report::Check;

type P<C> = ExtPolynomial<C>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2Op {
    E,
    F,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlnOp {
    E(usize),
    F(usize),
    H(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivationKind {
    Dn,
    Partial(usize),
    Witt(i64),
    Sl2(Sl2Op),
    DegQ,
    Sln(SlnOp),
    /// `d_n` on the module generated by `v` with `d(v) = Σ α_i x_i v`.
    TwistedDn(Vec<i64>),
    /// Built directly from generator images.
    Table(String),
}

impl fmt::Display for DerivationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivationKind::Dn => write!(f, "d"),
            DerivationKind::Partial(r) => write!(f, "partial{r}"),
            DerivationKind::Witt(k) => write!(f, "l{k}"),
            DerivationKind::Sl2(o) => write!(f, "{}", format!("{o:?}").to_lowercase()),
            DerivationKind::DegQ => write!(f, "degq"),
            DerivationKind::Sln(SlnOp::E(i)) => write!(f, "e{i}"),
            DerivationKind::Sln(SlnOp::F(i)) => write!(f, "f{i}"),
            DerivationKind::Sln(SlnOp::H(i)) => write!(f, "h{i}"),
            DerivationKind::TwistedDn(a) => write!(f, "d{a:?}"),
            DerivationKind::Table(s) => write!(f, "{s}"),
        }
    }
}

/// `α_{i,j} = Σ_{l=j}^{n} x_l² Π_{k=i+1}^{j-1} (x_k - x_l)`.
pub fn alpha_poly<C: Coeff>(i: usize, j: usize, n: usize, ctx: C::Ctx) -> Result<P<C>, ExtError> {
    if i == 0 || i >= j {
        return Err(ExtError::IndexOutOfRange { index: i as i64, n });
    }
    if j > n {
        return Err(ExtError::IndexOutOfRange { index: j as i64, n });
    }
    let mut r = P::zero(n, ctx);
    for l in j..=n {
        let xl = P::x(n, ctx, l);
        let mut t = xl.mul(&xl);
        for k in i + 1..j {
            t = t.mul(&P::x(n, ctx, k).sub(&xl));
        }
        r = r.add(&t);
    }
    Ok(r)
}

/// `∂/∂x_r (ω_i)`.
fn partial_omega<C: Coeff>(r: usize, i: usize, n: usize, ctx: C::Ctx) -> P<C> {
    let mut out = P::zero(n, ctx);
    if i >= r {
        return out;
    }
    let xr = P::x(n, ctx, r);
    for j in i + 1..=r {
        let mut t = P::w(n, ctx, j);
        for k in i + 1..j {
            t = t.mul(&P::x(n, ctx, k).sub(&xr));
        }
        out = out.add(&t);
    }
    out
}

/// An even derivation of `R_n`, stored as its values on generators.
#[derive(Clone, Debug)]
pub struct DerivationSpec<C: Coeff> {
    pub kind: DerivationKind,
    n: usize,
    ctx: C::Ctx,
    ximg: Vec<P<C>>,
    wimg: Vec<P<C>>,
    twist: Option<P<C>>,
}

impl<C: Coeff> DerivationSpec<C> {
    pub fn new(kind: DerivationKind, n: usize, ctx: C::Ctx) -> Result<Self, ExtError> {
        let x = |i| P::<C>::x(n, ctx, i);
        let bad = |i: usize| Err(ExtError::IndexOutOfRange { index: i as i64, n });
        let (ximg, wimg, twist): (Vec<P<C>>, Vec<P<C>>, Option<P<C>>) = match &kind {
            DerivationKind::Dn => {
                let xi = (1..=n).map(|i| x(i).pow(2)).collect();
                let mut wi = Vec::new();
                for i in 1..=n {
                    let mut t = P::zero(n, ctx);
                    for j in i + 1..=n {
                        t = t.add(&alpha_poly(i, j, n, ctx)?.mul(&P::w(n, ctx, j)));
                    }
                    wi.push(t);
                }
                (xi, wi, None)
            }
            DerivationKind::Partial(r) => {
                let r = *r;
                if r == 0 || r > n {
                    return bad(r);
                }
                let xi = (1..=n).map(|i| P::int(n, ctx, (i == r) as i64)).collect();
                let wi = (1..=n).map(|i| partial_omega(r, i, n, ctx)).collect();
                (xi, wi, None)
            }
            DerivationKind::Witt(k) => {
                let k = *k;
                if k < -1 {
                    return Err(ExtError::IndexOutOfRange { index: k, n });
                }
                let e = (k + 1) as u32;
                let xi = (1..=n).map(|i| x(i).pow(e)).collect();
                let wi = (1..=n)
                    .map(|i| {
                        (1..=n).fold(P::zero(n, ctx), |acc, j| acc.add(&x(j).pow(e).mul(&partial_omega(j, i, n, ctx))))
                    })
                    .collect();
                (xi, wi, None)
            }
            DerivationKind::Sl2(op) => {
                let (k, s) = match op {
                    Sl2Op::E => (1, 1),
                    Sl2Op::F => (-1, -1),
                    Sl2Op::H => (0, 2),
                };
                let base = Self::new(DerivationKind::Witt(k), n, ctx)?;
                let xi = base.ximg.iter().map(|p| p.scale_int(s)).collect();
                let wi = base.wimg.iter().map(|p| p.scale_int(s)).collect();
                (xi, wi, None)
            }
            DerivationKind::DegQ => {
                let xi = (1..=n).map(|i| x(i).scale_int(2)).collect();
                let wi = (1..=n).map(|i| P::w(n, ctx, i).scale_int(-2 * i as i64)).collect();
                (xi, wi, None)
            }
            DerivationKind::Sln(op) => {
                let (i, lo) = match op {
                    SlnOp::E(i) | SlnOp::F(i) | SlnOp::H(i) => (*i, *i),
                };
                if lo == 0 || i >= n {
                    return bad(i);
                }
                // x_a ∂_b
                let xd = |a: usize, b: usize| -> (Vec<P<C>>, Vec<P<C>>) {
                    let xi = (1..=n).map(|t| if t == b { x(a) } else { P::zero(n, ctx) }).collect();
                    let wi = (1..=n).map(|t| x(a).mul(&partial_omega(b, t, n, ctx))).collect();
                    (xi, wi)
                };
                match op {
                    SlnOp::E(_) => {
                        let (a, b) = xd(i, i + 1);
                        (a, b, None)
                    }
                    SlnOp::F(_) => {
                        let (a, b) = xd(i + 1, i);
                        (a, b, None)
                    }
                    SlnOp::H(_) => {
                        let e = Self::new(DerivationKind::Sln(SlnOp::E(i)), n, ctx)?;
                        let f = Self::new(DerivationKind::Sln(SlnOp::F(i)), n, ctx)?;
                        let c = e.commutator(&f);
                        (c.ximg, c.wimg, None)
                    }
                }
            }
            DerivationKind::TwistedDn(alpha) => {
                if alpha.len() != n {
                    return Err(ExtError::RankMismatch(alpha.len(), n));
                }
                let base = Self::new(DerivationKind::Dn, n, ctx)?;
                let g = (1..=n).fold(P::zero(n, ctx), |acc, i| acc.add(&x(i).scale_int(alpha[i - 1])));
                (base.ximg, base.wimg, Some(g))
            }
            DerivationKind::Table(_) => return Err(ExtError::ZeroInput),
        };
        Ok(DerivationSpec { kind, n, ctx, ximg, wimg, twist })
    }

    pub fn from_tables(label: &str, ximg: Vec<P<C>>, wimg: Vec<P<C>>) -> Self {
        let n = ximg.len();
        assert_eq!(wimg.len(), n);
        let ctx = ximg.first().map(|p| p.ctx()).expect("rank at least one");
        DerivationSpec { kind: DerivationKind::Table(label.into()), n, ctx, ximg, wimg, twist: None }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_image(&self, i: usize) -> &P<C> {
        &self.ximg[i - 1]
    }

    pub fn w_image(&self, i: usize) -> &P<C> {
        &self.wimg[i - 1]
    }

    /// Twisting polynomial `g_α`, for the twisted variant.
    pub fn twist(&self) -> Option<&P<C>> {
        self.twist.as_ref()
    }

    pub fn try_apply(&self, f: &P<C>) -> Result<P<C>, ExtError> {
        if f.n() != self.n {
            return Err(ExtError::RankMismatch(self.n, f.n()));
        }
        let mut r = leibniz(f, &self.ximg, &self.wimg);
        if let Some(g) = &self.twist {
            r = r.add(&f.mul(g));
        }
        Ok(r)
    }

    pub fn apply(&self, f: &P<C>) -> P<C> {
        self.try_apply(f).expect("rank mismatch")
    }

    pub fn apply_pow(&self, f: &P<C>, k: u32) -> P<C> {
        (0..k).fold(f.clone(), |acc, _| self.apply(&acc))
    }

    /// `[self, o]`, again a derivation (twists are ignored).
    pub fn commutator(&self, o: &Self) -> Self {
        let c = |g: &P<C>| leibniz(&leibniz(g, &o.ximg, &o.wimg), &self.ximg, &self.wimg)
            .sub(&leibniz(&leibniz(g, &self.ximg, &self.wimg), &o.ximg, &o.wimg));
        let xi = (1..=self.n).map(|i| c(&P::x(self.n, self.ctx, i))).collect();
        let wi = (1..=self.n).map(|i| c(&P::w(self.n, self.ctx, i))).collect();
        Self::from_tables(&format!("[{},{}]", self.kind, o.kind), xi, wi)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self::from_tables(
            &format!("{k}*{}", self.kind),
            self.ximg.iter().map(|p| p.scale_int(k)).collect(),
            self.wimg.iter().map(|p| p.scale_int(k)).collect(),
        )
    }

    /// `g * self`, for an even `g`.
    pub fn left_mul(&self, g: &P<C>) -> Self {
        Self::from_tables(
            &format!("({g})*{}", self.kind),
            self.ximg.iter().map(|p| g.mul(p)).collect(),
            self.wimg.iter().map(|p| g.mul(p)).collect(),
        )
    }
}

/// Applies the even derivation with the given generator images.
pub fn leibniz<C: Coeff>(f: &P<C>, ximg: &[P<C>], wimg: &[P<C>]) -> P<C> {
    let (n, ctx) = (f.n(), f.ctx());
    let mut r = P::zero(n, ctx);
    for (m, c) in f.terms() {
        let wpart = P::term(n, ctx, Mono { x: vec![0; n], w: m.w }, C::one(ctx));
        for i in 0..n {
            let b = m.x[i];
            if b == 0 || ximg[i].is_zero() {
                continue;
            }
            let mut x = m.x.clone();
            x[i] -= 1;
            let coeff = c.mul(&C::from_i64(ctx, b as i64));
            r = r.add(&P::term(n, ctx, Mono { x, w: 0 }, coeff).mul(&ximg[i]).mul(&wpart));
        }
        let idx = m.omega_indices();
        for (t, &s) in idx.iter().enumerate() {
            if wimg[s - 1].is_zero() {
                continue;
            }
            let before: u32 = idx[..t].iter().map(|&k| 1u32 << (k - 1)).sum();
            let after: u32 = idx[t + 1..].iter().map(|&k| 1u32 << (k - 1)).sum();
            let left = P::term(n, ctx, Mono { x: m.x.clone(), w: before }, c.clone());
            let right = P::term(n, ctx, Mono { x: vec![0; n], w: after }, C::one(ctx));
            r = r.add(&left.mul(&wimg[s - 1]).mul(&right));
        }
    }
    r
}

pub fn dn<C: Coeff>(n: usize, ctx: C::Ctx) -> DerivationSpec<C> {
    DerivationSpec::new(DerivationKind::Dn, n, ctx).expect("d_n")
}

pub fn partial<C: Coeff>(r: usize, n: usize, ctx: C::Ctx) -> DerivationSpec<C> {
    DerivationSpec::new(DerivationKind::Partial(r), n, ctx).expect("partial index")
}

/// `φ'_n : R_n → R_{n+1}`.
pub fn phi_prime<C: Coeff>(f: &P<C>) -> P<C> {
    let (n, ctx) = (f.n(), f.ctx());
    let m = n + 1;
    let xn1 = P::x(m, ctx, m);
    let ximg: Vec<P<C>> = (1..=n).map(|i| P::x(m, ctx, i)).collect();
    let wimg: Vec<P<C>> = (1..=n)
        .map(|i| {
            let mut t = P::w(m, ctx, i);
            for l in i + 1..=m {
                let mut s = xn1.clone();
                for j in i + 1..l {
                    s = s.mul(&P::x(m, ctx, j).sub(&xn1));
                }
                t = t.sub(&s.mul(&P::w(m, ctx, l)));
            }
            t
        })
        .collect();
    f.substitute(m, &ximg, &wimg)
}

/// `φ'_{m,n} = φ'_{n-1} ∘ ... ∘ φ'_m` applied to `f ∈ R_m`.
pub fn phi_prime_chain<C: Coeff>(f: &P<C>, n: usize) -> Result<P<C>, ExtError> {
    if n < f.n() {
        return Err(ExtError::RankMismatch(f.n(), n));
    }
    let mut g = f.clone();
    while g.n() < n {
        g = phi_prime(&g);
    }
    Ok(g)
}

/// `Ω_n(ω_i) = φ'_{i,n}(ω_i)`.
pub fn omega_map<C: Coeff>(n: usize, i: usize, ctx: C::Ctx) -> Result<P<C>, ExtError> {
    if i == 0 || i > n {
        return Err(ExtError::IndexOutOfRange { index: i as i64, n });
    }
    phi_prime_chain(&P::w(i, ctx, i), n)
}

/// The table `a_{j,k}` for `1 <= j <= k <= n` with `(x²d/dx)^k = Σ_j a_{j,k} x^{k+j} d^j/dx^j`.
pub fn shift_coeffs(n: usize) -> Vec<Vec<Int>> {
    let mut a: Vec<Vec<Int>> = vec![vec![Int::Small(0); n + 2]; n + 2];
    if n >= 1 {
        a[1][1] = Int::Small(1);
    }
    for k in 2..=n {
        for j in 1..=k {
            let prev = a[j - 1][k - 1].clone();
            let t = a[j][k - 1].mul(&Int::from_i64((), (k - 1 + j) as i64));
            a[j][k] = prev.add(&t);
        }
    }
    a
}

fn gens<C: Coeff>(n: usize, ctx: C::Ctx) -> Vec<(String, P<C>)> {
    let mut g: Vec<(String, P<C>)> = (1..=n).map(|i| (format!("x{i}"), P::x(n, ctx, i))).collect();
    g.extend((1..=n).map(|i| (format!("w{i}"), P::w(n, ctx, i))));
    g
}

pub fn generators<C: Coeff>(n: usize, ctx: C::Ctx) -> Vec<(String, P<C>)> {
    gens(n, ctx)
}

fn mono_poly(n: usize, m: &Mono) -> P<Int> {
    P::term(n, (), m.clone(), Int::Small(1))
}

/// `d_n = Σ_r x_r² ∂/∂x_r` on all monomials of q-degree at most `d`.
pub fn dn_as_partials_check(n: usize, d: u32) -> Check {
    let dd = dn::<Int>(n, ());
    let parts: Vec<_> = (1..=n).map(|r| partial::<Int>(r, n, ())).collect();
    Check::over(format!("d_n = sum x_r^2 partial_r (n={n}, D={d})"), monomials_up_to(n, d), |m| {
        let f = mono_poly(n, m);
        let rhs = parts.iter().enumerate().fold(P::zero(n, ()), |acc, (r, pd)| {
            acc.add(&P::x(n, (), r + 1).pow(2).mul(&pd.apply(&f)))
        });
        (dd.apply(&f), rhs)
    })
}

/// `d^k ω_{i+1} = -k(k-1) x_i x_{i+1} T_i(d^{k-2}ω_i) + k(x_i+x_{i+1}) T_i(d^{k-1}ω_i) - T_i(d^k ω_i)`.
pub fn dk_power_formula_check(n: usize, kmax: u32) -> Vec<Check> {
    let d = dn::<Int>(n, ());
    let mut out = Vec::new();
    for i in 1..n {
        let wi = P::w(n, (), i);
        let pows: Vec<P<Int>> = (0..=kmax).map(|k| d.apply_pow(&wi, k)).collect();
        let xi = P::x(n, (), i);
        let xj = P::x(n, (), i + 1);
        for k in 0..=kmax {
            let ki = k as i64;
            let lhs = d.apply_pow(&P::w(n, (), i + 1), k);
            let mut rhs = pows[k as usize].t(i).neg();
            if k >= 1 {
                rhs = rhs.add(&xi.add(&xj).mul(&pows[k as usize - 1].t(i)).scale_int(ki));
            }
            if k >= 2 {
                rhs = rhs.sub(&xi.mul(&xj).mul(&pows[k as usize - 2].t(i)).scale_int(ki * (ki - 1)));
            }
            out.push(Check::eq(format!("d^{k} w{} power formula (n={n}, i={i})", i + 1), &lhs, &rhs));
        }
    }
    out
}

/// `d_n^p` kills every generator over `F_p`, and agrees with `Σ_r (x_r²∂_r)^p` there.
pub fn nilpotency_check(p: u64, n: usize) -> Vec<Check> {
    let d = dn::<Fp>(n, p);
    let shifted: Vec<DerivationSpec<Fp>> = (1..=n)
        .map(|r| partial::<Fp>(r, n, p).left_mul(&P::x(n, p, r).pow(2)))
        .collect();
    let mut out = Vec::new();
    for (name, g) in gens::<Fp>(n, p) {
        let dp = d.apply_pow(&g, p as u32);
        out.push(Check::eq(format!("d^{p}({name}) = 0 (n={n})"), &dp, &P::zero(n, p)));
        let sum = shifted.iter().fold(P::zero(n, p), |acc, s| acc.add(&s.apply_pow(&g, p as u32)));
        out.push(Check::eq(format!("d^{p}({name}) = sum (x_r^2 partial_r)^{p}({name}) (n={n})"), &dp, &sum));
    }
    out
}

/// Checks `(x² d/dx)^k x^m = Σ_j a_{j,k} x^{k+j} (d/dx)^j x^m` for `k <= n`, `m <= mmax`.
pub fn shift_coeffs_check(n: usize, mmax: u32) -> Vec<Check> {
    let a = shift_coeffs(n);
    let e = DerivationSpec::<Int>::new(DerivationKind::Witt(1), 1, ()).unwrap();
    let d = partial::<Int>(1, 1, ());
    let x = P::<Int>::x(1, (), 1);
    let mut out = Vec::new();
    for k in 1..=n {
        out.push(Check::over(format!("(x^2 d/dx)^{k} expansion"), 0..=mmax, |&m| {
            let f = x.pow(m);
            let lhs = e.apply_pow(&f, k as u32);
            let rhs = (1..=k).fold(P::zero(1, ()), |acc, j| {
                acc.add(&x.pow((k + j) as u32).mul(&d.apply_pow(&f, j as u32)).scale(&a[j][k]))
            });
            (lhs, rhs)
        }));
    }
    out
}

/// `s_j ∘ d_n = d_n ∘ s_j` on monomials up to q-degree `dmax`.
pub fn equivariance_check(n: usize, dmax: u32) -> Vec<Check> {
    let d = dn::<Int>(n, ());
    (1..n)
        .map(|j| {
            Check::over(format!("s{j} d_n = d_n s{j} (n={n}, D={dmax})"), monomials_up_to(n, dmax), |m| {
                let f = mono_poly(n, m);
                (d.apply(&f).s(j), d.apply(&f.s(j)))
            })
        })
        .collect()
}

/// `φ'_n ∘ d_n = d_{n+1} ∘ φ'_n` on generators.
pub fn phi_prime_equivariance_check(n: usize) -> Vec<Check> {
    let d = dn::<Int>(n, ());
    let d1 = dn::<Int>(n + 1, ());
    gens::<Int>(n, ())
        .into_iter()
        .map(|(name, g)| {
            Check::eq(format!("phi'_{n} d({name}) = d phi'_{n}({name})"), &phi_prime(&d.apply(&g)), &d1.apply(&phi_prime(&g)))
        })
        .collect()
}

/// `Ω_n(ω_i) = ω_n^{n-i}` and `d_n Ω_n(ω_i) = 0`.
pub fn omega_checks(n: usize) -> Vec<Check> {
    let d = dn::<Int>(n, ());
    let mut out = Vec::new();
    for i in 1..=n {
        let om = omega_map::<Int>(n, i, ()).unwrap();
        out.push(Check::eq(format!("Omega_{n}(w{i}) = w_{n}^{}", n - i), &om, &labeled_omega(n, (n - i) as i64, n, ()).unwrap()));
        out.push(Check::eq(format!("d_{n} Omega_{n}(w{i}) = 0"), &d.apply(&om), &P::zero(n, ())));
    }
    out
}

/// Partial derivatives: commuting, squares on ω's, and the recursion in `i`.
pub fn partial_checks(n: usize, dmax: u32) -> Vec<Check> {
    let parts: Vec<_> = (1..=n).map(|r| partial::<Int>(r, n, ())).collect();
    let mut out = Vec::new();
    for r in 1..=n {
        for s in r + 1..=n {
            out.push(Check::over(format!("partial{r} partial{s} = partial{s} partial{r} (n={n}, D={dmax})"), monomials_up_to(n, dmax), |m| {
                let f = mono_poly(n, m);
                (parts[r - 1].apply(&parts[s - 1].apply(&f)), parts[s - 1].apply(&parts[r - 1].apply(&f)))
            }));
        }
        for i in 1..=n {
            let w = P::w(n, (), i);
            out.push(Check::eq(format!("partial{r}^2 w{i} = 0 (n={n})"), &parts[r - 1].apply_pow(&w, 2), &P::zero(n, ())));
            if i < r {
                let rec = P::w(n, (), i + 1).add(&P::x(n, (), i + 1).sub(&P::x(n, (), r)).mul(&parts[r - 1].apply(&P::w(n, (), i + 1))));
                out.push(Check::eq(format!("partial{r} w{i} recursion (n={n})"), &parts[r - 1].apply(&w), &rec));
            }
        }
    }
    out
}

/// The α relations, the elementary-symmetric form and the recursive description.
pub fn alpha_relation_checks(n: usize) -> Vec<Check> {
    let a = |i, j| alpha_poly::<Int>(i, j, n, ()).unwrap();
    let x = |i| P::<Int>::x(n, (), i);
    let d = dn::<Int>(n, ());
    let mut out = Vec::new();
    for i in 1..n {
        out.push(Check::eq(format!("T{i}(alpha_{i},{}) (n={n})", i + 1), &a(i, i + 1).t(i), &x(i).add(&x(i + 1)).neg()));
        for j in i + 2..=n {
            out.push(Check::eq(format!("T{i}(alpha_{i},{j}) (n={n})"), &a(i, j).t(i), &a(i + 1, j).neg()));
        }
    }
    for i in 1..n {
        for j in i + 1..n {
            out.push(Check::eq(format!("T{j}(alpha_{i},{}) (n={n})", j + 1), &a(i, j + 1).t(j), &a(i, j)));
            for l in 1..n {
                if l != i && l != j {
                    out.push(Check::eq(format!("s{l}(alpha_{i},{}) (n={n})", j + 1), &a(i, j + 1).s(l), &a(i, j + 1)));
                }
            }
        }
    }
    for i in 1..n {
        for j in i + 1..=n {
            let mut rhs = P::zero(n, ());
            for l in j..=n {
                for k in 0..=(j - i - 1) {
                    let e = elementary_e::<Int>((j - i - 1 - k) as i64, i + 1, j - 1, n, ()).unwrap();
                    let t = x(l).pow(2 + k as u32).mul(&e);
                    rhs = if k % 2 == 0 { rhs.add(&t) } else { rhs.sub(&t) };
                }
            }
            out.push(Check::eq(format!("alpha_{i},{j} elementary form (n={n})"), &a(i, j), &rhs));
            let mut rec = P::zero(n, ());
            for s in 1..j - i {
                let t = complete_h::<Int>(s as i64, i + s, n, n, ()).unwrap().mul(&a(i + s, j));
                rec = if s % 2 == 1 { rec.add(&t) } else { rec.sub(&t) };
            }
            let last = d.apply(&complete_h::<Int>((j - i) as i64, j, n, n, ()).unwrap());
            rec = if (j - i - 1) % 2 == 0 { rec.add(&last) } else { rec.sub(&last) };
            out.push(Check::eq(format!("alpha_{i},{j} recursive form (n={n})"), &a(i, j), &rec));
        }
    }
    for i in 1..n {
        let lhs = d.apply(&P::w(n, (), i + 1));
        let rhs = x(i).add(&x(i + 1)).mul(&P::w(n, (), i + 1)).neg().sub(&d.apply(&P::w(n, (), i)).t(i));
        out.push(Check::eq(format!("d w{} via T{i} (n={n})", i + 1), &lhs, &rhs));
    }
    out
}

struct Case(&'static str, [i64; 3]);

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<char> = self.0.chars().collect();
        let parts: Vec<String> = names.iter().zip(self.1).map(|(c, v)| format!("{c}={v}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Two identities for complete symmetric polynomials `h_l(m, n) = h_l(x_m..x_n)`:
/// `(x_m - x_n) h_{l-1}(m,n) + h_l(m+1,n) - h_l(m,n-1) = 0`, and
/// `Σ_s (-1)^s h_s(q+s,n) Π_{j=q+1+s}^{q+m} (x_j - x_{n+1}) = (-1)^m h_m(q+m+1,n+1)`.
pub fn symmetric_lemma_checks(n: usize, lmax: usize) -> Vec<Check> {
    let h = |l: i64, a: usize, b: usize, rank: usize| complete_h::<Int>(l, a, b, rank, ()).unwrap();
    let x = |i: usize, rank: usize| P::<Int>::x(rank, (), i);
    let mut cases = Vec::new();
    for m in 1..=n {
        for l in 0..=lmax {
            cases.push(Case("ml", [m as i64, l as i64, 0]));
        }
    }
    let first = Check::over(format!("(x_m - x_n) h_(l-1)(m,n) + h_l(m+1,n) - h_l(m,n-1) = 0 (n={n})"), cases, |c| {
        let (m, l) = (c.1[0] as usize, c.1[1]);
        let lhs = x(m, n).sub(&x(n, n)).mul(&h(l - 1, m, n, n)).add(&h(l, m + 1, n, n)).sub(&h(l, m, n - 1, n));
        (lhs, P::zero(n, ()))
    });
    let r = n + 1;
    let mut cases = Vec::new();
    for q in 1..=n {
        for m in 1..=lmax.min(n - q) {
            cases.push(Case("qm", [q as i64, m as i64, 0]));
        }
    }
    let second = Check::over(format!("sum_s (-1)^s h_s(q+s,n) prod (x_j - x_(n+1)) = (-1)^m h_m(q+m+1,n+1) (n={n})"), cases, |c| {
        let (q, m) = (c.1[0] as usize, c.1[1] as usize);
        let mut lhs = P::zero(r, ());
        for s in 0..=m {
            let prod = (q + 1 + s..=q + m).fold(P::one(r, ()), |acc, j| acc.mul(&x(j, r).sub(&x(n + 1, r))));
            let t = h(s as i64, q + s, n, r).mul(&prod);
            lhs = if s % 2 == 0 { lhs.add(&t) } else { lhs.sub(&t) };
        }
        let rhs = h(m as i64, q + m + 1, n + 1, r);
        (lhs, if m % 2 == 0 { rhs } else { rhs.neg() })
    });
    vec![first, second]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> P<Int> {
        P::x(n, (), i)
    }
    fn w(n: usize, i: usize) -> P<Int> {
        P::w(n, (), i)
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_poly::<Int>(4, 5, 5, ()).unwrap(), x(5, 5).pow(2));
        let a12 = (2..=5).fold(P::zero(5, ()), |acc, i| acc.add(&x(5, i).pow(2)));
        assert_eq!(alpha_poly::<Int>(1, 2, 5, ()).unwrap(), a12);
        assert!(alpha_poly::<Int>(2, 2, 5, ()).is_err());
    }

    #[test]
    fn generator_values() {
        assert_eq!(dn::<Int>(5, ()).apply(&w(5, 4)), x(5, 5).pow(2).mul(&w(5, 5)));
        assert!(dn::<Int>(5, ()).apply(&w(5, 5)).is_zero());
        assert_eq!(partial::<Int>(2, 2, ()).apply(&w(2, 1)), w(2, 2));
        let lhs = partial::<Int>(3, 3, ()).apply(&w(3, 1).mul(&w(3, 2)));
        let rhs = w(3, 1).mul(&w(3, 3)).sub(&x(3, 2).sub(&x(3, 3)).mul(&w(3, 2)).mul(&w(3, 3)));
        assert_eq!(lhs, rhs);
        let e = DerivationSpec::<Int>::new(DerivationKind::Sl2(Sl2Op::E), 2, ()).unwrap();
        assert_eq!(e.apply(&w(2, 1)), x(2, 2).pow(2).mul(&w(2, 2)));
        let h = DerivationSpec::<Int>::new(DerivationKind::Sl2(Sl2Op::H), 2, ()).unwrap();
        assert_eq!(h.apply(&w(2, 1)), x(2, 2).mul(&w(2, 2)).scale_int(2));
    }

    #[test]
    fn phi_prime_values() {
        assert_eq!(phi_prime(&w(1, 1)), w(2, 1).sub(&x(2, 2).mul(&w(2, 2))));
        assert_eq!(phi_prime(&x(2, 2)), x(3, 2));
        assert_eq!(omega_map::<Int>(4, 4, ()).unwrap(), w(4, 4));
        assert_eq!(phi_prime_chain(&w(1, 1), 3).unwrap(), labeled_omega::<Int>(3, 2, 3, ()).unwrap());
    }

    #[test]
    fn symmetric_lemmas() {
        for n in 1..=5 {
            for c in symmetric_lemma_checks(n, 5) {
                assert!(c.equal, "{c:?}");
            }
        }
    }

    #[test]
    fn shift_coefficient_values() {
        let a = shift_coeffs(3);
        assert_eq!(a[1][3], Int::Small(6));
        assert_eq!(a[3][3], Int::Small(1));
        // (x²∂)³ = 6x⁴∂ + 6x⁵∂² + x⁶∂³
        assert_eq!(a[2][3], Int::Small(6));
    }

    #[test]
    fn power_formula_low_k() {
        for c in dk_power_formula_check(3, 2) {
            assert!(c.equal, "{c:?}");
        }
    }

    #[test]
    fn one_variable_nilpotency() {
        let d = dn::<Fp>(1, 3);
        let x1 = P::<Fp>::x(1, 3, 1);
        assert_eq!(d.apply_pow(&x1, 2), x1.pow(3).scale_int(2));
        assert!(d.apply_pow(&x1, 3).is_zero());
    }
}
