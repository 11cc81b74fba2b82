//! The superpolynomial ring `R_n = Z[x_1..x_n] ⊗ Λ(ω_1..ω_n)`.
//!
//! Monomials are `x^b ω_S` with `S` stored as a bit set; the sign of any
//! reordering of odd variables is folded into the coefficient.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::coeff::{Coeff, Fp, Int, Rat};
use crate::linalg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("index {index} out of range for n={n}")]
    IndexOutOfRange { index: i64, n: usize },
    #[error("zero input has no bidegree")]
    ZeroInput,
    #[error("divided difference left a remainder")]
    NonDivisible,
    #[error("no decomposition over invariants in bidegree {0:?}")]
    SolveFailure((i64, i64)),
}

/// `x^b ω_S`. Bit `i-1` of `w` marks `ω_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    pub x: Vec<u32>,
    pub w: u32,
}

fn wlist(w: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| w >> i & 1 == 1).map(|i| i + 1)
}

/// Compare two ω-sets as ascending index lists.
pub fn wset_cmp(a: u32, b: u32) -> Ordering {
    wlist(a).cmp(wlist(b))
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.x.cmp(&o.x).then_with(|| wset_cmp(self.w, o.w))
    }
}
impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Mono {
    pub fn one(n: usize) -> Mono {
        Mono { x: vec![0; n], w: 0 }
    }

    pub fn omega_indices(&self) -> Vec<usize> {
        wlist(self.w).collect()
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    pub fn bidegree(&self) -> (i64, i64) {
        let xs: i64 = self.x.iter().map(|&e| e as i64).sum();
        let ws: i64 = wlist(self.w).map(|i| i as i64).sum();
        (2 * xs - 2 * ws, 2 * self.w.count_ones() as i64)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, &e) in self.x.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{}", i + 1, e)),
            }
        }
        parts.extend(wlist(self.w).map(|i| format!("w{i}")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Sign and union of `ω_A · ω_B`; `None` when they share an index.
pub fn wedge(a: u32, b: u32) -> Option<(u32, bool)> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    for j in wlist(b) {
        swaps += (a >> j).count_ones();
    }
    Some((a | b, swaps % 2 == 1))
}

/// Element of `R_n` with coefficients in `C`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtPolynomial<C: Coeff> {
    n: usize,
    ctx: C::Ctx,
    terms: BTreeMap<Mono, C>,
}

/// Bidegree of an element, or the marker for mixed degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bidegree {
    Homogeneous(i64, i64),
    Inhomogeneous,
}

impl<C: Coeff> ExtPolynomial<C> {
    pub fn zero(n: usize, ctx: C::Ctx) -> Self {
        ExtPolynomial { n, ctx, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: C) -> Self {
        let ctx = c.ctx();
        Self::term(n, ctx, Mono::one(n), c)
    }

    pub fn int(n: usize, ctx: C::Ctx, v: i64) -> Self {
        Self::constant(n, C::from_i64(ctx, v))
    }

    pub fn one(n: usize, ctx: C::Ctx) -> Self {
        Self::int(n, ctx, 1)
    }

    pub fn term(n: usize, ctx: C::Ctx, m: Mono, c: C) -> Self {
        let mut p = Self::zero(n, ctx);
        p.add_term(m, c);
        p
    }

    fn check_index(n: usize, i: usize) -> Result<(), ExtError> {
        if i == 0 || i > n {
            Err(ExtError::IndexOutOfRange { index: i as i64, n })
        } else {
            Ok(())
        }
    }

    pub fn try_x(n: usize, ctx: C::Ctx, i: usize) -> Result<Self, ExtError> {
        Self::check_index(n, i)?;
        let mut m = Mono::one(n);
        m.x[i - 1] = 1;
        Ok(Self::term(n, ctx, m, C::one(ctx)))
    }

    pub fn try_w(n: usize, ctx: C::Ctx, i: usize) -> Result<Self, ExtError> {
        Self::check_index(n, i)?;
        let mut m = Mono::one(n);
        m.w = 1 << (i - 1);
        Ok(Self::term(n, ctx, m, C::one(ctx)))
    }

    /// `x_i`; panics when `i` is out of range.
    pub fn x(n: usize, ctx: C::Ctx, i: usize) -> Self {
        Self::try_x(n, ctx, i).expect("x index")
    }

    /// `ω_i`; panics when `i` is out of range.
    pub fn w(n: usize, ctx: C::Ctx, i: usize) -> Self {
        Self::try_w(n, ctx, i).expect("omega index")
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

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(|| C::zero(self.ctx))
    }

    pub fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn same(&self, o: &Self) -> Result<(), ExtError> {
        if self.n != o.n {
            Err(ExtError::RankMismatch(self.n, o.n))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ExtError> {
        self.same(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, ExtError> {
        self.same(o)?;
        let mut r = Self::zero(self.n, self.ctx);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let Some((w, neg)) = wedge(a.w, b.w) else { continue };
                let x = a.x.iter().zip(&b.x).map(|(u, v)| u + v).collect();
                let c = ca.mul(cb);
                r.add_term(Mono { x, w }, if neg { c.neg() } else { c });
            }
        }
        Ok(r)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("rank mismatch")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("rank mismatch")
    }

    pub fn neg(&self) -> Self {
        self.map_terms(|c| c.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        self.map_terms(|c| c.mul(k))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&C::from_i64(self.ctx, k))
    }

    fn map_terms(&self, f: impl Fn(&C) -> C) -> Self {
        let mut r = Self::zero(self.n, self.ctx);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), f(c));
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n, self.ctx);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Change of coefficient ring, term by term.
    pub fn map_coeffs<D: Coeff>(&self, ctx: D::Ctx, f: impl Fn(&C) -> D) -> ExtPolynomial<D> {
        let mut r = ExtPolynomial::zero(self.n, ctx);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), f(c));
        }
        r
    }

    /// Reinterpret in `R_m` for `m >= n` (extra variables unused).
    pub fn widen(&self, m: usize) -> Self {
        assert!(m >= self.n);
        let mut r = Self::zero(m, self.ctx);
        for (mo, c) in &self.terms {
            let mut x = mo.x.clone();
            x.resize(m, 0);
            r.add_term(Mono { x, w: mo.w }, c.clone());
        }
        r
    }

    pub fn bidegree(&self) -> Result<Bidegree, ExtError> {
        let mut it = self.terms.keys().map(Mono::bidegree);
        let first = it.next().ok_or(ExtError::ZeroInput)?;
        if it.all(|d| d == first) {
            Ok(Bidegree::Homogeneous(first.0, first.1))
        } else {
            Ok(Bidegree::Inhomogeneous)
        }
    }

    /// Split into bidegree-homogeneous components.
    pub fn homogeneous_parts(&self) -> BTreeMap<(i64, i64), Self> {
        let mut out: BTreeMap<(i64, i64), Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bidegree())
                .or_insert_with(|| Self::zero(self.n, self.ctx))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Parity of the λ-degree, if all terms agree.
    pub fn parity(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.w.count_ones() % 2);
        let first = it.next().unwrap_or(0);
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Ring homomorphism into `R_target` determined by generator images.
    /// Odd images must be odd for the result to be a homomorphism.
    pub fn substitute(&self, target: usize, ximg: &[Self], wimg: &[Self]) -> Self {
        assert_eq!(ximg.len(), self.n);
        assert_eq!(wimg.len(), self.n);
        let mut pows: Vec<Vec<Self>> = vec![vec![Self::one(target, self.ctx)]; self.n];
        let mut r = Self::zero(target, self.ctx);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.x.iter().enumerate() {
                while pows[i].len() <= e as usize {
                    let next = pows[i].last().unwrap().mul(&ximg[i]);
                    pows[i].push(next);
                }
                if e > 0 {
                    t = t.mul(&pows[i][e as usize]);
                }
            }
            for i in wlist(m.w) {
                t = t.mul(&wimg[i - 1]);
                if t.is_zero() {
                    break;
                }
            }
            r = r.add(&t);
        }
        r
    }

    /// The simple transposition `s_j`.
    pub fn apply_transposition(&self, j: usize) -> Result<Self, ExtError> {
        if j == 0 || j >= self.n {
            return Err(ExtError::IndexOutOfRange { index: j as i64, n: self.n });
        }
        let (n, ctx) = (self.n, self.ctx);
        let mut r = Self::zero(n, ctx);
        let bj = 1u32 << (j - 1);
        let bj1 = 1u32 << j;
        for (m, c) in &self.terms {
            let mut x = m.x.clone();
            x.swap(j - 1, j);
            if m.w & bj == 0 {
                r.add_term(Mono { x, w: m.w }, c.clone());
                continue;
            }
            // ω_j ↦ ω_j + (x_j - x_{j+1}) ω_{j+1}
            r.add_term(Mono { x: x.clone(), w: m.w }, c.clone());
            if m.w & bj1 == 0 {
                // ω_j is the k-th odd factor; replacing it by ω_{j+1} keeps the order.
                let w = (m.w & !bj) | bj1;
                let mut xa = x.clone();
                xa[j - 1] += 1;
                r.add_term(Mono { x: xa, w }, c.clone());
                let mut xb = x;
                xb[j] += 1;
                r.add_term(Mono { x: xb, w }, c.neg());
            }
        }
        Ok(r)
    }

    pub fn s(&self, j: usize) -> Self {
        self.apply_transposition(j).expect("transposition index")
    }

    pub fn apply_permutation(&self, w: &Permutation) -> Result<Self, ExtError> {
        if w.n() != self.n {
            return Err(ExtError::RankMismatch(w.n(), self.n));
        }
        let mut f = self.clone();
        for &j in w.reduced_word().iter().rev() {
            f = f.s(j);
        }
        Ok(f)
    }

    /// Divided difference `T_j(f) = (f - s_j f)/(x_j - x_{j+1})`.
    pub fn demazure(&self, j: usize) -> Result<Self, ExtError> {
        let g = self.sub(&self.apply_transposition(j)?);
        divide_linear(&g, j)
    }

    pub fn t(&self, j: usize) -> Self {
        self.demazure(j).expect("divided difference")
    }

    pub fn is_invariant(&self) -> bool {
        (1..self.n).all(|j| self.s(j) == *self)
    }

    /// Keep only the terms whose ω-part is `w`.
    pub fn omega_component(&self, w: u32) -> Self {
        let mut r = Self::zero(self.n, self.ctx);
        for (m, c) in &self.terms {
            if m.w == w {
                r.add_term(m.clone(), c.clone());
            }
        }
        r
    }
}

/// Exact division by `x_j - x_{j+1}` per ω-component.
fn divide_linear<C: Coeff>(g: &ExtPolynomial<C>, j: usize) -> Result<ExtPolynomial<C>, ExtError> {
    let (u, v) = (j - 1, j);
    // Group by everything except the exponents of x_j, x_{j+1}.
    let mut groups: BTreeMap<Mono, BTreeMap<(u32, u32), C>> = BTreeMap::new();
    for (m, c) in &g.terms {
        let mut key = m.clone();
        let (a, b) = (key.x[u], key.x[v]);
        key.x[u] = 0;
        key.x[v] = 0;
        groups.entry(key).or_default().insert((a, b), c.clone());
    }
    let mut q = ExtPolynomial::zero(g.n, g.ctx);
    for (key, mut poly) in groups {
        while let Some((&(a, b), c)) = poly.iter().next_back().map(|(k, c)| (k, c.clone())) {
            if a == 0 {
                return Err(ExtError::NonDivisible);
            }
            let mut m = key.clone();
            m.x[u] = a - 1;
            m.x[v] = b;
            q.add_term(m, c.clone());
            poly.remove(&(a, b));
            let e = poly.entry((a - 1, b + 1)).or_insert_with(|| C::zero(g.ctx));
            *e = e.add(&c);
            if e.is_zero() {
                poly.remove(&(a - 1, b + 1));
            }
        }
    }
    Ok(q)
}

impl<C: Coeff> fmt::Display for ExtPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, abs) = c.sign_abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let is_one = m.x.iter().all(|&e| e == 0) && m.w == 0;
            if is_one {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl ExtPolynomial<Int> {
    pub fn reduce_mod(&self, p: u64) -> ExtPolynomial<Fp> {
        self.map_coeffs(p, |c| crate::coeff::int_to_fp(c, p))
    }

    pub fn to_rat(&self) -> ExtPolynomial<Rat> {
        self.map_coeffs((), |c| Rat::from(c))
    }
}

/// One-line permutation of `{1..n}`; composition is `(w v)(i) = w(v(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    img: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { img: (0..n as u8).collect() }
    }

    /// From 1-based images; `None` unless a bijection.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return None;
            }
            seen[i - 1] = true;
        }
        Some(Permutation { img: images.iter().map(|&i| (i - 1) as u8).collect() })
    }

    pub fn simple(n: usize, j: usize) -> Self {
        assert!(j >= 1 && j < n);
        let mut p = Self::identity(n);
        p.img.swap(j - 1, j);
        p
    }

    /// `s_{a_1} s_{a_2} ... s_{a_k}`.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        word.iter().fold(Self::identity(n), |acc, &j| acc.compose(&Self::simple(n, j)))
    }

    pub fn n(&self) -> usize {
        self.img.len()
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.img[i - 1] as usize + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn compose(&self, o: &Self) -> Self {
        Permutation { img: o.img.iter().map(|&i| self.img[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut img = vec![0u8; self.n()];
        for (i, &j) in self.img.iter().enumerate() {
            img[j as usize] = i as u8;
        }
        Permutation { img }
    }

    pub fn length(&self) -> usize {
        let mut l = 0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.img[i] > self.img[j] {
                    l += 1;
                }
            }
        }
        l
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Lexicographically minimal reduced word.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = self.clone();
        while !cur.is_identity() {
            let inv = cur.inverse();
            let j = (1..cur.n()).find(|&j| inv.img[j - 1] > inv.img[j]).unwrap();
            word.push(j);
            cur = Self::simple(cur.n(), j).compose(&cur);
        }
        word
    }

    /// Longest element.
    pub fn longest(n: usize) -> Self {
        Permutation { img: (0..n as u8).rev().collect() }
    }

    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        permute(&mut cur, 0, &mut out);
        out.sort();
        out
    }

    /// Embed into `S_m` fixing the extra points.
    pub fn widen(&self, m: usize) -> Self {
        let mut img = self.img.clone();
        img.extend(self.n() as u8..m as u8);
        Permutation { img }
    }
}

fn permute(cur: &mut Vec<u8>, k: usize, out: &mut Vec<Permutation>) {
    if k == cur.len() {
        out.push(Permutation { img: cur.clone() });
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

fn check_range(j: usize, k: usize, n: usize) -> Result<(), ExtError> {
    if j == 0 {
        return Err(ExtError::IndexOutOfRange { index: 0, n });
    }
    if k > n {
        return Err(ExtError::IndexOutOfRange { index: k as i64, n });
    }
    Ok(())
}

/// Exponent vectors of total degree `d` supported on positions `lo..=hi` (0-based).
fn compositions(n: usize, lo: usize, hi: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(pos: usize, hi: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == hi {
            cur[pos] = left;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(pos + 1, hi, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    if lo > hi {
        if d == 0 {
            out.push(cur);
        }
        return out;
    }
    rec(lo, hi, d, &mut cur, &mut out);
    out
}

/// Complete homogeneous symmetric polynomial `h_l(x_j, ..., x_k)`.
/// An empty variable range gives `h_0 = 1` and zero otherwise.
pub fn complete_h<C: Coeff>(l: i64, j: usize, k: usize, n: usize, ctx: C::Ctx) -> Result<ExtPolynomial<C>, ExtError> {
    check_range(j, k, n)?;
    let mut r = ExtPolynomial::zero(n, ctx);
    if l < 0 {
        return Ok(r);
    }
    if j > k {
        return Ok(if l == 0 { ExtPolynomial::one(n, ctx) } else { r });
    }
    for x in compositions(n, j - 1, k - 1, l as u32) {
        r.add_term(Mono { x, w: 0 }, C::one(ctx));
    }
    Ok(r)
}

/// Elementary symmetric polynomial `e_l(x_j, ..., x_k)`.
pub fn elementary_e<C: Coeff>(l: i64, j: usize, k: usize, n: usize, ctx: C::Ctx) -> Result<ExtPolynomial<C>, ExtError> {
    check_range(j, k, n)?;
    let mut r = ExtPolynomial::zero(n, ctx);
    if l < 0 {
        return Ok(r);
    }
    let vars: Vec<usize> = (j..=k).collect();
    for mask in 0u32..(1 << vars.len()) {
        if mask.count_ones() as i64 != l {
            continue;
        }
        let mut x = vec![0; n];
        for (t, &v) in vars.iter().enumerate() {
            if mask >> t & 1 == 1 {
                x[v - 1] = 1;
            }
        }
        r.add_term(Mono { x, w: 0 }, C::one(ctx));
    }
    Ok(r)
}

/// `ω_k^a = Σ_{l=1}^{k} (-1)^{a+k+l} h_{a+l-k}(l,k) ω_l`.
pub fn labeled_omega<C: Coeff>(k: usize, a: i64, n: usize, ctx: C::Ctx) -> Result<ExtPolynomial<C>, ExtError> {
    if k == 0 || k > n {
        return Err(ExtError::IndexOutOfRange { index: k as i64, n });
    }
    let mut r = ExtPolynomial::zero(n, ctx);
    for l in 1..=k {
        let sign = if (a + k as i64 + l as i64) % 2 == 0 { 1 } else { -1 };
        let h = complete_h::<C>(a + l as i64 - k as i64, l, k, n, ctx)?;
        r = r.add(&h.mul(&ExtPolynomial::w(n, ctx, l)).scale_int(sign));
    }
    Ok(r)
}

/// Staircase exponent vectors `0 <= b_i <= n-i`.
pub fn staircase(n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for i in 1..=n {
        let mut next = Vec::new();
        for v in &out {
            for e in 0..=(n - i) as u32 {
                let mut v2: Vec<u32> = v.clone();
                v2.push(e);
                next.push(v2);
            }
        }
        out = next;
    }
    out
}

/// Multisets of parts in `1..=n` with sum `d`, as multiplicity vectors.
fn partitions_into(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(part: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if part == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for m in 0..=left / part as u32 {
            cur[part - 1] = m;
            rec(part - 1, left - m * part as u32, cur, out);
        }
        cur[part - 1] = 0;
    }
    rec(n, d, &mut cur, &mut out);
    out
}

/// Writes `f = Σ_b x^b c_b` over the staircase basis with `S_n`-invariant `c_b`.
///
/// Invariants in each bidegree are spanned by products of elementary
/// symmetric polynomials and the labeled omegas `ω_n^a`, `0 <= a < n`.
pub fn decompose_over_invariants<C: Coeff>(
    f: &ExtPolynomial<C>,
) -> Result<BTreeMap<Vec<u32>, ExtPolynomial<C>>, ExtError> {
    let (n, ctx) = (f.n(), f.ctx());
    let elem: Vec<ExtPolynomial<C>> = (1..=n).map(|k| elementary_e(k as i64, 1, n, n, ctx).unwrap()).collect();
    let lab: Vec<ExtPolynomial<C>> = (0..n).map(|a| labeled_omega(n, a as i64, n, ctx).unwrap()).collect();
    let stairs = staircase(n);
    let mut out: BTreeMap<Vec<u32>, ExtPolynomial<C>> = BTreeMap::new();
    for ((qd, ld), part) in f.homogeneous_parts() {
        let k = (ld / 2) as u32;
        // columns: (staircase index, invariant)
        let mut cols: Vec<(usize, ExtPolynomial<C>)> = Vec::new();
        for amask in 0u32..(1 << n) {
            if amask.count_ones() != k {
                continue;
            }
            let mut omega = ExtPolynomial::one(n, ctx);
            let mut odeg = 0i64;
            for a in 0..n {
                if amask >> a & 1 == 1 {
                    omega = omega.mul(&lab[a]);
                    odeg += 2 * a as i64 - 2 * n as i64;
                }
            }
            if omega.is_zero() {
                continue;
            }
            for (bi, b) in stairs.iter().enumerate() {
                let bdeg: i64 = 2 * b.iter().map(|&e| e as i64).sum::<i64>();
                let rest = qd - bdeg - odeg;
                if rest < 0 || rest % 2 != 0 {
                    continue;
                }
                for mu in partitions_into(n, (rest / 2) as u32) {
                    let mut inv = omega.clone();
                    for (t, &m) in mu.iter().enumerate() {
                        if m > 0 {
                            inv = inv.mul(&elem[t].pow(m));
                        }
                    }
                    cols.push((bi, inv));
                }
            }
        }
        let expanded: Vec<ExtPolynomial<C>> = cols
            .iter()
            .map(|(bi, inv)| ExtPolynomial::term(n, ctx, Mono { x: stairs[*bi].clone(), w: 0 }, C::one(ctx)).mul(inv))
            .collect();
        let mut rows: BTreeMap<Mono, usize> = BTreeMap::new();
        for e in expanded.iter().chain(std::iter::once(&part)) {
            for (m, _) in e.terms() {
                let len = rows.len();
                rows.entry(m.clone()).or_insert(len);
            }
        }
        let mut mat = vec![vec![C::zero(ctx); cols.len()]; rows.len()];
        for (c, e) in expanded.iter().enumerate() {
            for (m, v) in e.terms() {
                mat[rows[m]][c] = v.clone();
            }
        }
        let mut rhs = vec![C::zero(ctx); rows.len()];
        for (m, v) in part.terms() {
            rhs[rows[m]] = v.clone();
        }
        let sol = linalg::solve(&mat, cols.len(), &rhs, ctx).ok_or(ExtError::SolveFailure((qd, ld)))?;
        for ((bi, inv), s) in cols.iter().zip(sol) {
            if s.is_zero() {
                continue;
            }
            let e = out.entry(stairs[*bi].clone()).or_insert_with(|| ExtPolynomial::zero(n, ctx));
            *e = e.add(&inv.scale(&s));
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Inverse of [`decompose_over_invariants`].
pub fn recompose<C: Coeff>(n: usize, ctx: C::Ctx, parts: &BTreeMap<Vec<u32>, ExtPolynomial<C>>) -> ExtPolynomial<C> {
    let mut r = ExtPolynomial::zero(n, ctx);
    for (b, c) in parts {
        r = r.add(&ExtPolynomial::term(n, ctx, Mono { x: b.clone(), w: 0 }, C::one(ctx)).mul(c));
    }
    r
}

/// Every monomial `x^b ω_S` whose polynomial part has q-degree at most `d`.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    for t in 0..=d / 2 {
        for x in compositions(n, 0, n.saturating_sub(1), t) {
            if n == 0 {
                continue;
            }
            for w in 0u32..(1 << n) {
                out.push(Mono { x: x.clone(), w });
            }
        }
    }
    out
}

/// Monomials `x^b ω_S` with `S` fixed and `|b| = t`.
pub fn monomials_with_omega(n: usize, w: u32, t: u32) -> Vec<Mono> {
    compositions(n, 0, n - 1, t).into_iter().map(|x| Mono { x, w }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = ExtPolynomial<Int>;

    fn x(n: usize, i: usize) -> P {
        P::x(n, (), i)
    }
    fn w(n: usize, i: usize) -> P {
        P::w(n, (), i)
    }

    #[test]
    fn odd_variables_anticommute() {
        assert!(w(2, 1).mul(&w(2, 1)).is_zero());
        assert_eq!(w(2, 2).mul(&w(2, 1)), w(2, 1).mul(&w(2, 2)).neg());
        assert_eq!(w(2, 1).mul(&w(2, 2)).to_string(), "w1*w2");
    }

    #[test]
    fn bidegrees() {
        assert_eq!(x(3, 1).bidegree(), Ok(Bidegree::Homogeneous(2, 0)));
        assert_eq!(w(3, 3).bidegree(), Ok(Bidegree::Homogeneous(-6, 2)));
        assert_eq!(x(3, 1).add(&w(3, 1)).bidegree(), Ok(Bidegree::Inhomogeneous));
        assert_eq!(P::zero(3, ()).bidegree(), Err(ExtError::ZeroInput));
    }

    #[test]
    fn transposition_values() {
        assert_eq!(x(2, 1).s(1), x(2, 2));
        assert_eq!(w(2, 1).s(1), w(2, 1).add(&x(2, 1).sub(&x(2, 2)).mul(&w(2, 2))));
        assert_eq!(w(3, 2).s(1), w(3, 2));
        assert!(matches!(x(2, 1).apply_transposition(2), Err(ExtError::IndexOutOfRange { .. })));
    }

    #[test]
    fn permutation_word_convention() {
        let wperm = Permutation::from_word(3, &[1, 2]);
        assert_eq!(x(3, 3).apply_permutation(&wperm).unwrap(), x(3, 1));
        assert_eq!(wperm.reduced_word(), vec![1, 2]);
        assert_eq!(Permutation::longest(3).reduced_word(), vec![1, 2, 1]);
    }

    #[test]
    fn divided_difference_values() {
        assert_eq!(x(2, 1).t(1), P::one(2, ()));
        assert_eq!(w(2, 1).t(1), w(2, 2).neg());
        assert!(x(2, 1).mul(&x(2, 2)).t(1).is_zero());
    }

    #[test]
    fn symmetric_functions() {
        assert_eq!(complete_h::<Int>(0, 2, 5, 5, ()).unwrap(), P::one(5, ()));
        assert!(complete_h::<Int>(-1, 1, 3, 3, ()).unwrap().is_zero());
        assert_eq!(complete_h::<Int>(1, 2, 3, 3, ()).unwrap(), x(3, 2).add(&x(3, 3)));
        assert_eq!(elementary_e::<Int>(2, 1, 3, 3, ()).unwrap().len(), 3);
    }

    #[test]
    fn labeled_omega_values() {
        assert_eq!(labeled_omega::<Int>(3, 0, 3, ()).unwrap(), w(3, 3));
        let w21 = labeled_omega::<Int>(2, 1, 2, ()).unwrap();
        assert_eq!(w21, w(2, 1).sub(&x(2, 2).mul(&w(2, 2))));
        assert!(w21.is_invariant());
        assert!(!w(2, 1).is_invariant());
    }

    #[test]
    fn decomposition_of_x2() {
        let f = x(2, 2).to_rat();
        let d = decompose_over_invariants(&f).unwrap();
        let one = d.get(&vec![0, 0]).unwrap();
        let xs = d.get(&vec![1, 0]).unwrap();
        assert_eq!(*one, x(2, 1).add(&x(2, 2)).to_rat());
        assert_eq!(*xs, P::int(2, (), -1).to_rat());
        assert_eq!(recompose(2, (), &d), f);
    }

    #[test]
    fn render_order() {
        let f = x(3, 1).pow(2).mul(&x(3, 2)).mul(&w(3, 1)).mul(&w(3, 3)).scale_int(2).sub(&w(3, 2));
        assert_eq!(f.to_string(), "2*x1^2*x2*w1*w3 - w2");
    }
}
