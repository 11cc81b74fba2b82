//! The cyclotomic ring `O_p = Z[q]/(1 + q^2 + ... + q^{2(p-1)})`, tensored
//! with `Q`, and Laurent polynomials in `lambda` over it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::coeff::is_prime;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("element is not invertible in Q[q]/Phi_p")]
    NotInvertible,
    #[error("cannot combine elements for p={0} and p={1}")]
    PrimeMismatch(u64, u64),
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
}

type Dense = Vec<BigRational>;

fn trim(mut v: Dense) -> Dense {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn phi(p: u64) -> Dense {
    let mut v = vec![BigRational::zero(); 2 * p as usize - 1];
    for k in 0..p as usize {
        v[2 * k] = BigRational::one();
    }
    v
}

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn dense_sub(a: &Dense, b: &Dense) -> Dense {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
fn dense_divmod(a: &Dense, b: &Dense) -> (Dense, Dense) {
    let b = trim(b.clone());
    let mut r = trim(a.clone());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut quo = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let d = r.len() - 1;
        let c = &r[d] / &lead;
        let shift = d - db;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        quo[shift] = c;
        r = trim(r);
    }
    (trim(quo), r)
}

/// Element of `Q[q]/Phi_p`, stored as its remainder of degree at most `2p-3`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloElement {
    p: u64,
    c: Dense,
}

impl CycloElement {
    /// Builds the class of a Laurent polynomial given as `(exponent, coefficient)` pairs.
    pub fn from_laurent(p: u64, terms: &[(i64, BigRational)]) -> Result<Self, CycloError> {
        if p < 3 || !is_prime(p) {
            return Err(CycloError::BadPrime(p));
        }
        let period = 2 * p as i64;
        let mut v = vec![BigRational::zero(); period as usize];
        for (e, c) in terms {
            v[e.rem_euclid(period) as usize] += c;
        }
        Ok(Self::reduce_dense(p, v))
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_laurent(p: u64, terms: &[(i64, i64)]) -> Self {
        let t: Vec<_> = terms
            .iter()
            .map(|(e, c)| (*e, BigRational::from_integer(BigInt::from(*c))))
            .collect();
        Self::from_laurent(p, &t).expect("odd prime required")
    }

    fn reduce_dense(p: u64, v: Dense) -> Self {
        let (_, r) = dense_divmod(&v, &phi(p));
        CycloElement { p, c: r }
    }

    pub fn zero(p: u64) -> Self {
        Self::from_int_laurent(p, &[])
    }

    pub fn one(p: u64) -> Self {
        Self::from_int_laurent(p, &[(0, 1)])
    }

    pub fn int(p: u64, v: i64) -> Self {
        Self::from_int_laurent(p, &[(0, v)])
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(p: u64, k: i64) -> Self {
        Self::from_int_laurent(p, &[(k, 1)])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Coefficients of `q^0, q^1, ...` of the canonical remainder.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    /// The canonical coefficients as integers, when they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.c
            .iter()
            .map(|x| if x.is_integer() { Some(x.to_integer()) } else { None })
            .collect()
    }

    fn check(&self, o: &Self) -> Result<(), CycloError> {
        if self.p == o.p {
            Ok(())
        } else {
            Err(CycloError::PrimeMismatch(self.p, o.p))
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, CycloError> {
        self.check(o)?;
        let n = self.c.len().max(o.c.len());
        let mut v = vec![BigRational::zero(); n];
        for (i, x) in self.c.iter().enumerate() {
            v[i] += x;
        }
        for (i, x) in o.c.iter().enumerate() {
            v[i] += x;
        }
        Ok(CycloElement { p: self.p, c: trim(v) })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, CycloError> {
        self.check(o)?;
        Ok(CycloElement { p: self.p, c: dense_sub(&self.c, &o.c) })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, CycloError> {
        self.check(o)?;
        Ok(Self::reduce_dense(self.p, dense_mul(&self.c, &o.c)))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycloElement { p: self.p, c: trim(self.c.iter().map(|x| x * r).collect()) }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.p);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse via the extended Euclidean algorithm against `Phi_p`.
    pub fn invert(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::NotInvertible);
        }
        let (mut r0, mut r1) = (phi(self.p), self.c.clone());
        let (mut s0, mut s1): (Dense, Dense) = (vec![], vec![BigRational::one()]);
        while !r1.is_empty() {
            let (quo, rem) = dense_divmod(&r0, &r1);
            let s2 = dense_sub(&s0, &dense_mul(&quo, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return Err(CycloError::NotInvertible);
        }
        let k = r0[0].recip();
        let s: Dense = s0.iter().map(|x| x * &k).collect();
        Ok(Self::reduce_dense(self.p, s))
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

macro_rules! cyclo_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr for &CycloElement {
            type Output = CycloElement;
            fn $m(self, o: &CycloElement) -> CycloElement {
                self.$try(o).expect("elements for different p")
            }
        }
        impl $tr for CycloElement {
            type Output = CycloElement;
            fn $m(self, o: CycloElement) -> CycloElement {
                self.$try(&o).expect("elements for different p")
            }
        }
    };
}
cyclo_op!(Add, add, try_add);
cyclo_op!(Sub, sub, try_sub);
cyclo_op!(Mul, mul, try_mul);

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement { p: self.p, c: self.c.iter().map(|x| -x).collect() }
    }
}

/// Quantum integer `[n] = q^{n-1} + q^{n-3} + ... + q^{1-n}`.
pub fn quantum_int(p: u64, n: u64) -> CycloElement {
    let terms: Vec<(i64, i64)> =
        (0..n as i64).map(|j| (n as i64 - 1 - 2 * j, 1)).collect();
    CycloElement::from_int_laurent(p, &terms)
}

/// Laurent polynomial in `lambda` with coefficients in `Q[q]/Phi_p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QLambda {
    p: u64,
    terms: BTreeMap<i64, CycloElement>,
}

impl QLambda {
    pub fn zero(p: u64) -> Self {
        QLambda { p, terms: BTreeMap::new() }
    }

    pub fn from_cyclo(c: CycloElement) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * lambda^k`.
    pub fn monomial(c: CycloElement, k: i64) -> Self {
        let p = c.p();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        QLambda { p, terms }
    }

    /// `q^a lambda^b`.
    pub fn q_lambda(p: u64, a: i64, b: i64) -> Self {
        Self::monomial(CycloElement::q_pow(p, a), b)
    }

    pub fn one(p: u64) -> Self {
        Self::q_lambda(p, 0, 0)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &CycloElement)> {
        self.terms.iter()
    }

    fn check(&self, o: &Self) -> Result<(), CycloError> {
        if self.p == o.p {
            Ok(())
        } else {
            Err(CycloError::PrimeMismatch(self.p, o.p))
        }
    }

    fn insert_add(terms: &mut BTreeMap<i64, CycloElement>, k: i64, c: CycloElement) {
        let s = match terms.remove(&k) {
            Some(old) => &old + &c,
            None => c,
        };
        if !s.is_zero() {
            terms.insert(k, s);
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, CycloError> {
        self.check(o)?;
        let mut t = self.terms.clone();
        for (k, c) in &o.terms {
            Self::insert_add(&mut t, *k, c.clone());
        }
        Ok(QLambda { p: self.p, terms: t })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, CycloError> {
        self.check(o)?;
        let mut t = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                Self::insert_add(&mut t, a + b, x * y);
            }
        }
        Ok(QLambda { p: self.p, terms: t })
    }

    pub fn scale(&self, c: &CycloElement) -> Self {
        let mut t = BTreeMap::new();
        for (k, x) in &self.terms {
            Self::insert_add(&mut t, *k, x * c);
        }
        QLambda { p: self.p, terms: t }
    }

    /// Inverse of a single `lambda`-term with invertible coefficient.
    pub fn invert(&self) -> Result<Self, CycloError> {
        if self.terms.len() != 1 {
            return Err(CycloError::NotInvertible);
        }
        let (k, c) = self.terms.iter().next().unwrap();
        Ok(Self::monomial(c.invert()?, -k))
    }
}

impl fmt::Display for QLambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&0) {
                return write!(f, "{c}");
            }
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*l"),
                _ => format!("({c})*l^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &QLambda {
    type Output = QLambda;
    fn add(self, o: &QLambda) -> QLambda {
        self.try_add(o).expect("elements for different p")
    }
}
impl Mul for &QLambda {
    type Output = QLambda;
    fn mul(self, o: &QLambda) -> QLambda {
        self.try_mul(o).expect("elements for different p")
    }
}
impl Neg for &QLambda {
    type Output = QLambda;
    fn neg(self) -> QLambda {
        QLambda { p: self.p, terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}
impl Sub for &QLambda {
    type Output = QLambda;
    fn sub(self, o: &QLambda) -> QLambda {
        self + &(-o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relator_vanishes() {
        let x = CycloElement::from_int_laurent(3, &[(0, 1), (2, 1), (4, 1)]);
        assert!(x.is_zero());
        assert_eq!(CycloElement::q_pow(3, 6), CycloElement::one(3));
    }

    #[test]
    fn q_inverse_is_q5_for_p3() {
        let q = CycloElement::q_pow(3, 1);
        let inv = q.invert().unwrap();
        assert_eq!(inv, CycloElement::q_pow(3, 5));
        assert_eq!(&inv * &q, CycloElement::one(3));
    }

    #[test]
    fn quantum_two() {
        for p in [3, 5, 7] {
            let expect = CycloElement::from_int_laurent(p, &[(1, 1), (2 * p as i64 - 1, 1)]);
            assert_eq!(quantum_int(p, 2), expect);
        }
        assert!(quantum_int(5, 0).is_zero());
        assert_eq!(quantum_int(5, 1), CycloElement::one(5));
    }

    #[test]
    fn render() {
        let x = CycloElement::from_int_laurent(7, &[(4, 3), (2, -1), (0, 1)]);
        assert_eq!(x.to_string(), "3*q^4 - q^2 + 1");
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = CycloElement::one(3);
        let b = CycloElement::one(5);
        assert_eq!(a.try_add(&b), Err(CycloError::PrimeMismatch(3, 5)));
    }
}
