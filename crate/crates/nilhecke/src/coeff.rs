//! Scalar coefficient domains: integers, rationals and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A commutative coefficient ring. Values of a ring that needs runtime
/// data (the characteristic of `F_p`) carry it in `Ctx`.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Ctx: Copy + Eq + fmt::Debug + Send + Sync + 'static;

    fn ctx(&self) -> Self::Ctx;
    fn from_i64(ctx: Self::Ctx, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, if one exists in the ring.
    fn inv(&self) -> Option<Self>;
    /// Sign and absolute value for printing. `F_p` prints its symmetric residue.
    fn sign_abs(&self) -> (bool, String);

    fn zero(ctx: Self::Ctx) -> Self {
        Self::from_i64(ctx, 0)
    }
    fn one(ctx: Self::Ctx) -> Self {
        Self::from_i64(ctx, 1)
    }
    fn is_one(&self) -> bool {
        *self == Self::one(self.ctx())
    }
}

/// Integers with an inline fast path; overflow promotes to a big integer.
#[derive(Clone, Debug)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    fn big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    fn norm(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        self.big()
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(b) => b.to_i64(),
        }
    }
}

impl PartialEq for Int {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => a == b,
            _ => self.big() == o.big(),
        }
    }
}
impl Eq for Int {}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl Coeff for Int {
    type Ctx = ();

    fn ctx(&self) {}
    fn from_i64(_: (), v: i64) -> Self {
        Int::Small(v)
    }
    fn is_zero(&self) -> bool {
        match self {
            Int::Small(v) => *v == 0,
            Int::Big(b) => b.is_zero(),
        }
    }
    fn add(&self, o: &Self) -> Self {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(c) = a.checked_add(*b) {
                return Int::Small(c);
            }
        }
        Int::norm(self.big() + o.big())
    }
    fn sub(&self, o: &Self) -> Self {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(c) = a.checked_sub(*b) {
                return Int::Small(c);
            }
        }
        Int::norm(self.big() - o.big())
    }
    fn mul(&self, o: &Self) -> Self {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(c) = a.checked_mul(*b) {
                return Int::Small(c);
            }
        }
        Int::norm(self.big() * o.big())
    }
    fn neg(&self) -> Self {
        if let Int::Small(a) = self {
            if let Some(c) = a.checked_neg() {
                return Int::Small(c);
            }
        }
        Int::norm(-self.big())
    }
    fn inv(&self) -> Option<Self> {
        match self.to_i64() {
            Some(1) => Some(Int::Small(1)),
            Some(-1) => Some(Int::Small(-1)),
            _ => None,
        }
    }
    fn sign_abs(&self) -> (bool, String) {
        let b = self.big();
        (b.is_negative(), b.abs().to_string())
    }
}

/// Exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn new(n: i64, d: i64) -> Rat {
        Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&Int> for Rat {
    fn from(v: &Int) -> Rat {
        Rat(BigRational::from_integer(v.to_bigint()))
    }
}

impl Coeff for Rat {
    type Ctx = ();

    fn ctx(&self) {}
    fn from_i64(_: (), v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Rat(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Rat(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Rat(&self.0 * &o.0)
    }
    fn neg(&self) -> Self {
        Rat(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }
    fn sign_abs(&self) -> (bool, String) {
        (self.0.is_negative(), self.0.abs().to_string())
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

/// Residue class in `F_p` for an odd prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
    v: u64,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    /// Panics unless `p` is an odd prime below 2^31.
    pub fn new(p: u64, v: i64) -> Fp {
        assert!((3..(1 << 31)).contains(&p) && is_prime(p), "{p} is not an odd prime");
        Fp { p, v: v.rem_euclid(p as i64) as u64 }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn symmetric(&self) -> i64 {
        if self.v > self.p / 2 {
            self.v as i64 - self.p as i64
        } else {
            self.v as i64
        }
    }

    fn same(&self, o: &Fp) {
        assert_eq!(self.p, o.p, "mixing F_{} with F_{}", self.p, o.p);
    }

    pub fn pow(&self, mut e: u64) -> Fp {
        let mut base = *self;
        let mut acc = Fp { p: self.p, v: 1 };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}

impl Coeff for Fp {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.p
    }
    fn from_i64(p: u64, v: i64) -> Self {
        Fp::new(p, v)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        self.same(o);
        Fp { p: self.p, v: (self.v + o.v) % self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        self.same(o);
        Fp { p: self.p, v: (self.v + self.p - o.v) % self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        self.same(o);
        Fp { p: self.p, v: (self.v * o.v) % self.p }
    }
    fn neg(&self) -> Self {
        Fp { p: self.p, v: (self.p - self.v) % self.p }
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }
    fn sign_abs(&self) -> (bool, String) {
        let s = self.symmetric();
        (s < 0, s.abs().to_string())
    }
}

/// Reduction `Z -> F_p`.
pub fn int_to_fp(v: &Int, p: u64) -> Fp {
    match v {
        Int::Small(s) => Fp::new(p, s.rem_euclid(p as i64)),
        Int::Big(b) => {
            let r = ((b % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
            Fp::new(p, r.to_i64().unwrap())
        }
    }
}
