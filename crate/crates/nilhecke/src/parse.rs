//! A small expression language for ring elements, `A_n` elements and `K_0` vectors.
//!
//! ```text
//! expr   := "-"? term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := INT | atom ("^" EXP)? | "(" expr ")"
//! atom   := "x"INT | "w"INT | "T"INT | "q" | "l" | "A"INT
//! ```
//!
//! `T` is only allowed in the algebra context, `q`, `l` and `A` only in the
//! `k0` context, where exponents may be negative.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::coeff::{is_prime, Int};
use crate::cyclo::{CycloElement, QLambda};
use crate::ennilhecke::AnElement;
use crate::extpoly::ExtPolynomial;
use crate::ktheory::K0Vector;

pub const MAX_EXPONENT: i64 = 32;
pub const MAX_DEPTH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Context {
    Ring,
    Algebra,
    K0,
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Context::Ring => "ring",
            Context::Algebra => "algebra",
            Context::K0 => "k0",
        })
    }
}

impl FromStr for Context {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ring" => Ok(Context::Ring),
            "algebra" => Ok(Context::Algebra),
            "k0" => Ok(Context::K0),
            _ => Err(format!("unknown context '{s}' (ring, algebra, k0)")),
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },
    #[error("index {index} out of range at position {pos} (n={n})")]
    IndexOutOfRange { pos: usize, index: u64, n: u64 },
    #[error("'{token}' is not allowed in the {context} context (position {pos})")]
    Context { pos: usize, token: String, context: Context },
    #[error("at position {pos}: {msg}")]
    Value { pos: usize, msg: String },
}

/// A parsed expression, in canonical form.
#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    Ring(ExtPolynomial<Int>),
    Algebra(AnElement<Int>),
    K0(K0Vector),
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parsed::Ring(x) => write!(f, "{x}"),
            Parsed::Algebra(x) => write!(f, "{x}"),
            Parsed::K0(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Atom(char, Option<u64>),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("integer {v}"),
        Tok::Atom(c, Some(i)) => format!("'{c}{i}'"),
        Tok::Atom(c, None) => format!("'{c}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| -> Option<Result<u64, ()>> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        if *i == start {
            return None;
        }
        Some(chars[start..*i].iter().collect::<String>().parse::<u64>().map_err(|_| ()))
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => match digits(&mut i) {
                Some(Ok(v)) => {
                    out.push((pos, Tok::Int(v)));
                    continue;
                }
                _ => return Err(ParseError::Value { pos, msg: "integer too large".into() }),
            },
            'x' | 'w' | 'T' | 'A' => {
                i += 1;
                match digits(&mut i) {
                    Some(Ok(v)) => {
                        out.push((pos, Tok::Atom(c, Some(v))));
                        continue;
                    }
                    Some(Err(())) => return Err(ParseError::Value { pos, msg: "index too large".into() }),
                    None => return Err(ParseError::Syntax { pos: i, expected: format!("an index after '{c}'") }),
                }
            }
            'q' | 'l' => Tok::Atom(c, None),
            _ => {
                return Err(ParseError::Syntax { pos, expected: "a number, variable, operator or parenthesis".into() });
            }
        };
        out.push((pos, tok));
        i += 1;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

/// Values the parser can compute with.
trait Value: Sized + Clone {
    fn int(&self, v: i64) -> Self;
    fn atom(&self, c: char, index: Option<u64>, pos: usize) -> Result<Self, ParseError>;
    fn add(&self, o: &Self, pos: usize) -> Result<Self, ParseError>;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self, pos: usize) -> Result<Self, ParseError>;
    fn pow(&self, e: i64, pos: usize) -> Result<Self, ParseError>;
}

fn non_negative(e: i64, pos: usize) -> Result<u32, ParseError> {
    if e < 0 {
        Err(ParseError::Value { pos, msg: "negative exponent".into() })
    } else {
        Ok(e as u32)
    }
}

fn index_in(index: Option<u64>, lo: u64, hi: u64, pos: usize, n: u64) -> Result<usize, ParseError> {
    let i = index.unwrap_or(0);
    if i < lo || i > hi {
        return Err(ParseError::IndexOutOfRange { pos, index: i, n });
    }
    Ok(i as usize)
}

fn context_err(c: char, index: Option<u64>, pos: usize, context: Context) -> ParseError {
    let token = match index {
        Some(i) => format!("{c}{i}"),
        None => c.to_string(),
    };
    ParseError::Context { pos, token, context }
}

impl Value for ExtPolynomial<Int> {
    fn int(&self, v: i64) -> Self {
        ExtPolynomial::int(self.n(), (), v)
    }
    fn atom(&self, c: char, index: Option<u64>, pos: usize) -> Result<Self, ParseError> {
        let n = self.n();
        match c {
            'x' => Ok(ExtPolynomial::x(n, (), index_in(index, 1, n as u64, pos, n as u64)?)),
            'w' => Ok(ExtPolynomial::w(n, (), index_in(index, 1, n as u64, pos, n as u64)?)),
            _ => Err(context_err(c, index, pos, Context::Ring)),
        }
    }
    fn add(&self, o: &Self, _: usize) -> Result<Self, ParseError> {
        Ok(ExtPolynomial::add(self, o))
    }
    fn neg(&self) -> Self {
        ExtPolynomial::neg(self)
    }
    fn mul(&self, o: &Self, _: usize) -> Result<Self, ParseError> {
        Ok(ExtPolynomial::mul(self, o))
    }
    fn pow(&self, e: i64, pos: usize) -> Result<Self, ParseError> {
        Ok(ExtPolynomial::pow(self, non_negative(e, pos)?))
    }
}

impl Value for AnElement<Int> {
    fn int(&self, v: i64) -> Self {
        AnElement::int(self.n(), (), v)
    }
    fn atom(&self, c: char, index: Option<u64>, pos: usize) -> Result<Self, ParseError> {
        let n = self.n();
        let nn = n as u64;
        match c {
            'x' => Ok(AnElement::x(n, (), index_in(index, 1, nn, pos, nn)?)),
            'w' => Ok(AnElement::w(n, (), index_in(index, 1, nn, pos, nn)?)),
            'T' => Ok(AnElement::t(n, (), index_in(index, 1, nn.saturating_sub(1), pos, nn)?)),
            _ => Err(context_err(c, index, pos, Context::Algebra)),
        }
    }
    fn add(&self, o: &Self, _: usize) -> Result<Self, ParseError> {
        Ok(AnElement::add(self, o))
    }
    fn neg(&self) -> Self {
        AnElement::neg(self)
    }
    fn mul(&self, o: &Self, _: usize) -> Result<Self, ParseError> {
        Ok(AnElement::mul(self, o))
    }
    fn pow(&self, e: i64, pos: usize) -> Result<Self, ParseError> {
        Ok(AnElement::pow(self, non_negative(e, pos)?))
    }
}

/// A `K_0` expression is a scalar in `O_p[λ^{±1}]` or a vector.
#[derive(Clone, Debug)]
enum K0Val {
    Scalar(QLambda),
    Vector(K0Vector),
}

impl K0Val {
    fn p(&self) -> u64 {
        match self {
            K0Val::Scalar(s) => s.p(),
            K0Val::Vector(v) => v.p,
        }
    }
}

impl Value for K0Val {
    fn int(&self, v: i64) -> Self {
        K0Val::Scalar(QLambda::from_cyclo(CycloElement::int(self.p(), v)))
    }
    fn atom(&self, c: char, index: Option<u64>, pos: usize) -> Result<Self, ParseError> {
        let p = self.p();
        match c {
            'q' => Ok(K0Val::Scalar(QLambda::q_lambda(p, 1, 0))),
            'l' => Ok(K0Val::Scalar(QLambda::q_lambda(p, 0, 1))),
            'A' => Ok(K0Val::Vector(K0Vector::k0_basis(p, index_in(index, 0, p - 1, pos, p)?))),
            _ => Err(context_err(c, index, pos, Context::K0)),
        }
    }
    fn add(&self, o: &Self, pos: usize) -> Result<Self, ParseError> {
        match (self, o) {
            (K0Val::Scalar(a), K0Val::Scalar(b)) => Ok(K0Val::Scalar(a + b)),
            (K0Val::Vector(a), K0Val::Vector(b)) => Ok(K0Val::Vector(a.add(b))),
            (K0Val::Scalar(s), _) | (_, K0Val::Scalar(s)) if s.is_zero() => {
                Ok(if let K0Val::Vector(_) = self { self.clone() } else { o.clone() })
            }
            _ => Err(ParseError::Value { pos, msg: "cannot add a scalar to a K0 vector".into() }),
        }
    }
    fn neg(&self) -> Self {
        match self {
            K0Val::Scalar(a) => K0Val::Scalar(-a),
            K0Val::Vector(v) => K0Val::Vector(v.scale(&QLambda::from_cyclo(CycloElement::int(v.p, -1)))),
        }
    }
    fn mul(&self, o: &Self, pos: usize) -> Result<Self, ParseError> {
        match (self, o) {
            (K0Val::Scalar(a), K0Val::Scalar(b)) => Ok(K0Val::Scalar(a * b)),
            (K0Val::Scalar(a), K0Val::Vector(v)) | (K0Val::Vector(v), K0Val::Scalar(a)) => Ok(K0Val::Vector(v.scale(a))),
            _ => Err(ParseError::Value { pos, msg: "cannot multiply two K0 vectors".into() }),
        }
    }
    fn pow(&self, e: i64, pos: usize) -> Result<Self, ParseError> {
        match self {
            K0Val::Scalar(a) if e >= 0 => {
                Ok(K0Val::Scalar((0..e).fold(QLambda::one(a.p()), |acc, _| &acc * a)))
            }
            K0Val::Scalar(a) => {
                let inv = a.invert().map_err(|_| ParseError::Value { pos, msg: "negative power of a non-unit".into() })?;
                Ok(K0Val::Scalar((0..-e).fold(QLambda::one(a.p()), |acc, _| &acc * &inv)))
            }
            K0Val::Vector(_) if e == 1 => Ok(self.clone()),
            K0Val::Vector(_) => Err(ParseError::Value { pos, msg: "powers of K0 vectors are not defined".into() }),
        }
    }
}

struct Parser<'a, V> {
    toks: &'a [(usize, Tok)],
    i: usize,
    proto: V,
    signed_exponents: bool,
}

impl<V: Value> Parser<'_, V> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].1
    }

    fn pos(&self) -> usize {
        self.toks[self.i].0
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), expected: format!("{expected}, found {}", describe(self.peek())) })
    }

    fn expr(&mut self, depth: usize) -> Result<V, ParseError> {
        if depth > MAX_DEPTH {
            return Err(ParseError::Value { pos: self.pos(), msg: format!("nesting deeper than {MAX_DEPTH}") });
        }
        let lead_minus = *self.peek() == Tok::Minus;
        if lead_minus {
            self.i += 1;
        }
        let mut acc = self.term(depth)?;
        if lead_minus {
            acc = acc.neg();
        }
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Plus => {
                    self.i += 1;
                    let t = self.term(depth)?;
                    acc = acc.add(&t, pos)?;
                }
                Tok::Minus => {
                    self.i += 1;
                    let t = self.term(depth)?;
                    acc = acc.add(&t.neg(), pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self, depth: usize) -> Result<V, ParseError> {
        let mut acc = self.factor(depth)?;
        while *self.peek() == Tok::Star {
            let pos = self.pos();
            self.i += 1;
            let f = self.factor(depth)?;
            acc = acc.mul(&f, pos)?;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let pos = self.pos();
        let neg = self.signed_exponents && *self.peek() == Tok::Minus;
        if neg {
            self.i += 1;
        }
        let Tok::Int(v) = *self.peek() else {
            return self.fail(if self.signed_exponents { "an integer exponent" } else { "a non-negative integer exponent" });
        };
        self.i += 1;
        if v > MAX_EXPONENT as u64 {
            return Err(ParseError::Value { pos, msg: format!("exponent larger than {MAX_EXPONENT}") });
        }
        Ok(if neg { -(v as i64) } else { v as i64 })
    }

    fn factor(&mut self, depth: usize) -> Result<V, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(v) => {
                self.i += 1;
                let v = i64::try_from(v).map_err(|_| ParseError::Value { pos, msg: "integer too large".into() })?;
                Ok(self.proto.int(v))
            }
            Tok::Atom(c, index) => {
                self.i += 1;
                let a = self.proto.atom(c, index, pos)?;
                if *self.peek() == Tok::Caret {
                    self.i += 1;
                    let e = self.exponent()?;
                    a.pow(e, pos)
                } else {
                    Ok(a)
                }
            }
            Tok::LParen => {
                self.i += 1;
                let v = self.expr(depth + 1)?;
                if *self.peek() != Tok::RParen {
                    return self.fail("')' or an operator");
                }
                self.i += 1;
                Ok(v)
            }
            _ => self.fail("a number, variable or '('"),
        }
    }
}

fn run<V: Value>(toks: &[(usize, Tok)], proto: V, signed_exponents: bool) -> Result<V, ParseError> {
    let mut p = Parser { toks, i: 0, proto, signed_exponents };
    let v = p.expr(0)?;
    if *p.peek() != Tok::End {
        return p.fail("an operator or end of input");
    }
    Ok(v)
}

/// Parses `src` in the given context. `n` is the rank, or the prime `p` in the
/// `k0` context.
pub fn parse_expr(src: &str, n: usize, context: Context) -> Result<Parsed, ParseError> {
    let bad_n = |msg: String| ParseError::Value { pos: 0, msg };
    let toks = lex(src)?;
    match context {
        Context::Ring | Context::Algebra if n == 0 || n > 16 => Err(bad_n(format!("rank {n} outside 1..=16"))),
        Context::Ring => run(&toks, ExtPolynomial::<Int>::zero(n, ()), false).map(Parsed::Ring),
        Context::Algebra => run(&toks, AnElement::<Int>::zero(n, ()), false).map(Parsed::Algebra),
        Context::K0 => {
            let p = n as u64;
            if !is_prime(p) || p > 97 {
                return Err(bad_n(format!("{p} is not a prime up to 97")));
            }
            match run(&toks, K0Val::Vector(K0Vector::zero(p, "A")), true)? {
                K0Val::Vector(v) => Ok(Parsed::K0(v)),
                K0Val::Scalar(s) if s.is_zero() => Ok(Parsed::K0(K0Vector::zero(p, "A"))),
                K0Val::Scalar(_) => Err(bad_n("expected a K0 vector, found a scalar".into())),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str, n: usize) -> String {
        parse_expr(s, n, Context::Ring).unwrap().to_string()
    }

    #[test]
    fn ring_expressions() {
        assert_eq!(ring("x1*x2 + 3", 2), "x1*x2 + 3");
        assert_eq!(ring("w1*w1", 2), "0");
        assert_eq!(ring(" x1 ^2 * x2 -x2*x1^ 2", 2), "0");
        assert_eq!(ring("w2*w1", 2), "-w1*w2");
        assert_eq!(ring("-(x1 + 1)*(x1 - 1)", 1), "-x1^2 + 1");
    }

    #[test]
    fn algebra_relation() {
        let v = parse_expr("T1*x1 - x2*T1", 2, Context::Algebra).unwrap();
        assert_eq!(v.to_string(), "1");
        assert_eq!(parse_expr("T1*T1", 2, Context::Algebra).unwrap().to_string(), "0");
    }

    #[test]
    fn k0_vectors() {
        let v = parse_expr("q^-1*l*A2 + A0", 5, Context::K0).unwrap();
        let s = v.to_string();
        assert_eq!(parse_expr(&s, 5, Context::K0).unwrap(), v);
        assert!(parse_expr("A1*A2", 5, Context::K0).is_err());
        assert!(parse_expr("q + A1", 5, Context::K0).is_err());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_expr("x3", 2, Context::Ring), Err(ParseError::IndexOutOfRange { index: 3, .. })));
        assert!(matches!(parse_expr("x0", 2, Context::Ring), Err(ParseError::IndexOutOfRange { index: 0, .. })));
        assert!(matches!(parse_expr("T1", 2, Context::Ring), Err(ParseError::Context { .. })));
        assert!(matches!(parse_expr("q", 2, Context::Algebra), Err(ParseError::Context { .. })));
        assert!(matches!(parse_expr("T2", 2, Context::Algebra), Err(ParseError::IndexOutOfRange { .. })));
        assert!(matches!(parse_expr("x1 +", 2, Context::Ring), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_expr("x1 x2", 2, Context::Ring), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_expr("x1^33", 2, Context::Ring), Err(ParseError::Value { .. })));
        assert!(matches!(parse_expr("x1^-1", 2, Context::Ring), Err(ParseError::Syntax { .. })));
        let deep = format!("{}x1{}", "(".repeat(100), ")".repeat(100));
        assert!(matches!(parse_expr(&deep, 2, Context::Ring), Err(ParseError::Value { .. })));
    }
}
