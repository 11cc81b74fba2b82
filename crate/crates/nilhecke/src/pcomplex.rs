//! Finite graded p-complexes: vector spaces graded by `(q, λ, parity)` with a
//! differential of degree `(2, 0)` satisfying `d^p = 0`.

use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

use crate::coeff::{is_prime, Coeff, Fp};
use crate::cyclo::{CycloElement, QLambda};
use crate::linalg::{mat_mul, rank, Matrix};

/// `(q, λ, parity)`.
pub type Key = (i64, i64, u8);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PComplexError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
    #[error("piece {0:?} listed twice")]
    DuplicatePiece(Key),
    #[error("map from {0:?} refers to a missing piece")]
    MissingPiece(Key),
    #[error("map {from:?} -> {to:?} does not have degree (2, 0)")]
    BadDegree { from: Key, to: Key },
    #[error("matrix for {0:?} has the wrong shape")]
    BadShape(Key),
    #[error("parity must be 0 or 1")]
    BadParity,
    #[error("total dimension {0} exceeds the limit")]
    TooLarge(usize),
}

/// Upper bound on total dimension accepted from external input.
pub const MAX_TOTAL_DIM: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPComplex<C: Coeff> {
    p: u64,
    ctx: C::Ctx,
    pieces: BTreeMap<Key, usize>,
    /// Matrix of `d` out of each piece, `dim(target) x dim(source)`.
    diff: BTreeMap<Key, Matrix<C>>,
}

/// One Jordan block `k[d]/(d^size)` with bottom generator in the given degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Block {
    pub size: usize,
    pub q: i64,
    pub lambda: i64,
    pub parity: u8,
}

fn target(k: Key) -> Key {
    (k.0.wrapping_add(2), k.1, k.2)
}

impl<C: Coeff> GradedPComplex<C> {
    pub fn new(p: u64, ctx: C::Ctx) -> Self {
        GradedPComplex { p, ctx, pieces: BTreeMap::new(), diff: BTreeMap::new() }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn add_piece(&mut self, k: Key, dim: usize) {
        *self.pieces.entry(k).or_insert(0) += dim;
    }

    /// Sets `d` out of `from`; rows index the target piece.
    pub fn set_map(&mut self, from: Key, m: Matrix<C>) {
        self.diff.insert(from, m);
    }

    pub fn dim(&self, k: Key) -> usize {
        self.pieces.get(&k).copied().unwrap_or(0)
    }

    pub fn pieces(&self) -> &BTreeMap<Key, usize> {
        &self.pieces
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.values().sum()
    }

    /// Matrix of `d` out of `k` (zero if unset).
    pub fn map(&self, k: Key) -> Matrix<C> {
        match self.diff.get(&k) {
            Some(m) => m.clone(),
            None => vec![vec![C::zero(self.ctx); self.dim(k)]; self.dim(target(k))],
        }
    }

    /// Matrix of `d^j` out of `k`.
    pub fn power(&self, k: Key, j: usize) -> Matrix<C> {
        let mut acc: Matrix<C> = (0..self.dim(k))
            .map(|r| (0..self.dim(k)).map(|c| C::from_i64(self.ctx, (r == c) as i64)).collect())
            .collect();
        let mut cur = k;
        for _ in 0..j {
            if self.dim(cur) == 0 {
                let end = (k.0.wrapping_add(2 * j as i64), k.1, k.2);
                return vec![vec![C::zero(self.ctx); self.dim(k)]; self.dim(end)];
            }
            let m = self.map(cur);
            acc = mat_mul(&m, &acc, self.dim(cur), self.dim(k), self.ctx);
            cur = target(cur);
        }
        acc
    }

    fn rank_pow(&self, k: Key, j: usize) -> usize {
        if j == 0 {
            return self.dim(k);
        }
        if self.dim(k) == 0 {
            return 0;
        }
        rank(&self.power(k, j), self.dim(k))
    }

    pub fn verify_p_nilpotent(&self) -> bool {
        self.pieces.keys().all(|&k| self.rank_pow(k, self.p as usize) == 0)
    }

    /// Graded Jordan decomposition from the ranks of powers of `d`.
    pub fn jordan_blocks(&self) -> Vec<Block> {
        let p = self.p as usize;
        let mut out = Vec::new();
        let longest = self.pieces.len();
        // s_j(q): blocks with bottom at q of size > j
        let s = |k: Key, j: usize| -> usize {
            let below = (k.0.wrapping_sub(2), k.1, k.2);
            self.rank_pow(k, j).saturating_sub(self.rank_pow(below, j + 1))
        };
        for &k in self.pieces.keys() {
            for size in 1..=p.min(longest + 1) {
                let c = s(k, size - 1).saturating_sub(s(k, size));
                for _ in 0..c {
                    out.push(Block { size, q: k.0, lambda: k.1, parity: k.2 });
                }
            }
        }
        out.sort();
        out
    }

    /// Rebuilds a complex from blocks with the standard basis `d(v_s) = v_{s+1}`.
    pub fn from_blocks(p: u64, ctx: C::Ctx, blocks: &[Block]) -> Self {
        let mut dims: BTreeMap<Key, usize> = BTreeMap::new();
        let mut pos: Vec<Vec<(Key, usize)>> = Vec::new();
        for b in blocks {
            let mut v = Vec::new();
            for s in 0..b.size {
                let k = (b.q.wrapping_add(2 * s as i64), b.lambda, b.parity);
                let e = dims.entry(k).or_insert(0);
                v.push((k, *e));
                *e += 1;
            }
            pos.push(v);
        }
        let mut c = Self::new(p, ctx);
        for (&k, &d) in &dims {
            c.add_piece(k, d);
        }
        let mut maps: BTreeMap<Key, Matrix<C>> = BTreeMap::new();
        for v in &pos {
            for w in v.windows(2) {
                let (k, i) = w[0];
                let (t, j) = w[1];
                let m = maps.entry(k).or_insert_with(|| vec![vec![C::zero(ctx); dims[&k]]; dims[&t]]);
                m[j][i] = C::one(ctx);
            }
        }
        for (k, m) in maps {
            c.set_map(k, m);
        }
        c
    }

    /// Graded ranks of `d^j`, `0 <= j < p`, per piece.
    pub fn rank_profile(&self) -> BTreeMap<Key, Vec<usize>> {
        self.pieces.keys().map(|&k| (k, (0..self.p as usize).map(|j| self.rank_pow(k, j)).collect())).collect()
    }

    pub fn k0_symbol(&self) -> QLambda {
        blocks_symbol(self.p, &self.jordan_blocks())
    }
}

/// `Σ (-1)^parity q^{q_0} λ^{λ_0} (1 + q² + ... + q^{2(k-1)})`.
pub fn blocks_symbol(p: u64, blocks: &[Block]) -> QLambda {
    let mut s = QLambda::zero(p);
    for b in blocks {
        let sign = if b.parity % 2 == 1 { -1 } else { 1 };
        let terms: Vec<(i64, i64)> = (0..b.size as i64).map(|t| (b.q + 2 * t, sign)).collect();
        s = &s + &QLambda::monomial(CycloElement::from_int_laurent(p, &terms), b.lambda);
    }
    s
}

/// Basis `v_0..v_{count-1}` at q-degrees `q_0 + 2r` with `d(v_r) = (w + r) v_{r+1}`.
pub fn weighted_shift(p: u64, w: i64, count: usize, q0: i64, lambda: i64, parity: u8) -> GradedPComplex<Fp> {
    let mut c = GradedPComplex::new(p, p);
    for r in 0..count {
        c.add_piece((q0 + 2 * r as i64, lambda, parity), 1);
    }
    for r in 0..count.saturating_sub(1) {
        c.set_map((q0 + 2 * r as i64, lambda, parity), vec![vec![Fp::new(p, w + r as i64)]]);
    }
    c
}

/// The leading block of a weighted shift and the blocks after it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftReport {
    pub r0: usize,
    pub leading: Block,
    pub rest: Vec<Block>,
    pub rest_contractible: bool,
}

/// `r_0 = (-w mod p)`; the leading block spans `v_0..v_{r_0}` and every later
/// block should have size `p`. Uses a truncation of `r_0 + 1 + 2p` vectors.
pub fn weighted_shift_blocks(p: u64, w: i64, q0: i64, lambda: i64, parity: u8) -> (GradedPComplex<Fp>, ShiftReport) {
    let r0 = (-w).rem_euclid(p as i64) as usize;
    let c = weighted_shift(p, w, r0 + 1 + 2 * p as usize, q0, lambda, parity);
    let blocks = c.jordan_blocks();
    let (lead, rest): (Vec<Block>, Vec<Block>) = blocks.into_iter().partition(|b| b.q == q0);
    let leading = lead.first().copied().unwrap_or(Block { size: 0, q: q0, lambda, parity });
    let rest_contractible = rest.iter().all(|b| b.size == p as usize);
    (c, ShiftReport { r0, leading, rest, rest_contractible })
}

#[derive(Deserialize)]
struct JsonKey {
    q: i64,
    lambda: i64,
    parity: u8,
}

#[derive(Deserialize)]
struct JsonPiece {
    q: i64,
    lambda: i64,
    parity: u8,
    dim: usize,
}

#[derive(Deserialize)]
struct JsonMap {
    from: JsonKey,
    to: JsonKey,
    matrix: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct JsonComplex {
    pieces: Vec<JsonPiece>,
    #[serde(default)]
    maps: Vec<JsonMap>,
}

/// Reads `{pieces:[{q,lambda,parity,dim}], maps:[{from,to,matrix}]}` over `F_p`.
/// Matrix rows index the target piece.
pub fn parse_json(src: &str, p: u64) -> Result<GradedPComplex<Fp>, PComplexError> {
    if !(3..1 << 31).contains(&p) || !is_prime(p) {
        return Err(PComplexError::BadPrime(p));
    }
    let j: JsonComplex = serde_json::from_str(src).map_err(|e| PComplexError::Json(e.to_string()))?;
    let mut c = GradedPComplex::new(p, p);
    let mut total = 0usize;
    for pc in &j.pieces {
        if pc.parity > 1 {
            return Err(PComplexError::BadParity);
        }
        let k = (pc.q, pc.lambda, pc.parity);
        if c.pieces.contains_key(&k) {
            return Err(PComplexError::DuplicatePiece(k));
        }
        total = total.saturating_add(pc.dim);
        if total > MAX_TOTAL_DIM {
            return Err(PComplexError::TooLarge(total));
        }
        c.add_piece(k, pc.dim);
    }
    for m in &j.maps {
        let from = (m.from.q, m.from.lambda, m.from.parity);
        let to = (m.to.q, m.to.lambda, m.to.parity);
        if m.from.parity > 1 || m.to.parity > 1 {
            return Err(PComplexError::BadParity);
        }
        if to != (from.0.wrapping_add(2), from.1, from.2) {
            return Err(PComplexError::BadDegree { from, to });
        }
        let (Some(&dc), Some(&dr)) = (c.pieces.get(&from), c.pieces.get(&to)) else {
            return Err(PComplexError::MissingPiece(from));
        };
        if m.matrix.len() != dr || m.matrix.iter().any(|r| r.len() != dc) {
            return Err(PComplexError::BadShape(from));
        }
        if c.diff.contains_key(&from) {
            return Err(PComplexError::DuplicatePiece(from));
        }
        let mat = m.matrix.iter().map(|r| r.iter().map(|&v| Fp::new(p, v.rem_euclid(p as i64))).collect()).collect();
        c.set_map(from, mat);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotency() {
        let z = GradedPComplex::<Fp>::from_blocks(3, 3, &[Block { size: 1, q: 0, lambda: 0, parity: 0 }]);
        assert!(z.verify_p_nilpotent());
        let full = GradedPComplex::<Fp>::from_blocks(3, 3, &[Block { size: 3, q: 0, lambda: 0, parity: 0 }]);
        assert!(full.verify_p_nilpotent());
        let over = GradedPComplex::<Fp>::from_blocks(3, 3, &[Block { size: 4, q: 0, lambda: 0, parity: 0 }]);
        assert!(!over.verify_p_nilpotent());
    }

    #[test]
    fn blocks_of_simple_complexes() {
        let mut c = GradedPComplex::<Fp>::new(5, 5);
        for q in [0, 2, 4] {
            c.add_piece((q, 0, 0), 1);
        }
        assert_eq!(c.jordan_blocks().len(), 3);
        let c = weighted_shift(5, 1, 2, 0, 0, 0);
        assert_eq!(c.jordan_blocks(), vec![Block { size: 2, q: 0, lambda: 0, parity: 0 }]);
    }

    #[test]
    fn weighted_shift_leading_block() {
        let (_, r) = weighted_shift_blocks(5, 3, 0, 0, 0);
        assert_eq!((r.r0, r.leading.size), (2, 3));
        assert!(r.rest_contractible);
        let (_, r) = weighted_shift_blocks(7, 0, 0, 0, 0);
        assert_eq!(r.leading.size, 1);
        let (c, r) = weighted_shift_blocks(5, 1, 0, 0, 0);
        assert_eq!(r.leading.size, 5);
        assert!(c.k0_symbol().is_zero());
    }

    #[test]
    fn symbols() {
        let one = blocks_symbol(5, &[Block { size: 1, q: 0, lambda: 0, parity: 0 }]);
        assert_eq!(one, QLambda::one(5));
        let odd = blocks_symbol(5, &[Block { size: 2, q: -4, lambda: 2, parity: 1 }]);
        let expect = QLambda::monomial(CycloElement::from_int_laurent(5, &[(-4, -1), (-2, -1)]), 2);
        assert_eq!(odd, expect);
    }

    #[test]
    fn json_roundtrip_and_errors() {
        let src = r#"{"pieces":[{"q":0,"lambda":0,"parity":0,"dim":1},{"q":2,"lambda":0,"parity":0,"dim":1}],
            "maps":[{"from":{"q":0,"lambda":0,"parity":0},"to":{"q":2,"lambda":0,"parity":0},"matrix":[[1]]}]}"#;
        let c = parse_json(src, 3).unwrap();
        assert_eq!(c.jordan_blocks(), vec![Block { size: 2, q: 0, lambda: 0, parity: 0 }]);
        assert!(matches!(parse_json(src, 4), Err(PComplexError::BadPrime(4))));
        assert!(matches!(parse_json("{", 3), Err(PComplexError::Json(_))));
        let bad = src.replace(r#""to":{"q":2"#, r#""to":{"q":4"#);
        assert!(matches!(parse_json(&bad, 3), Err(PComplexError::BadDegree { .. })));
    }
}
