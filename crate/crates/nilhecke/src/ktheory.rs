//! The Grothendieck group `K_0 = ⊕_{n<p} O_p[A_n]` with `E`, `F`, `K`, the
//! baby Verma module, and the class computation behind `E`.

use std::fmt;

use crate::coeff::Fp;
use crate::cyclo::{quantum_int, CycloElement, QLambda};
use crate::ennilhecke::{AnDerivation, AnElement};
use crate::extpoly::{ExtPolynomial, Mono, Permutation};
use crate::pcomplex::{blocks_symbol, weighted_shift_blocks, Block};
use crate::report::Check;

/// Coordinates in a basis indexed by `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVector {
    pub p: u64,
    pub coords: Vec<QLambda>,
    /// Printed name of the basis, e.g. `A` or `m`.
    pub symbol: &'static str,
}

pub type K0Vector = BasisVector;
pub type VermaVector = BasisVector;

impl BasisVector {
    pub fn zero(p: u64, symbol: &'static str) -> Self {
        BasisVector { p, coords: vec![QLambda::zero(p); p as usize], symbol }
    }

    pub fn basis(p: u64, symbol: &'static str, i: usize) -> Self {
        let mut v = Self::zero(p, symbol);
        v.coords[i] = QLambda::one(p);
        v
    }

    pub fn k0_basis(p: u64, n: usize) -> Self {
        Self::basis(p, "A", n)
    }

    pub fn verma_basis(p: u64, i: usize) -> Self {
        Self::basis(p, "m", i)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(QLambda::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        BasisVector { p: self.p, coords, symbol: self.symbol }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&QLambda::from_cyclo(CycloElement::int(self.p, -1))))
    }

    pub fn scale(&self, c: &QLambda) -> Self {
        BasisVector { p: self.p, coords: self.coords.iter().map(|a| a * c).collect(), symbol: self.symbol }
    }

    fn map_diag(&self, f: impl Fn(usize) -> QLambda, shift: i64) -> Self {
        let mut out = Self::zero(self.p, self.symbol);
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = i as i64 + shift;
            if j < 0 || j >= self.p as i64 {
                continue;
            }
            out.coords[j as usize] = &out.coords[j as usize] + &(c * &f(i));
        }
        out
    }

    fn relabel(&self, symbol: &'static str) -> Self {
        BasisVector { symbol, ..self.clone() }
    }
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*{}{i}", self.symbol))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn ql(p: u64, a: i64, b: i64) -> QLambda {
    QLambda::q_lambda(p, a, b)
}

/// `q - q^{-1}`.
pub fn q_minus_qinv(p: u64) -> CycloElement {
    CycloElement::from_int_laurent(p, &[(1, 1), (-1, -1)])
}

/// `[n](λ q^{-n} - λ^{-1} q^n)`.
pub fn e_class(p: u64, n: i64) -> QLambda {
    (&ql(p, -n, 1) - &ql(p, n, -1)).scale(&quantum_int(p, n as u64))
}

/// `F[A_n] = [A_{n+1}]`, zero at `n = p-1`.
pub fn k0_f(v: &K0Vector) -> K0Vector {
    v.map_diag(|_| QLambda::one(v.p), 1)
}

/// The class of `E(A_n)`: `[n](λq^{-n} - λ^{-1}q^n)[A_{n-1}]`.
pub fn k0_e(v: &K0Vector) -> K0Vector {
    v.map_diag(|n| e_class(v.p, n as i64), -1)
}

/// `E` divided by `q - q^{-1}`, the operator satisfying the quantum group relations.
pub fn k0_e_normalized(v: &K0Vector) -> K0Vector {
    let inv = q_minus_qinv(v.p).invert().expect("q - q^-1 is a unit");
    k0_e(v).scale(&QLambda::from_cyclo(inv))
}

/// `K^{±1}[A_n] = (λ q^{-2n-1})^{±1} [A_n]`.
pub fn k0_k(v: &K0Vector, sign: i64) -> K0Vector {
    v.map_diag(|n| ql(v.p, sign * (-2 * n as i64 - 1), sign), 0)
}

/// The same with `λ q^{-2n}`, kept to document why the extra `q^{-1}` is needed.
pub fn k0_k_unshifted(v: &K0Vector, sign: i64) -> K0Vector {
    v.map_diag(|n| ql(v.p, sign * (-2 * n as i64), sign), 0)
}

/// `E m_i = [i] (μ q^{1-i} - μ^{-1} q^{i-1}) / (q - q^{-1}) m_{i-1}` at highest weight `μ`.
pub fn verma_e(v: &VermaVector, hw: &QLambda) -> VermaVector {
    let p = v.p;
    let hwinv = hw.invert().expect("highest weight must be a unit");
    let inv = QLambda::from_cyclo(q_minus_qinv(p).invert().expect("q - q^-1 is a unit"));
    v.map_diag(
        |i| {
            let i = i as i64;
            let a = hw * &ql(p, 1 - i, 0);
            let b = &hwinv * &ql(p, i - 1, 0);
            &(&a - &b).scale(&quantum_int(p, i as u64)) * &inv
        },
        -1,
    )
}

pub fn verma_f(v: &VermaVector) -> VermaVector {
    v.map_diag(|_| QLambda::one(v.p), 1)
}

/// `K^{±1} m_i = (μ q^{-2i})^{±1} m_i`.
pub fn verma_k(v: &VermaVector, hw: &QLambda, sign: i64) -> VermaVector {
    let base = if sign > 0 { hw.clone() } else { hw.invert().expect("unit") };
    v.map_diag(|i| &base * &ql(v.p, -2 * sign * i as i64, 0), 0)
}

/// A module over the small quantum group, as its three operators.
pub enum Model {
    K0,
    Verma(QLambda),
}

impl Model {
    fn name(&self) -> String {
        match self {
            Model::K0 => "K0".into(),
            Model::Verma(hw) => format!("Verma({hw})"),
        }
    }
    fn basis(&self, p: u64, i: usize) -> BasisVector {
        match self {
            Model::K0 => BasisVector::k0_basis(p, i),
            Model::Verma(_) => BasisVector::verma_basis(p, i),
        }
    }
    pub fn e(&self, v: &BasisVector) -> BasisVector {
        match self {
            Model::K0 => k0_e_normalized(v),
            Model::Verma(hw) => verma_e(v, hw),
        }
    }
    pub fn f(&self, v: &BasisVector) -> BasisVector {
        match self {
            Model::K0 => k0_f(v),
            Model::Verma(_) => verma_f(v),
        }
    }
    pub fn k(&self, v: &BasisVector, sign: i64) -> BasisVector {
        match self {
            Model::K0 => k0_k(v, sign),
            Model::Verma(hw) => verma_k(v, hw, sign),
        }
    }
}

/// The relations of `u_q(sl_2)` as operator identities on every basis vector.
pub fn verify_uqsl2(p: u64, model: &Model) -> Vec<Check> {
    let q2 = ql(p, 2, 0);
    let qm2 = ql(p, -2, 0);
    let inv = QLambda::from_cyclo(q_minus_qinv(p).invert().unwrap());
    let name = model.name();
    let mut out = Vec::new();
    for i in 0..p as usize {
        let b = model.basis(p, i);
        let sym = b.symbol;
        let tag = format!("{sym}{i}, {name}, p={p}");
        out.push(Check::eq(format!("K K^-1 = 1 on {tag}"), &model.k(&model.k(&b, -1), 1), &b));
        out.push(Check::eq(format!("K^-1 K = 1 on {tag}"), &model.k(&model.k(&b, 1), -1), &b));
        out.push(Check::eq(format!("KE = q^2 EK on {tag}"), &model.k(&model.e(&b), 1), &model.e(&model.k(&b, 1)).scale(&q2)));
        out.push(Check::eq(format!("KF = q^-2 FK on {tag}"), &model.k(&model.f(&b), 1), &model.f(&model.k(&b, 1)).scale(&qm2)));
        let lhs = model.e(&model.f(&b)).sub(&model.f(&model.e(&b)));
        let rhs = model.k(&b, 1).sub(&model.k(&b, -1)).scale(&inv);
        out.push(Check::eq(format!("EF - FE = (K - K^-1)/(q - q^-1) on {tag}"), &lhs, &rhs));
        let ep = (0..p).fold(b.clone(), |acc, _| model.e(&acc));
        let fp = (0..p).fold(b.clone(), |acc, _| model.f(&acc));
        let zero = BasisVector::zero(p, sym);
        out.push(Check::eq(format!("E^p = 0 on {tag}"), &ep, &zero));
        out.push(Check::eq(format!("F^p = 0 on {tag}"), &fp, &zero));
        if let Model::K0 = model {
            let lhs = k0_e(&k0_f(&b)).sub(&k0_f(&k0_e(&b)));
            let rhs = k0_k(&b, 1).sub(&k0_k(&b, -1));
            out.push(Check::eq(format!("[E, F] = K - K^-1 for the class of E on {tag}"), &lhs, &rhs));
        }
    }
    out
}

/// `Φ[A_r] = (q - q^{-1}) m_r`.
pub fn phi_iso(v: &K0Vector) -> VermaVector {
    v.scale(&QLambda::from_cyclo(q_minus_qinv(v.p))).relabel("m")
}

/// `Φ` intertwines `E`, `F`, `K^{±1}` with the Verma module at highest weight `λq^{-1}`.
pub fn verify_iso(p: u64) -> Vec<Check> {
    let hw = ql(p, -1, 1);
    let mut out = Vec::new();
    for r in 0..p as usize {
        let a = BasisVector::k0_basis(p, r);
        out.push(Check::eq(format!("Phi E = E Phi on A{r} (p={p})"), &phi_iso(&k0_e_normalized(&a)), &verma_e(&phi_iso(&a), &hw)));
        out.push(Check::eq(format!("Phi F = F Phi on A{r} (p={p})"), &phi_iso(&k0_f(&a)), &verma_f(&phi_iso(&a))));
        for s in [1, -1] {
            out.push(Check::eq(format!("Phi K^{s} = K^{s} Phi on A{r} (p={p})"), &phi_iso(&k0_k(&a, s)), &verma_k(&phi_iso(&a), &hw, s)));
        }
        let scaled = verma_e(&phi_iso(&a), &hw).scale(&QLambda::from_cyclo(q_minus_qinv(p)));
        out.push(Check::eq(format!("Phi [E] = (q - q^-1) E Phi on A{r} (p={p})"), &phi_iso(&k0_e(&a)), &scaled));
    }
    let unit = q_minus_qinv(p).invert().map(|i| (&i * &q_minus_qinv(p)) == CycloElement::one(p)).unwrap_or(false);
    out.push(Check::holds(format!("Phi is invertible (p={p})"), unit, "diagonal with entries q - q^-1"));
    out.push(Check::eq(format!("K0 has p basis classes (p={p})"), &BasisVector::zero(p, "A").coords.len(), &(p as usize)));
    out
}

/// Result of assembling `[E(A_n)]` from the filtration pieces.
#[derive(Clone, Debug)]
pub struct EClass {
    pub f_class: QLambda,
    pub fw_class: QLambda,
    pub value: QLambda,
    pub leading: Vec<Block>,
    pub checks: Vec<Check>,
}

/// `[M_j^0]` for `j = 1..n`: weight `(n-1) - 2(j-1)`, generator in q-degree `-2(j-1)`.
pub fn leading_blocks(n: usize, p: u64, q_shift: i64, lambda: i64, parity: u8) -> (Vec<Block>, Vec<bool>) {
    let mut blocks = Vec::new();
    let mut tails = Vec::new();
    for j in 1..=n as i64 {
        let w = (n as i64 - 1) - 2 * (j - 1);
        let (_, rep) = weighted_shift_blocks(p, w, -2 * (j - 1) + q_shift, lambda, parity);
        blocks.push(rep.leading);
        tails.push(rep.rest_contractible);
    }
    (blocks, tails)
}

pub fn categorified_e_class(n: usize, p: u64) -> EClass {
    let ni = n as i64;
    let (lead, tails) = leading_blocks(n, p, 0, 0, 0);
    let (lead_w, _) = leading_blocks(n, p, -2 * ni, 2, 1);
    let f_class = blocks_symbol(p, &lead);
    let fw_class = blocks_symbol(p, &lead_w);
    let shift = ql(p, 2 * ni - 1, -1);
    let value = &(&shift * &(&f_class + &fw_class)) * &QLambda::from_cyclo(CycloElement::int(p, -1));
    let mut checks = Vec::new();
    let f_expect = QLambda::from_cyclo(CycloElement::from_int_laurent(
        p,
        &(0..ni).map(|j| (2 * (1 - ni) + 2 * j, 1)).collect::<Vec<_>>(),
    ));
    checks.push(Check::eq(format!("[F] = sum q^(2(1-n)+2j) (n={n}, p={p})"), &f_class, &f_expect));
    let fw_expect = &f_expect * &QLambda::monomial(CycloElement::from_int_laurent(p, &[(-2 * ni, -1)]), 2);
    checks.push(Check::eq(format!("[F^w] = -l^2 q^-2n [F] (n={n}, p={p})"), &fw_class, &fw_expect));
    checks.push(Check::eq(format!("[E(A_{n})] = [n](l q^-n - l^-1 q^n) (p={p})"), &value, &e_class(p, ni)));
    checks.push(Check::holds(format!("later blocks contractible (n={n}, p={p})"), tails.iter().all(|&t| t), "every block after the leading one has size p"));
    for j in 1..n {
        let s = &blocks_symbol(p, &lead[j - 1..j]) + &blocks_symbol(p, &lead[n - j - 1..n - j]);
        checks.push(Check::eq(format!("[M_{j}] + [M_{}] = 0 (n={n}, p={p})", n - j), &s, &QLambda::zero(p)));
    }
    EClass { f_class, fw_class, value, leading: lead, checks }
}

/// Which end the strand not acted on by `A_{n-1}` sits at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NewStrand {
    First,
    Last,
}

/// The coset word for index `j`: `T_1 ⋯ T_{j-1}` or `T_{n-1} ⋯ T_{n-j+1}`.
pub fn coset_word(n: usize, strand: NewStrand, j: usize) -> Permutation {
    let word: Vec<usize> = match strand {
        NewStrand::First => (1..j).collect(),
        NewStrand::Last => (n - j + 1..n).rev().collect(),
    };
    Permutation::from_word(n, &word)
}

/// Coefficient of `x_new^{r+1} T̲` in `d_a(x_new^r T̲) + c x_new^{r+1} T̲`, over `F_p`.
pub fn coset_d_coefficient(p: u64, n: usize, a: i64, strand: NewStrand, c: i64, j: usize, r: u32) -> Fp {
    let new = match strand {
        NewStrand::First => 1,
        NewStrand::Last => n,
    };
    let w = coset_word(n, strand, j);
    let mut mono = Mono::one(n);
    mono.x[new - 1] = r;
    let elt = AnElement::monomial(ExtPolynomial::term(n, p, mono.clone(), Fp::new(p, 1)), w.clone());
    let d = AnDerivation::<Fp>::new(a, n, p);
    let xnew = ExtPolynomial::x(n, p, new).scale_int(c);
    let img = d.apply(&elt).add(&elt.ring_left_mul(&xnew));
    mono.x[new - 1] = r + 1;
    img.coeff(&w).coeff(&mono)
}

/// Compares the measured coefficient with `(n-1) - 2(j-1) + r` for `d_+`.
pub fn d_matrix_consistency(n: usize, p: u64, rmax: u32) -> Vec<Check> {
    let c = n as i64 - 1;
    let mut out = Vec::new();
    for j in 1..=n {
        let mut bad = None;
        let mut last_vals = Vec::new();
        for r in 0..=rmax {
            let got = coset_d_coefficient(p, n, 1, NewStrand::First, c, j, r);
            let want = Fp::new(p, c - 2 * (j as i64 - 1) + r as i64);
            if got != want && bad.is_none() {
                bad = Some((r, got, want));
            }
            last_vals.push(coset_d_coefficient(p, n, 1, NewStrand::Last, c, j, r).symmetric());
        }
        let name = format!("d coefficient on coset {j} (n={n}, p={p})");
        let detail = format!("r = 0..{rmax}; with the new strand last the coefficients are {last_vals:?}");
        out.push(match bad {
            None => Check::new(name, "(n-1) - 2(j-1) + r", "(n-1) - 2(j-1) + r", true).detail(detail),
            Some((r, g, w)) => Check::new(name, g.to_string(), w.to_string(), false).detail(format!("first mismatch at r={r}; {detail}")),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k0_operator_values() {
        let p = 5;
        assert!(k0_e(&BasisVector::k0_basis(p, 0)).is_zero());
        let e1 = k0_e(&BasisVector::k0_basis(p, 1));
        let expect = BasisVector::k0_basis(p, 0).scale(&(&ql(p, -1, 1) - &ql(p, 1, -1)));
        assert_eq!(e1, expect);
        assert!(k0_f(&BasisVector::k0_basis(p, p as usize - 1)).is_zero());
    }

    #[test]
    fn verma_values() {
        let p = 5;
        let hw = ql(p, 0, 1);
        assert!(verma_e(&BasisVector::verma_basis(p, 0), &hw).is_zero());
        assert!(verma_f(&BasisVector::verma_basis(p, 4)).is_zero());
        assert_eq!(verma_k(&BasisVector::verma_basis(p, 1), &hw, 1), BasisVector::verma_basis(p, 1).scale(&ql(p, -2, 1)));
    }

    #[test]
    fn unshifted_k_breaks_commutator() {
        let p = 5;
        let b = BasisVector::k0_basis(p, 2);
        let lhs = k0_e(&k0_f(&b)).sub(&k0_f(&k0_e(&b)));
        assert_ne!(lhs, k0_k_unshifted(&b, 1).sub(&k0_k_unshifted(&b, -1)));
        assert_eq!(lhs, k0_k(&b, 1).sub(&k0_k(&b, -1)));
    }

    #[test]
    fn e_class_low_rank() {
        let c = categorified_e_class(1, 3);
        assert_eq!(c.f_class, QLambda::one(3));
        assert_eq!(c.value, &ql(3, -1, 1) - &ql(3, 1, -1));
        for ch in categorified_e_class(2, 5).checks {
            assert!(ch.equal, "{ch:?}");
        }
    }

    #[test]
    fn coset_coefficients() {
        // n = 2, j = 2: (n-1) - 2 + r = r - 1
        for r in 0..4 {
            assert_eq!(coset_d_coefficient(5, 2, 1, NewStrand::First, 1, 2, r), Fp::new(5, r as i64 - 1));
            assert_eq!(coset_d_coefficient(5, 2, 1, NewStrand::Last, 1, 2, r), Fp::new(5, r as i64 + 1));
        }
        assert_eq!(coset_d_coefficient(7, 1, 1, NewStrand::First, 0, 1, 3), Fp::new(7, 3));
    }
}
