//! Exact computations in the enhanced nilHecke algebra `A_n`, the superpolynomial
//! ring `R_n` it acts on, their p-derivations, and the Grothendieck-group layer
//! over cyclotomic integers.

#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::len_without_is_empty, clippy::self_named_constructors)]

pub mod coeff;
pub mod cyclo;
pub mod extpoly;
pub mod linalg;
pub mod derivations;
pub mod report;
pub mod ennilhecke;
pub mod pcomplex;
pub mod ktheory;
pub mod sl2rep;
pub mod parse;
pub mod suite;
