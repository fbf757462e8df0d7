//! Perfect powers among Catalan and Narayana numbers, decided exactly.
//!
//! * [`arith`]: integer roots, perfect powers, primes, valuations.
//! * [`combinatorics`]: binomial, Catalan and Narayana numbers and their factorizations.
//! * [`pell`]: `n² − d·m² = z²` with `m` even.
//! * [`squares`]: every `a` with `N(a, b)` a square, for fixed `b`.
//! * [`powers`]: certificates bounding the exponent `k` in `N(a, b) = m^k`.

pub mod arith;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod pell;
pub mod powers;
pub mod squares;

pub use error::{Error, Result};
