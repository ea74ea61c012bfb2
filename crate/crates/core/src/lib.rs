//! Exact Hilbert series, h-vectors, multiplicities and graded Betti data of
//! `R / J(rho)` for almost alternating matrices `rho = [X Y]`, together with
//! two independent cross-checks: a binomial identity family and a Groebner
//! basis oracle on random generic instances.

pub mod bigjson;
pub mod binom;
pub mod cli;
pub mod error;
pub mod groebner;
pub mod identity_lab;
pub mod pfaffian;
pub mod series;
pub mod verify;

pub use binom::{gbinom, IntPolynomial, TruncatedSeries};
pub use error::{Error, Result};
pub use series::{BettiTable, HilbertSeries, ProblemShape};
