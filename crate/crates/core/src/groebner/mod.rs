//! Ground truth for the closed forms: an exact Groebner engine over `Q`
//! (degrevlex), Hilbert numerators and codimension of monomial ideals, and
//! the random-instance oracle built on them.

pub mod buchberger;
pub mod monomial_ideal;
pub mod multipoly;
pub mod oracle;

pub use buchberger::{buchberger, is_groebner_basis, reduce, s_polynomial};
pub use monomial_ideal::{
    initial_ideal, monomial_codim, monomial_hilbert_numerator, MonomialIdeal,
};
pub use multipoly::{Monomial, MultiPoly};
pub use oracle::{oracle_check, OracleReport};
