//! Independent check of the closed forms: compute the Hilbert series of
//! `R / J(rho)` for a random instance from a Groebner basis and compare.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::buchberger::{buchberger_with_budget, DEFAULT_MAX_REDUCTIONS};
use super::monomial_ideal::{
    initial_ideal, monomial_codim, monomial_hilbert_numerator_with_budget, MonomialIdeal,
    DEFAULT_MAX_HILBERT_NODES,
};
use super::multipoly::MultiPoly;
use crate::bigjson;
use crate::binom::IntPolynomial;
use crate::error::{Error, Result};
use crate::pfaffian::{ideal_generators, random_generic_instance, AlmostAlternatingMatrix};
use crate::series::{hilbert_series, HilbertSeries, ProblemShape};

pub const DEFAULT_MAX_REDRAWS: usize = 5;

/// Desk-scale limits for a single oracle run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Upper bound on `n + t`.
    pub max_matrix_size: u32,
    pub max_ambient_dim: usize,
    pub max_reductions: usize,
    pub max_hilbert_nodes: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_matrix_size: 8,
            max_ambient_dim: 8,
            max_reductions: DEFAULT_MAX_REDUCTIONS,
            max_hilbert_nodes: DEFAULT_MAX_HILBERT_NODES,
        }
    }
}

impl OracleBudget {
    fn check(&self, shape: ProblemShape, d: usize) -> Result<()> {
        if shape.n() + shape.t() > self.max_matrix_size {
            return Err(Error::Budget(format!(
                "n + t = {} exceeds the oracle limit {}",
                shape.n() + shape.t(),
                self.max_matrix_size
            )));
        }
        if d > self.max_ambient_dim {
            return Err(Error::Budget(format!(
                "ambient dimension {d} exceeds the oracle limit {}",
                self.max_ambient_dim
            )));
        }
        if d == 0 {
            return Err(Error::OutOfRange(
                "ambient dimension must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Everything computed for one drawn instance.
#[derive(Clone, Debug)]
pub struct InstanceAnalysis {
    pub seed: u64,
    pub matrix: AlmostAlternatingMatrix,
    pub generators: Vec<MultiPoly>,
    pub zero_pfaffian: bool,
    pub groebner_basis: Vec<MultiPoly>,
    pub initial_ideal: MonomialIdeal,
    pub codim: usize,
    /// Numerator over `(1 - z)^d`.
    pub hilbert_numerator: IntPolynomial,
}

pub fn analyze_instance(
    shape: ProblemShape,
    d: usize,
    seed: u64,
    budget: &OracleBudget,
) -> Result<InstanceAnalysis> {
    budget.check(shape, d)?;
    let matrix = random_generic_instance(shape, d, seed)?;
    analyze_matrix(matrix, seed, budget)
}

pub fn analyze_matrix(
    matrix: AlmostAlternatingMatrix,
    seed: u64,
    budget: &OracleBudget,
) -> Result<InstanceAnalysis> {
    let d = matrix.nvars();
    let gens = ideal_generators(&matrix)?;
    let zero_pfaffian = gens.has_zero();
    let generators: Vec<MultiPoly> = gens.polys().into_iter().filter(|p| !p.is_zero()).collect();
    let groebner_basis = if generators.is_empty() {
        Vec::new()
    } else {
        buchberger_with_budget(&generators, budget.max_reductions)?
    };
    let initial = initial_ideal(&groebner_basis);
    let codim = monomial_codim(&initial, d)?;
    let hilbert_numerator =
        monomial_hilbert_numerator_with_budget(&initial, budget.max_hilbert_nodes)?;
    Ok(InstanceAnalysis {
        seed,
        matrix,
        generators,
        zero_pfaffian,
        groebner_basis,
        initial_ideal: initial,
        codim,
        hilbert_numerator,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub n: u32,
    pub t: u32,
    pub ambient_dim: usize,
    /// Seed requested by the caller.
    pub seed: u64,
    /// Seed of the draw the report describes (`seed + redraws`).
    pub accepted_seed: u64,
    pub generic: bool,
    pub codim: usize,
    #[serde(with = "bigjson::vec_as_strings")]
    pub hilbert_numerator: Vec<BigInt>,
    /// `(1 - z)^t * hn(z)`, the closed-form numerator over `(1 - z)^d`.
    #[serde(with = "bigjson::vec_as_strings")]
    pub expected_numerator: Vec<BigInt>,
    pub matches_theorem: bool,
    pub redraws: usize,
}

impl OracleReport {
    pub fn hilbert_numerator(&self) -> IntPolynomial {
        IntPolynomial::new(self.hilbert_numerator.clone())
    }
}

/// Draws instances starting at `seed`, redrawing (seed + 1, ...) while a
/// Pfaffian vanishes or `codim J < t`, up to `max_redraws` times.
pub fn oracle_check(
    shape: ProblemShape,
    d: usize,
    seed: u64,
    max_redraws: usize,
) -> Result<OracleReport> {
    oracle_check_with_budget(shape, d, seed, max_redraws, &OracleBudget::default())
}

pub fn oracle_check_with_budget(
    shape: ProblemShape,
    d: usize,
    seed: u64,
    max_redraws: usize,
    budget: &OracleBudget,
) -> Result<OracleReport> {
    budget.check(shape, d)?;
    let t = shape.t() as usize;
    let mut best_codim = 0;
    for redraws in 0..=max_redraws {
        let draw_seed = seed.wrapping_add(redraws as u64);
        let a = analyze_instance(shape, d, draw_seed, budget)?;
        best_codim = best_codim.max(a.codim);
        if a.zero_pfaffian || a.codim < t {
            continue;
        }
        let expected = hilbert_series(shape, &HilbertSeries::polynomial_ring(d as u32));
        let observed = HilbertSeries::new(a.hilbert_numerator.clone(), d as u32);
        return Ok(OracleReport {
            n: shape.n(),
            t: shape.t(),
            ambient_dim: d,
            seed,
            accepted_seed: draw_seed,
            generic: true,
            codim: a.codim,
            matches_theorem: a.codim == t && observed.same_series(&expected),
            hilbert_numerator: a.hilbert_numerator.into_coeffs(),
            expected_numerator: expected.numerator.into_coeffs(),
            redraws,
        });
    }
    Err(Error::Genericity {
        attempts: max_redraws + 1,
        best_codim,
        needed: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::buchberger::is_groebner_basis;
    use crate::groebner::monomial_ideal::first_hilbert_function_mismatch;

    fn shape(n: i64, t: i64) -> ProblemShape {
        ProblemShape::new(n, t).unwrap()
    }

    #[test]
    fn two_two_matches() {
        let r = oracle_check(shape(2, 2), 4, 1, DEFAULT_MAX_REDRAWS).unwrap();
        assert!(r.generic && r.matches_theorem);
        assert_eq!(r.codim, 2);
        assert_eq!(
            r.hilbert_numerator(),
            IntPolynomial::from_i64s(&[1, -1, -1, 1])
        );
    }

    #[test]
    fn two_one_is_a_hyperplane() {
        let r = oracle_check(shape(2, 1), 3, 7, DEFAULT_MAX_REDRAWS).unwrap();
        assert_eq!(r.codim, 1);
        assert_eq!(r.hilbert_numerator(), IntPolynomial::from_i64s(&[1, -1]));
        assert!(r.matches_theorem);
    }

    #[test]
    fn three_three_h_vector() {
        let r = oracle_check(shape(3, 3), 5, 1, DEFAULT_MAX_REDRAWS).unwrap();
        assert!(r.matches_theorem);
        let mut h = r.hilbert_numerator();
        for _ in 0..3 {
            h = h.div_one_minus_z().unwrap();
        }
        assert_eq!(h, IntPolynomial::from_i64s(&[1, 3, 3]));
        assert_eq!(h.eval_at_one(), BigInt::from(7));
    }

    #[test]
    fn too_few_variables_is_a_genericity_failure() {
        let err = oracle_check(shape(2, 2), 1, 1, DEFAULT_MAX_REDRAWS).unwrap_err();
        assert!(matches!(
            err,
            Error::Genericity {
                attempts: 6,
                needed: 2,
                ..
            }
        ));
    }

    #[test]
    fn budget_rejects_large_shapes() {
        assert!(matches!(
            oracle_check(shape(5, 4), 6, 1, 0),
            Err(Error::Budget(_))
        ));
        assert!(matches!(
            oracle_check(shape(2, 2), 9, 1, 0),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn analysis_is_consistent() {
        let a = analyze_instance(shape(3, 2), 4, 3, &OracleBudget::default()).unwrap();
        assert!(is_groebner_basis(&a.groebner_basis));
        assert_eq!(
            first_hilbert_function_mismatch(&a.initial_ideal, &a.hilbert_numerator, 4, 8),
            None
        );
        assert!(a.codim <= 2);
    }
}
