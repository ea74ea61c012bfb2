//! Monomial ideals: Hilbert numerators and codimension.

use num_bigint::BigInt;

use super::multipoly::{Monomial, MultiPoly};
use crate::binom::{one_minus_z_pow, IntPolynomial};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_HILBERT_NODES: usize = 5_000_000;

/// Largest ambient dimension accepted by [`monomial_codim`].
pub const MAX_CODIM_VARS: usize = 20;

/// Monomial ideal given by its minimal generators, an antichain under divisibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(gens: impl IntoIterator<Item = Monomial>) -> Self {
        MonomialIdeal {
            gens: minimalize(gens.into_iter().collect()),
        }
    }

    pub fn zero() -> Self {
        MonomialIdeal { gens: Vec::new() }
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `self : m`.
    pub fn quotient(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.gens.iter().map(|g| g.div_gcd(m)))
    }

    /// Number of degree-`k` monomials in `d` variables outside the ideal.
    pub fn standard_monomial_count(&self, d: usize, k: u32) -> u64 {
        let mut exps = vec![0u32; d];
        let mut count = 0;
        walk_degree(&mut exps, 0, k, &mut |e| {
            if !self.contains(&Monomial::new(e.to_vec())) {
                count += 1;
            }
        });
        count
    }
}

/// Sorted, deduplicated, divisibility-minimal generating set.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    // ascending order: a divisor always precedes its multiples
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Visits every exponent vector of total degree `remaining` over the
/// variables `var..`.
pub(crate) fn walk_degree(
    exps: &mut [u32],
    var: usize,
    remaining: u32,
    f: &mut impl FnMut(&[u32]),
) {
    if var + 1 == exps.len() {
        exps[var] = remaining;
        f(exps);
        exps[var] = 0;
        return;
    }
    if exps.is_empty() {
        if remaining == 0 {
            f(exps);
        }
        return;
    }
    for e in (0..=remaining).rev() {
        exps[var] = e;
        walk_degree(exps, var + 1, remaining - e, f);
    }
    exps[var] = 0;
}

/// Leading monomials of a Groebner basis, minimalized.
pub fn initial_ideal(gb: &[MultiPoly]) -> MonomialIdeal {
    MonomialIdeal::new(gb.iter().filter_map(|g| g.leading_monomial().cloned()))
}

/// Numerator `N(z)` with `HS(R/I) = N(z) / (1 - z)^d`.
///
/// Uses `N(I + <m>) = N(I) - z^deg(m) N(I : m)` and `N(<>) = 1`. `d` does not
/// enter the numerator itself; it is accepted for symmetry with the series
/// it describes.
pub fn monomial_hilbert_numerator(ideal: &MonomialIdeal, _d: usize) -> Result<IntPolynomial> {
    monomial_hilbert_numerator_with_budget(ideal, DEFAULT_MAX_HILBERT_NODES)
}

pub fn monomial_hilbert_numerator_with_budget(
    ideal: &MonomialIdeal,
    max_nodes: usize,
) -> Result<IntPolynomial> {
    let mut nodes = 0usize;
    numerator_rec(ideal.gens(), &mut nodes, max_nodes)
}

fn numerator_rec(gens: &[Monomial], nodes: &mut usize, max_nodes: usize) -> Result<IntPolynomial> {
    *nodes += 1;
    if *nodes > max_nodes {
        return Err(Error::Budget(format!(
            "Hilbert numerator recursion exceeded {max_nodes} nodes"
        )));
    }
    if gens.is_empty() {
        return Ok(IntPolynomial::one());
    }
    // pairwise coprime generators form a regular sequence
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        return Ok(gens.iter().fold(IntPolynomial::one(), |acc, g| {
            &acc * &(&IntPolynomial::one()
                - &IntPolynomial::monomial(BigInt::from(1), g.degree() as usize))
        }));
    }
    let (last, rest) = gens.split_last().unwrap();
    let base = numerator_rec(rest, nodes, max_nodes)?;
    let colon = minimalize(rest.iter().map(|g| g.div_gcd(last)).collect());
    let shifted = numerator_rec(&colon, nodes, max_nodes)?.shift(last.degree() as usize);
    Ok(&base - &shifted)
}

/// `d - dim(R/I)`, where `dim` is the largest size of a variable set `V`
/// containing the support of no generator. Exhaustive over subsets.
pub fn monomial_codim(ideal: &MonomialIdeal, d: usize) -> Result<usize> {
    if d > MAX_CODIM_VARS {
        return Err(Error::Budget(format!(
            "codimension search over {d} variables exceeds {MAX_CODIM_VARS}"
        )));
    }
    let supports: Vec<u64> = ideal.gens().iter().map(Monomial::support_mask).collect();
    if supports.contains(&0) {
        // the unit ideal
        return Ok(d);
    }
    let mut dim = 0;
    for v in 0u64..(1u64 << d) {
        let size = v.count_ones() as usize;
        if size > dim && supports.iter().all(|&s| s & !v != 0) {
            dim = size;
        }
    }
    Ok(d - dim)
}

/// `(1 - z)^d`-normalized series `N(z)` checked against a count of standard
/// monomials: returns the first degree where they disagree.
pub fn first_hilbert_function_mismatch(
    ideal: &MonomialIdeal,
    numerator: &IntPolynomial,
    d: usize,
    upto: u32,
) -> Option<u32> {
    let series =
        crate::series::HilbertSeries::new(numerator.clone(), d as u32).expand(upto as usize);
    (0..=upto)
        .find(|&k| *series.coeff(k as usize) != BigInt::from(ideal.standard_monomial_count(d, k)))
}

/// Numerator of `k[x_1..x_d]` modulo a regular sequence of the given degrees.
pub fn complete_intersection_numerator(degrees: &[u32]) -> IntPolynomial {
    degrees.iter().fold(IntPolynomial::one(), |acc, &e| {
        let factor: IntPolynomial = (0..e).fold(IntPolynomial::zero(), |s, i| {
            &s + &IntPolynomial::monomial(BigInt::from(1), i as usize)
        });
        &(&acc * &factor) * &one_minus_z_pow(1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn initial_ideal_prunes() {
        let x = MultiPoly::var(0, 2);
        let y = MultiPoly::var(1, 2);
        let ideal = initial_ideal(&[x.clone(), y.clone()]);
        assert_eq!(ideal.gens().len(), 2);
        let x2y = &(&x * &x) * &y;
        let ideal = initial_ideal(&[x.clone(), x2y]);
        assert_eq!(ideal.gens(), &[m(&[1, 0])]);
        let ideal = MonomialIdeal::new([m(&[2, 0]), m(&[1, 1])]);
        assert_eq!(ideal.gens().len(), 2);
    }

    #[test]
    fn numerator_examples() {
        let n = monomial_hilbert_numerator(&MonomialIdeal::new([m(&[1, 0])]), 2).unwrap();
        assert_eq!(n, IntPolynomial::from_i64s(&[1, -1]));
        let n =
            monomial_hilbert_numerator(&MonomialIdeal::new([m(&[2, 0]), m(&[1, 1])]), 2).unwrap();
        assert_eq!(n, IntPolynomial::from_i64s(&[1, 0, -2, 1]));
        let n = monomial_hilbert_numerator(&MonomialIdeal::zero(), 3).unwrap();
        assert_eq!(n, IntPolynomial::one());
    }

    #[test]
    fn numerator_matches_direct_count() {
        // k[x,y]/(x^2, xy): 1, 2, 1, 1, 1, ...
        let ideal = MonomialIdeal::new([m(&[2, 0]), m(&[1, 1])]);
        let counts: Vec<u64> = (0..=6)
            .map(|k| ideal.standard_monomial_count(2, k))
            .collect();
        assert_eq!(counts, vec![1, 2, 1, 1, 1, 1, 1]);
        let n = monomial_hilbert_numerator(&ideal, 2).unwrap();
        assert_eq!(first_hilbert_function_mismatch(&ideal, &n, 2, 6), None);

        let ideal =
            MonomialIdeal::new([m(&[2, 1, 0]), m(&[0, 2, 2]), m(&[1, 0, 3]), m(&[0, 0, 4])]);
        let n = monomial_hilbert_numerator(&ideal, 3).unwrap();
        assert_eq!(first_hilbert_function_mismatch(&ideal, &n, 3, 10), None);
    }

    #[test]
    fn codim_examples() {
        assert_eq!(
            monomial_codim(&MonomialIdeal::new([m(&[1, 0, 0])]), 3).unwrap(),
            1
        );
        assert_eq!(
            monomial_codim(&MonomialIdeal::new([m(&[1, 0]), m(&[0, 1])]), 2).unwrap(),
            2
        );
        assert_eq!(
            monomial_codim(&MonomialIdeal::new([m(&[1, 1])]), 2).unwrap(),
            1
        );
        assert_eq!(monomial_codim(&MonomialIdeal::zero(), 4).unwrap(), 0);
        assert_eq!(
            monomial_codim(&MonomialIdeal::new([m(&[0, 0])]), 2).unwrap(),
            2
        );
    }

    #[test]
    fn budget() {
        let ideal = MonomialIdeal::new([m(&[2, 0]), m(&[1, 1])]);
        assert!(matches!(
            monomial_hilbert_numerator_with_budget(&ideal, 1),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn complete_intersection() {
        // (2,3): (1+z)(1+z+z^2)(1-z)^2
        let ci = complete_intersection_numerator(&[2, 3]);
        let ideal = MonomialIdeal::new([m(&[2, 0, 0]), m(&[0, 3, 0])]);
        assert_eq!(monomial_hilbert_numerator(&ideal, 3).unwrap(), ci);
    }
}
