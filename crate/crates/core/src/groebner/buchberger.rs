//! Buchberger's algorithm with the coprime-leading-term criterion and the
//! normal pair selection strategy.

use num_rational::BigRational;
use num_traits::Zero;

use super::multipoly::{Monomial, MultiPoly};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_REDUCTIONS: usize = 200_000;

/// Full reduction of `f` modulo `basis`: no term of the result is divisible
/// by a leading monomial of `basis`.
pub fn reduce(f: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let leads: Vec<(&Monomial, &BigRational)> =
        basis.iter().filter_map(MultiPoly::leading_term).collect();
    let live: Vec<&MultiPoly> = basis.iter().filter(|g| !g.is_zero()).collect();
    let mut p = f.clone();
    let mut rem = MultiPoly::zero_in(f.nvars());
    while let Some((m, c)) = p.remove_leading_term() {
        let hit = leads
            .iter()
            .zip(&live)
            .find_map(|((lm, lc), g)| m.div(lm).map(|q| (q, (&c / *lc), *g)));
        match hit {
            Some((q, factor, g)) => {
                // The leading term cancels against the removed one; subtract the tail.
                let mut tail = g.clone();
                tail.remove_leading_term();
                p.sub_scaled(&tail, &q, &factor);
            }
            None => rem.add_term(m, c),
        }
    }
    rem
}

pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (Some((mf, cf)), Some((mg, cg))) = (f.leading_term(), g.leading_term()) else {
        return MultiPoly::zero_in(f.nvars().max(g.nvars()));
    };
    let l = mf.lcm(mg);
    let a = f.mul_term(&l.div(mf).unwrap(), &cf.recip());
    let b = g.mul_term(&l.div(mg).unwrap(), &cg.recip());
    &a - &b
}

/// Reduced Groebner basis of the ideal generated by `gens`, sorted by
/// ascending leading monomial.
pub fn buchberger(gens: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    buchberger_with_budget(gens, DEFAULT_MAX_REDUCTIONS)
}

pub fn buchberger_with_budget(gens: &[MultiPoly], max_reductions: usize) -> Result<Vec<MultiPoly>> {
    let mut basis: Vec<MultiPoly> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for g in gens {
        let r = reduce(g, &basis);
        if !r.is_zero() {
            push_with_pairs(&mut basis, &mut pairs, r.monic());
        }
    }

    let mut reductions = 0usize;
    while !pairs.is_empty() {
        // normal strategy: smallest lcm of leading monomials first
        let pos = (0..pairs.len())
            .min_by(|&a, &b| pair_lcm(&basis, pairs[a]).cmp(&pair_lcm(&basis, pairs[b])))
            .unwrap();
        let (i, j) = pairs.swap_remove(pos);
        let (li, lj) = (
            basis[i].leading_monomial().unwrap(),
            basis[j].leading_monomial().unwrap(),
        );
        if li.is_coprime(lj) {
            continue;
        }
        reductions += 1;
        if reductions > max_reductions {
            return Err(Error::Budget(format!(
                "Groebner basis needs more than {max_reductions} S-pair reductions"
            )));
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            push_with_pairs(&mut basis, &mut pairs, r.monic());
        }
    }
    Ok(interreduce(basis))
}

fn pair_lcm(basis: &[MultiPoly], (i, j): (usize, usize)) -> Monomial {
    basis[i]
        .leading_monomial()
        .unwrap()
        .lcm(basis[j].leading_monomial().unwrap())
}

fn push_with_pairs(basis: &mut Vec<MultiPoly>, pairs: &mut Vec<(usize, usize)>, g: MultiPoly) {
    let k = basis.len();
    pairs.extend((0..k).map(|i| (i, k)));
    basis.push(g);
}

/// Drops elements whose leading monomial is divisible by another's, then
/// fully reduces each survivor by the rest.
fn interreduce(basis: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = h.leading_monomial().unwrap();
            // ties between equal leading monomials keep the first occurrence
            j != k && lh.divides(lm) && (lh != lm || j < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<MultiPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, h)| h.clone())
            .collect();
        let mut g = minimal[k].clone();
        let (lm, lc) = g.remove_leading_term().unwrap();
        let tail = reduce(&g, &others);
        let mut r = tail;
        r.add_term(lm, lc);
        reduced.push(r.monic());
    }
    reduced.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    reduced
}

/// Post-pass check: every S-polynomial of `basis` reduces to zero.
pub fn is_groebner_basis(basis: &[MultiPoly]) -> bool {
    (0..basis.len()).all(|i| {
        (i + 1..basis.len()).all(|j| reduce(&s_polynomial(&basis[i], &basis[j]), basis).is_zero())
    })
}

/// Reduced basis check: monic, and no term of any element is divisible by
/// the leading monomial of another.
pub fn is_reduced(basis: &[MultiPoly]) -> bool {
    basis.iter().enumerate().all(|(k, g)| {
        g.leading_coeff()
            .is_some_and(|c| c == &BigRational::from_integer(1.into()))
            && basis.iter().enumerate().all(|(j, h)| {
                j == k || {
                    let lh = h.leading_monomial().unwrap();
                    g.terms().all(|(m, _)| !lh.divides(m))
                }
            })
    })
}

pub fn ideal_contains(basis: &[MultiPoly], f: &MultiPoly) -> bool {
    reduce(f, basis).is_zero() || f.is_zero()
}
