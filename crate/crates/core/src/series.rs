//! Closed-form Hilbert data of `R / J(rho)`.
//!
//! Everything here is normalized to an ambient ring with multiplicity one;
//! a general standard graded ambient ring enters only through the numerator
//! of its Hilbert series (see [`hilbert_series`]).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bigjson;
use crate::binom::{gbinom, one_minus_z_pow, sign, IntPolynomial, TruncatedSeries};
use crate::error::{Error, Result};

/// Enumeration ceiling for [`multiplicity_by_monomial_count`].
pub const DEFAULT_MONOMIAL_BUDGET: u64 = 10_000_000;

/// The pair `(n, t)`: `rho` is `n x (n + t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProblemShape {
    n: u32,
    t: u32,
}

impl ProblemShape {
    pub fn new(n: i64, t: i64) -> Result<Self> {
        if n < 1 || t < 1 || n > u32::MAX as i64 || t > u32::MAX as i64 {
            return Err(Error::InvalidShape { n, t });
        }
        Ok(ProblemShape {
            n: n as u32,
            t: t as u32,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    fn ni(&self) -> i64 {
        self.n as i64
    }

    fn ti(&self) -> i64 {
        self.t as i64
    }
}

/// One free summand `B(-x_twist, -y_twist)^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiSummand {
    #[serde(rename = "xdeg")]
    pub x_twist: u32,
    #[serde(rename = "ydeg")]
    pub y_twist: u32,
    #[serde(rename = "mult", with = "bigjson::as_string")]
    pub multiplicity: BigInt,
}

impl BettiSummand {
    pub fn total_degree(&self) -> u32 {
        self.x_twist + self.y_twist
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRow {
    #[serde(rename = "N")]
    pub homological_degree: u32,
    pub summands: Vec<BettiSummand>,
}

impl BettiRow {
    pub fn total_rank(&self) -> BigInt {
        self.summands.iter().map(|s| &s.multiplicity).sum()
    }
}

/// Bigraded twists of the length-`t` resolution of `R / J(rho)`, one row per
/// homological degree `0..=t`. Zero-multiplicity summands are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiTable {
    pub rows: Vec<BettiRow>,
}

impl BettiTable {
    pub fn row(&self, homological_degree: u32) -> Option<&BettiRow> {
        self.rows
            .iter()
            .find(|r| r.homological_degree == homological_degree)
    }

    /// Alternating sum of total ranks.
    pub fn rank_euler_characteristic(&self) -> BigInt {
        self.rows
            .iter()
            .map(|r| r.total_rank() * sign(r.homological_degree as i64))
            .sum()
    }
}

/// `numerator / (1 - z)^denom_power`, not necessarily reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: IntPolynomial,
    pub denom_power: u32,
}

impl HilbertSeries {
    pub fn new(numerator: IntPolynomial, denom_power: u32) -> Self {
        HilbertSeries {
            numerator,
            denom_power,
        }
    }

    /// Hilbert series `1/(1-z)^d` of a polynomial ring in `d` variables.
    pub fn polynomial_ring(d: u32) -> Self {
        Self::new(IntPolynomial::one(), d)
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn same_series(&self, other: &HilbertSeries) -> bool {
        let lhs = &self.numerator * &one_minus_z_pow(other.denom_power);
        let rhs = &other.numerator * &one_minus_z_pow(self.denom_power);
        lhs == rhs
    }

    /// Hilbert function values `dim_0 .. dim_upto`.
    pub fn expand(&self, upto: usize) -> TruncatedSeries {
        let num = TruncatedSeries::from_poly(&self.numerator, upto);
        if self.denom_power == 0 {
            return num;
        }
        num.mul(&TruncatedSeries::geometric_inverse(self.denom_power, upto))
    }
}

/// h-vector: coefficients of `hn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector(pub Vec<BigInt>);

/// `hn(z) = sum_{i<n} C(t+i-1, i) z^i - sum_{ceil(n/2) <= i < n} C(t+2i-n-1, 2i-n) z^i`.
pub fn hn_polynomial(shape: ProblemShape) -> IntPolynomial {
    let (n, t) = (shape.ni(), shape.ti());
    let lower = (n + 1) / 2;
    IntPolynomial::new(
        (0..n)
            .map(|i| {
                let mut c = gbinom(t + i - 1, i);
                if i >= lower {
                    c -= gbinom(t + 2 * i - n - 1, 2 * i - n);
                }
                c
            })
            .collect(),
    )
}

/// `sum_{0 <= i <= (n-1)/2} C(n-2-2i+t, t-1)`.
pub fn hn_multiplicity(shape: ProblemShape) -> BigInt {
    let (n, t) = (shape.ni(), shape.ti());
    (0..=(n - 1) / 2)
        .map(|i| gbinom(n - 2 - 2 * i + t, t - 1))
        .sum()
}

/// Counts monomials in `t` variables of degree `< n` whose degree has the
/// parity opposite to `n`, by walking every exponent vector.
pub fn multiplicity_by_monomial_count(shape: ProblemShape) -> Result<BigInt> {
    multiplicity_by_monomial_count_with_budget(shape, DEFAULT_MONOMIAL_BUDGET)
}

pub fn multiplicity_by_monomial_count_with_budget(
    shape: ProblemShape,
    budget: u64,
) -> Result<BigInt> {
    let (n, t) = (shape.ni(), shape.ti());
    let total = gbinom(t + n - 1, t);
    if total > BigInt::from(budget) {
        return Err(Error::Budget(format!(
            "{total} monomials to enumerate exceeds budget {budget}"
        )));
    }
    let mut exps = vec![0u32; shape.t as usize];
    let mut count: u64 = 0;
    count_monomials(&mut exps, 0, 0, shape.n - 1, shape.n, &mut count);
    Ok(BigInt::from(count))
}

fn count_monomials(exps: &mut [u32], var: usize, deg: u32, max_deg: u32, n: u32, count: &mut u64) {
    if var == exps.len() {
        if (deg + n) % 2 == 1 {
            *count += 1;
        }
        return;
    }
    for e in 0..=(max_deg - deg) {
        exps[var] = e;
        count_monomials(exps, var + 1, deg + e, max_deg, n, count);
    }
    exps[var] = 0;
}

/// The numerator `HN` read off from the resolution twists:
/// `1 - sum_I C(t, 2I-n) z^I + sum_{I=n+1}^{n+t-1} (-1)^(I-n+1) sum_i ... z^I`.
pub fn hn_numerator_from_formula(shape: ProblemShape) -> IntPolynomial {
    let (n, t) = (shape.ni(), shape.ti());
    let mut coeffs = vec![BigInt::zero(); (n + t) as usize];
    coeffs[0] = BigInt::one();
    for big_i in (n + 1) / 2..=n {
        coeffs[big_i as usize] -= gbinom(t, 2 * big_i - n);
    }
    for big_i in n + 1..=n + t - 1 {
        let inner: BigInt = (0..n)
            .map(|i| {
                gbinom(big_i - 1, n - i - 1) * gbinom(i + big_i - n - 1, i) * gbinom(t, big_i - i)
            })
            .sum();
        coeffs[big_i as usize] += inner * sign(big_i - n + 1);
    }
    IntPolynomial::new(coeffs)
}

pub fn betti_table(shape: ProblemShape) -> BettiTable {
    let (n, t) = (shape.ni(), shape.ti());
    let mut rows = Vec::with_capacity(shape.t as usize + 1);
    rows.push(BettiRow {
        homological_degree: 0,
        summands: vec![BettiSummand {
            x_twist: 0,
            y_twist: 0,
            multiplicity: BigInt::one(),
        }],
    });
    let first = (0..=n / 2)
        .filter_map(|i| {
            let m = gbinom(t, n - 2 * i);
            (!m.is_zero()).then(|| BettiSummand {
                x_twist: i as u32,
                y_twist: (n - 2 * i) as u32,
                multiplicity: m,
            })
        })
        .collect();
    rows.push(BettiRow {
        homological_degree: 1,
        summands: first,
    });
    for hd in 2..=t {
        let summands = (0..n)
            .filter_map(|i| {
                let m = gbinom(hd + n - 2, n - i - 1)
                    * gbinom(i + hd - 2, i)
                    * gbinom(t, hd + n - 1 - i);
                (!m.is_zero()).then(|| BettiSummand {
                    x_twist: i as u32,
                    y_twist: (hd + n - 1 - i) as u32,
                    multiplicity: m,
                })
            })
            .collect();
        rows.push(BettiRow {
            homological_degree: hd as u32,
            summands,
        });
    }
    BettiTable { rows }
}

/// Alternating sum of `mult * z^(x_twist + y_twist)` over the table.
pub fn euler_numerator(table: &BettiTable) -> IntPolynomial {
    let mut acc = IntPolynomial::zero();
    for row in &table.rows {
        let s = BigInt::from(sign(row.homological_degree as i64));
        for summand in &row.summands {
            acc = &acc
                + &IntPolynomial::monomial(
                    &summand.multiplicity * &s,
                    summand.total_degree() as usize,
                );
        }
    }
    acc
}

/// `HS_R * (1 - z)^t * hn`, kept over the ambient denominator.
pub fn hilbert_series(shape: ProblemShape, ambient: &HilbertSeries) -> HilbertSeries {
    let numerator = &(&ambient.numerator * &one_minus_z_pow(shape.t)) * &hn_polynomial(shape);
    HilbertSeries::new(numerator, ambient.denom_power)
}

pub fn h_vector(shape: ProblemShape) -> HVector {
    HVector(hn_polynomial(shape).into_coeffs())
}

/// JSON document for the `hilbert` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub n: u32,
    pub t: u32,
    #[serde(with = "bigjson::vec_as_numbers")]
    pub hn: Vec<BigInt>,
    #[serde(with = "bigjson::as_string")]
    pub multiplicity: BigInt,
    #[serde(rename = "HN", with = "bigjson::vec_as_numbers")]
    pub hn_numerator: Vec<BigInt>,
    pub betti: BettiTable,
    /// Present when an ambient dimension was requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hilbert_series: Option<SeriesOverDenominator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesOverDenominator {
    #[serde(with = "bigjson::vec_as_numbers")]
    pub numerator: Vec<BigInt>,
    pub denom_power: u32,
}

impl SeriesReport {
    pub fn compute(shape: ProblemShape, ambient_dim: Option<u32>) -> Self {
        SeriesReport {
            n: shape.n,
            t: shape.t,
            hn: h_vector(shape).0,
            multiplicity: hn_multiplicity(shape),
            hn_numerator: hn_numerator_from_formula(shape).into_coeffs(),
            betti: betti_table(shape),
            hilbert_series: ambient_dim.map(|d| {
                let hs = hilbert_series(shape, &HilbertSeries::polynomial_ring(d));
                SeriesOverDenominator {
                    numerator: hs.numerator.into_coeffs(),
                    denom_power: hs.denom_power,
                }
            }),
        }
    }
}
