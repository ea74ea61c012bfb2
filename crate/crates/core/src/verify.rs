//! Verification sweeps over finite grids.
//!
//! Each check evaluates a residual at every grid point in parallel and keeps
//! results in grid order, so reports are deterministic. A check is either
//! judged (any nonzero residual is a failure) or an observation (nonzero
//! residuals are counted but never fail the suite).

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binom::{one_minus_z_pow, IntPolynomial};
use crate::error::{Error, Result};
use crate::identity_lab::{
    alternating_convolution_residual, alternating_partial_sum, alternating_partial_sum_closed,
    convolution_residual, predicted_factorization_residual, prop_hypotheses_hold, q_value,
    recurrence_residual, unit_series_residual, QArgs,
};
use crate::pfaffian::{ideal_generators, random_generic_instance};
use crate::series::{
    betti_table, euler_numerator, hn_multiplicity, hn_numerator_from_formula, hn_polynomial,
    multiplicity_by_monomial_count_with_budget, ProblemShape, DEFAULT_MONOMIAL_BUDGET,
};

/// Default cap on the number of grid points a single suite may visit.
pub const DEFAULT_MAX_CASES: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub args: Vec<i64>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    /// Argument names, aligned with `Counterexample::args`.
    pub params: Vec<String>,
    pub cases: u64,
    pub nonzero: u64,
    pub judged: bool,
    pub first_counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        !self.judged || self.nonzero == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub total_cases: u64,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<CheckReport>) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            passed: checks.iter().all(CheckReport::passed),
            total_cases: checks.iter().map(|c| c.cases).sum(),
            checks,
        }
    }

    pub fn merge(suite: &str, parts: Vec<SuiteReport>) -> Self {
        SuiteReport::new(suite, parts.into_iter().flat_map(|p| p.checks).collect())
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Outcome of one grid point: `None` when it vanishes.
type Residual = Option<String>;

fn int_residual(r: BigInt) -> Residual {
    (!r.is_zero()).then(|| r.to_string())
}

fn poly_residual(lhs: &IntPolynomial, rhs: &IntPolynomial) -> Residual {
    let diff = lhs - rhs;
    (!diff.is_zero()).then(|| diff.to_string())
}

fn run_check<F>(
    name: &str,
    params: &[&str],
    judged: bool,
    cases: Vec<Vec<i64>>,
    f: F,
) -> Result<CheckReport>
where
    F: Fn(&[i64]) -> Result<Residual> + Sync,
{
    let results: Vec<Residual> = cases.par_iter().map(|a| f(a)).collect::<Result<_>>()?;
    let mut nonzero = 0;
    let mut first = None;
    for (args, r) in cases.iter().zip(results) {
        if let Some(residual) = r {
            nonzero += 1;
            first.get_or_insert_with(|| Counterexample {
                args: args.clone(),
                residual,
            });
        }
    }
    Ok(CheckReport {
        name: name.to_string(),
        params: params.iter().map(|s| s.to_string()).collect(),
        cases: cases.len() as u64,
        nonzero,
        judged,
        first_counterexample: first,
    })
}

fn grid2(a: RangeInclusive<i64>, b: RangeInclusive<i64>) -> Vec<Vec<i64>> {
    a.flat_map(|x| b.clone().map(move |y| vec![x, y])).collect()
}

fn grid3(a: RangeInclusive<i64>, b: RangeInclusive<i64>, c: RangeInclusive<i64>) -> Vec<Vec<i64>> {
    grid2(a, b)
        .into_iter()
        .flat_map(|xy| c.clone().map(move |z| vec![xy[0], xy[1], z]))
        .collect()
}

fn grid4(
    a: RangeInclusive<i64>,
    b: RangeInclusive<i64>,
    c: RangeInclusive<i64>,
    d: RangeInclusive<i64>,
) -> Vec<Vec<i64>> {
    grid3(a, b, c)
        .into_iter()
        .flat_map(|xyz| d.clone().map(move |u| vec![xyz[0], xyz[1], xyz[2], u]))
        .collect()
}

fn ensure_within(cases: u64, max_cases: u64) -> Result<()> {
    if cases > max_cases {
        return Err(Error::Budget(format!(
            "{cases} grid points exceed the case budget {max_cases}"
        )));
    }
    Ok(())
}

fn range_len(r: &RangeInclusive<i64>) -> u64 {
    (r.end() - r.start() + 1).max(0) as u64
}

/// Grid for the identity suite. `Q` arguments are `(w, t, I, alpha)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityGrid {
    pub w: RangeInclusive<i64>,
    pub t: RangeInclusive<i64>,
    pub big_i: RangeInclusive<i64>,
    pub alpha: RangeInclusive<i64>,
    /// `w` and `I` range of the unrestricted `alpha = 0` recurrence sweep.
    pub free_wi: RangeInclusive<i64>,
    pub free_t: RangeInclusive<i64>,
    /// Both arguments of the alternating partial sum.
    pub partial_sum: RangeInclusive<i64>,
    pub alt_conv_a: RangeInclusive<i64>,
    pub alt_conv_bc: RangeInclusive<i64>,
    pub max_n: i64,
    pub max_t: i64,
    pub max_cases: u64,
}

impl IdentityGrid {
    /// The smallest grid on which the whole family is required to vanish.
    pub fn minimal() -> Self {
        IdentityGrid {
            w: -6..=10,
            t: 0..=8,
            big_i: 1..=12,
            alpha: 0..=6,
            free_wi: -5..=8,
            free_t: 0..=6,
            partial_sum: -10..=10,
            alt_conv_a: 0..=8,
            alt_conv_bc: -8..=8,
            max_n: 10,
            max_t: 8,
            max_cases: DEFAULT_MAX_CASES,
        }
    }

    fn size_hint(&self) -> u64 {
        let box4 = range_len(&self.w)
            * range_len(&self.t)
            * range_len(&self.big_i)
            * range_len(&self.alpha);
        2 * box4
            + range_len(&self.free_wi).pow(2) * range_len(&self.free_t)
            + range_len(&self.partial_sum).pow(2)
            + range_len(&self.alt_conv_a) * range_len(&self.alt_conv_bc).pow(2)
            + 2 * (self.max_n.max(0) * self.max_t.max(0) * (self.max_n + 1).max(0)) as u64
    }
}

impl Default for IdentityGrid {
    /// Larger than [`IdentityGrid::minimal`]: over `10^5` cases in total.
    fn default() -> Self {
        IdentityGrid {
            w: -8..=16,
            t: 0..=12,
            big_i: 1..=20,
            alpha: 0..=8,
            free_wi: -8..=12,
            free_t: 0..=10,
            partial_sum: -12..=12,
            alt_conv_a: 0..=10,
            alt_conv_bc: -10..=10,
            max_n: 12,
            max_t: 10,
            max_cases: DEFAULT_MAX_CASES,
        }
    }
}

fn qargs(a: &[i64]) -> QArgs {
    QArgs::new(a[0], a[1], a[2], a[3] as u32)
}

const Q_PARAMS: [&str; 4] = ["w", "t", "I", "alpha"];

pub fn identity_suite(grid: &IdentityGrid) -> Result<SuiteReport> {
    if *grid.alpha.start() < 0 {
        return Err(Error::OutOfRange("alpha must be non-negative".into()));
    }
    ensure_within(grid.size_hint(), grid.max_cases)?;
    let full = grid4(
        grid.w.clone(),
        grid.t.clone(),
        grid.big_i.clone(),
        grid.alpha.clone(),
    );
    let admissible: Vec<Vec<i64>> = full
        .iter()
        .filter(|a| prop_hypotheses_hold(&qargs(a)))
        .cloned()
        .collect();
    let t_hi = *grid.t.end();

    let mut checks = vec![run_check(
        "q_vanishes",
        &Q_PARAMS,
        true,
        admissible.clone(),
        |a| Ok(int_residual(q_value(&qargs(a)))),
    )?];

    // t+1 must stay inside the grid
    let rec: Vec<Vec<i64>> = admissible.iter().filter(|a| a[1] < t_hi).cloned().collect();
    checks.push(run_check("recurrence", &Q_PARAMS, true, rec, |a| {
        Ok(int_residual(recurrence_residual(
            a[0],
            a[1],
            a[2],
            a[3] as u32,
        )))
    })?);

    let free = grid3(
        grid.free_wi.clone(),
        grid.free_t.clone(),
        grid.free_wi.clone(),
    )
    .into_iter()
    .map(|a| vec![a[0], a[1], a[2], 0])
    .collect();
    checks.push(run_check(
        "recurrence_alpha0_unrestricted",
        &Q_PARAMS,
        true,
        free,
        |a| Ok(int_residual(recurrence_residual(a[0], a[1], a[2], 0))),
    )?);

    let outside: Vec<Vec<i64>> = full
        .iter()
        .filter(|a| a[3] >= 1 && a[1] < t_hi && !prop_hypotheses_hold(&qargs(a)))
        .cloned()
        .collect();
    checks.push(run_check(
        "recurrence_outside_hypotheses",
        &Q_PARAMS,
        false,
        outside,
        |a| {
            Ok(int_residual(recurrence_residual(
                a[0],
                a[1],
                a[2],
                a[3] as u32,
            )))
        },
    )?);

    let base: Vec<Vec<i64>> = admissible.iter().filter(|a| a[1] == 0).cloned().collect();
    checks.push(run_check("base_case_t0", &Q_PARAMS, true, base, |a| {
        Ok(int_residual(q_value(&qargs(a))))
    })?);

    checks.push(run_check(
        "alternating_partial_sum",
        &["a", "b"],
        true,
        grid2(grid.partial_sum.clone(), grid.partial_sum.clone()),
        |a| {
            Ok(int_residual(
                alternating_partial_sum(a[0], a[1]) - alternating_partial_sum_closed(a[0], a[1]),
            ))
        },
    )?);

    checks.push(run_check(
        "alternating_convolution",
        &["a", "b", "c"],
        true,
        grid3(
            grid.alt_conv_a.clone(),
            grid.alt_conv_bc.clone(),
            grid.alt_conv_bc.clone(),
        ),
        |a| alternating_convolution_residual(a[0], a[1], a[2]).map(int_residual),
    )?);

    let nt = grid2(1..=grid.max_n, 1..=grid.max_t);
    let conv: Vec<Vec<i64>> = nt
        .iter()
        .flat_map(|p| ((p[0] + 1) / 2..=p[0]).map(move |i| vec![p[0], p[1], i]))
        .collect();
    checks.push(run_check(
        "convolution",
        &["n", "t", "I"],
        true,
        conv,
        |a| convolution_residual(a[0], a[1], a[2]).map(int_residual),
    )?);
    let unit: Vec<Vec<i64>> = nt
        .iter()
        .flat_map(|p| (0..=p[0]).map(move |i| vec![p[0], p[1], i]))
        .collect();
    checks.push(run_check(
        "unit_series",
        &["n", "t", "I"],
        true,
        unit,
        |a| unit_series_residual(a[0], a[1], a[2]).map(int_residual),
    )?);

    Ok(SuiteReport::new("identities", checks))
}

/// Grid for the series and resolution suites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesGrid {
    pub max_n: i64,
    pub max_t: i64,
    /// Upper `t` for the monomial-count multiplicity check.
    pub multiplicity_max_t: i64,
    /// Shapes for the coefficientwise comparison with the identity residuals.
    pub decomposition_max_n: i64,
    pub decomposition_max_t: i64,
    /// Shapes for the generator census against the first Betti row.
    pub census_max_n: i64,
    pub census_max_t: i64,
    pub seed: u64,
    pub monomial_budget: u64,
    pub max_cases: u64,
}

impl Default for SeriesGrid {
    fn default() -> Self {
        SeriesGrid {
            max_n: 10,
            max_t: 8,
            multiplicity_max_t: 6,
            decomposition_max_n: 6,
            decomposition_max_t: 5,
            census_max_n: 6,
            census_max_t: 4,
            seed: crate::cli::DEFAULT_SEED,
            monomial_budget: DEFAULT_MONOMIAL_BUDGET,
            max_cases: DEFAULT_MAX_CASES,
        }
    }
}

fn shape_of(a: &[i64]) -> Result<ProblemShape> {
    ProblemShape::new(a[0], a[1])
}

pub fn series_suite(grid: &SeriesGrid) -> Result<SuiteReport> {
    let nt = grid2(1..=grid.max_n, 1..=grid.max_t);
    ensure_within(3 * nt.len() as u64, grid.max_cases)?;
    let mut checks = vec![run_check("factorization", &["n", "t"], true, nt, |a| {
        let s = shape_of(a)?;
        let factored = &one_minus_z_pow(s.t()) * &hn_polynomial(s);
        Ok(poly_residual(&hn_numerator_from_formula(s), &factored))
    })?];

    let mult = grid2(1..=grid.max_n, 1..=grid.multiplicity_max_t.min(grid.max_t));
    checks.push(run_check(
        "multiplicity_closed_form",
        &["n", "t"],
        true,
        mult.clone(),
        |a| {
            let s = shape_of(a)?;
            Ok(int_residual(
                hn_polynomial(s).eval_at_one() - hn_multiplicity(s),
            ))
        },
    )?);
    checks.push(run_check(
        "multiplicity_monomial_count",
        &["n", "t"],
        true,
        mult,
        |a| {
            let s = shape_of(a)?;
            let count = multiplicity_by_monomial_count_with_budget(s, grid.monomial_budget)?;
            Ok(int_residual(hn_multiplicity(s) - count))
        },
    )?);

    let dec = grid2(1..=grid.decomposition_max_n, 1..=grid.decomposition_max_t);
    let dec: Vec<Vec<i64>> = dec
        .iter()
        .flat_map(|p| (0..p[0] + p[1]).map(move |i| vec![p[0], p[1], i]))
        .collect();
    checks.push(run_check(
        "proof_decomposition",
        &["n", "t", "I"],
        true,
        dec,
        |a| {
            let s = shape_of(a)?;
            let factored = &one_minus_z_pow(s.t()) * &hn_polynomial(s);
            let i = a[2] as usize;
            let observed = factored.coeff(i) - hn_numerator_from_formula(s).coeff(i);
            Ok(int_residual(
                observed - predicted_factorization_residual(a[0], a[1], a[2])?,
            ))
        },
    )?);

    Ok(SuiteReport::new("series", checks))
}

/// Generator degrees predicted by the first Betti row, ascending.
pub fn betti_row_one_degrees(shape: ProblemShape) -> Vec<u32> {
    let table = betti_table(shape);
    let mut degs = Vec::new();
    if let Some(row) = table.row(1) {
        for s in &row.summands {
            let k: usize = s
                .multiplicity
                .to_string()
                .parse()
                .expect("small multiplicity");
            degs.extend(std::iter::repeat_n(s.total_degree(), k));
        }
    }
    degs.sort_unstable();
    degs
}

/// Generator degrees of a generic instance in `t + 2` variables, redrawing
/// up to five times past instances with a vanishing Pfaffian.
pub fn generic_generator_degrees(shape: ProblemShape, seed: u64) -> Result<Vec<u32>> {
    const REDRAWS: u64 = 5;
    let d = shape.t() as usize + 2;
    for k in 0..=REDRAWS {
        let gens = ideal_generators(&random_generic_instance(shape, d, seed.wrapping_add(k))?)?;
        if !gens.has_zero() {
            return Ok(gens.degrees());
        }
    }
    Err(Error::Genericity {
        attempts: REDRAWS as usize + 1,
        best_codim: 0,
        needed: shape.t() as usize,
    })
}

pub fn resolution_suite(grid: &SeriesGrid) -> Result<SuiteReport> {
    let nt = grid2(1..=grid.max_n, 1..=grid.max_t);
    ensure_within(3 * nt.len() as u64, grid.max_cases)?;
    let mut checks = vec![run_check(
        "euler_characteristic",
        &["n", "t"],
        true,
        nt.clone(),
        |a| {
            let s = shape_of(a)?;
            Ok(poly_residual(
                &euler_numerator(&betti_table(s)),
                &hn_numerator_from_formula(s),
            ))
        },
    )?];
    checks.push(run_check(
        "vanishes_at_one",
        &["n", "t"],
        true,
        nt.clone(),
        |a| {
            Ok(int_residual(
                hn_numerator_from_formula(shape_of(a)?).eval_at_one(),
            ))
        },
    )?);
    checks.push(run_check(
        "one_minus_z_order",
        &["n", "t"],
        true,
        nt,
        |a| {
            let order = hn_numerator_from_formula(shape_of(a)?).one_minus_z_order();
            Ok(match order {
                Some(k) if k as i64 == a[1] => None,
                other => Some(format!("order {other:?}")),
            })
        },
    )?);

    let census = grid2(1..=grid.census_max_n, 1..=grid.census_max_t);
    checks.push(run_check(
        "generator_census",
        &["n", "t"],
        true,
        census,
        |a| {
            let s = shape_of(a)?;
            let observed = generic_generator_degrees(s, grid.seed)?;
            let predicted = betti_row_one_degrees(s);
            Ok((observed != predicted)
                .then(|| format!("degrees {observed:?}, row one {predicted:?}")))
        },
    )?);

    // the rank alternating sum of a resolution of a proper quotient is zero
    let ranks = grid2(1..=grid.max_n, 1..=grid.max_t);
    checks.push(run_check(
        "rank_alternating_sum",
        &["n", "t"],
        true,
        ranks,
        |a| {
            Ok(int_residual(
                betti_table(shape_of(a)?).rank_euler_characteristic(),
            ))
        },
    )?);

    Ok(SuiteReport::new("resolution", checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_identity_grid_passes() {
        let r = identity_suite(&IdentityGrid::minimal()).unwrap();
        assert!(r.passed, "{r:#?}");
        assert!(r.check("q_vanishes").unwrap().cases >= 10_000);
        assert!(!r.check("recurrence_outside_hypotheses").unwrap().judged);
    }

    #[test]
    fn series_and_resolution_pass() {
        let grid = SeriesGrid::default();
        let s = series_suite(&grid).unwrap();
        assert!(s.passed, "{s:#?}");
        assert_eq!(s.check("factorization").unwrap().cases, 80);
        let r = resolution_suite(&grid).unwrap();
        assert!(r.passed, "{r:#?}");
    }

    #[test]
    fn failing_residual_is_reported_in_grid_order() {
        let r = run_check(
            "probe",
            &["x"],
            true,
            (0..10).map(|x| vec![x]).collect(),
            |a| Ok(int_residual(BigInt::from(a[0] / 4))),
        )
        .unwrap();
        assert_eq!(r.nonzero, 6);
        assert_eq!(r.first_counterexample.as_ref().unwrap().args, vec![4]);
        assert!(!r.passed());
    }

    #[test]
    fn case_budget() {
        let grid = IdentityGrid {
            max_cases: 10,
            ..IdentityGrid::minimal()
        };
        assert!(matches!(identity_suite(&grid), Err(Error::Budget(_))));
    }

    #[test]
    fn census_example() {
        let s = ProblemShape::new(3, 3).unwrap();
        assert_eq!(betti_row_one_degrees(s), vec![2, 2, 2, 3]);
        assert_eq!(generic_generator_degrees(s, 1).unwrap(), vec![2, 2, 2, 3]);
    }
}
