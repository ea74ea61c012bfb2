//! Acceptance suite: every criterion is checked exactly and reported on one
//! line. Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use almalt::binom::{gbinom, one_minus_z_pow};
use almalt::groebner::oracle::{oracle_check, DEFAULT_MAX_REDRAWS};
use almalt::identity_lab::{convolution_residual, q_value, unit_series_residual, QArgs};
use almalt::pfaffian::{determinant, pfaffian};
use almalt::series::{
    betti_table, euler_numerator, hn_multiplicity, hn_numerator_from_formula, hn_polynomial,
    multiplicity_by_monomial_count, HilbertSeries,
};
use almalt::verify::{
    betti_row_one_degrees, generic_generator_degrees, identity_suite, IdentityGrid,
};
use almalt::ProblemShape;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, check and time limit.
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn shape(n: i64, t: i64) -> ProblemShape {
    ProblemShape::new(n, t).expect("positive shape")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn factorization() -> Outcome {
    let mut cases = 0;
    for n in 1..=10 {
        for t in 1..=8 {
            let s = shape(n, t);
            let factored = &one_minus_z_pow(s.t()) * &hn_polynomial(s);
            let hn = hn_numerator_from_formula(s);
            ensure(hn == factored, || {
                format!("n={n} t={t}: HN = {hn}, (1-z)^t hn = {factored}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} shapes"))
}

fn resolution_consistency() -> Outcome {
    let mut cases = 0;
    for n in 1..=10 {
        for t in 1..=8 {
            let s = shape(n, t);
            let hn = hn_numerator_from_formula(s);
            let euler = euler_numerator(&betti_table(s));
            ensure(euler == hn, || {
                format!("n={n} t={t}: Euler numerator {euler} != HN {hn}")
            })?;
            ensure(hn.eval_at_one().is_zero(), || {
                format!("n={n} t={t}: HN(1) != 0")
            })?;
            let order = hn.one_minus_z_order();
            ensure(order == Some(t as usize), || {
                format!("n={n} t={t}: (1-z)-order {order:?}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} shapes"))
}

fn multiplicity_triple() -> Outcome {
    let mut cases = 0;
    for n in 1..=10 {
        for t in 1..=6 {
            let s = shape(n, t);
            let at_one = hn_polynomial(s).eval_at_one();
            let sum: BigInt = (0..=(n - 1) / 2)
                .map(|i| gbinom(n - 2 - 2 * i + t, t - 1))
                .sum();
            let count = multiplicity_by_monomial_count(s).map_err(|e| e.to_string())?;
            ensure(
                at_one == sum && sum == count && count == hn_multiplicity(s),
                || format!("n={n} t={t}: hn(1)={at_one}, sum={sum}, count={count}"),
            )?;
            cases += 1;
        }
    }
    for (n, t, e) in [(3, 3, 7), (2, 2, 2), (4, 2, 6)] {
        let m = hn_multiplicity(shape(n, t));
        ensure(m == BigInt::from(e), || {
            format!("spot value ({n},{t}) = {m}, expected {e}")
        })?;
    }
    Ok(format!("{cases} shapes, 3 spot values"))
}

fn identity_family() -> Outcome {
    let report = identity_suite(&IdentityGrid::minimal()).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for name in [
        "q_vanishes",
        "recurrence",
        "recurrence_alpha0_unrestricted",
        "base_case_t0",
        "alternating_partial_sum",
        "alternating_convolution",
    ] {
        let c = report
            .check(name)
            .ok_or_else(|| format!("missing check {name}"))?;
        ensure(c.judged && c.nonzero == 0 && c.cases > 0, || {
            format!(
                "{name}: {} of {} nonzero, first {:?}",
                c.nonzero, c.cases, c.first_counterexample
            )
        })?;
        parts.push(format!("{name} {}", c.cases));
    }
    let admissible = report.check("q_vanishes").map(|c| c.cases).unwrap_or(0);
    ensure(admissible >= 10_000, || {
        format!("only {admissible} admissible cases")
    })?;
    Ok(parts.join(", "))
}

fn random_alternating(rng: &mut ChaCha8Rng, size: usize) -> Vec<Vec<BigInt>> {
    let mut m = vec![vec![BigInt::zero(); size]; size];
    for i in 0..size {
        for j in i + 1..size {
            let v: i64 = rng.gen_range(-9..=9);
            m[i][j] = BigInt::from(v);
            m[j][i] = BigInt::from(-v);
        }
    }
    m
}

fn pfaffian_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE);
    const TRIALS: usize = 100;
    for size in [2, 4, 6, 8] {
        for trial in 0..TRIALS {
            let m = random_alternating(&mut rng, size);
            let pf = pfaffian(&m).map_err(|e| e.to_string())?;
            let det = determinant(&m);
            ensure(&pf * &pf == det, || {
                format!(
                    "size {size} trial {trial}: Pf^2 = {} but det = {det}",
                    &pf * &pf
                )
            })?;
        }
    }
    Ok(format!("{TRIALS} matrices per size 2, 4, 6, 8"))
}

fn generator_census() -> Outcome {
    let mut cases = 0;
    for n in 1..=6 {
        for t in 1..=4 {
            let s = shape(n, t);
            let observed = generic_generator_degrees(s, 1).map_err(|e| e.to_string())?;
            let predicted = betti_row_one_degrees(s);
            let rank = betti_table(s)
                .row(1)
                .map(|r| r.total_rank())
                .unwrap_or_default();
            ensure(
                observed == predicted && BigInt::from(observed.len()) == rank,
                || format!("n={n} t={t}: degrees {observed:?}, Betti row one {predicted:?}"),
            )?;
            cases += 1;
        }
    }
    Ok(format!("{cases} shapes"))
}

fn oracle_reproduction() -> Outcome {
    let mut runs = 0;
    for (n, t) in [(2, 1), (2, 2), (3, 2), (2, 3), (3, 3), (4, 2)] {
        let s = shape(n, t);
        let d = t as usize + 2;
        for seed in 1..=3u64 {
            let r = oracle_check(s, d, seed, DEFAULT_MAX_REDRAWS)
                .map_err(|e| format!("({n},{t}) seed {seed}: {e}"))?;
            let expected =
                HilbertSeries::new(&one_minus_z_pow(s.t()) * &hn_polynomial(s), d as u32);
            let observed = HilbertSeries::new(r.hilbert_numerator(), d as u32);
            ensure(
                r.generic
                    && r.redraws <= DEFAULT_MAX_REDRAWS
                    && r.codim == t as usize
                    && observed.same_series(&expected)
                    && r.matches_theorem,
                || format!("({n},{t}) seed {seed}: {r:?}"),
            )?;
            runs += 1;
        }
    }
    Ok(format!("{runs} instances"))
}

fn proof_decomposition() -> Outcome {
    let mut coeffs = 0;
    for n in 1..=6i64 {
        for t in 1..=5i64 {
            let s = shape(n, t);
            let factor = &one_minus_z_pow(s.t()) * &hn_polynomial(s);
            let hn = hn_numerator_from_formula(s);
            for big_i in 0..n + t {
                let observed = factor.coeff(big_i as usize) - hn.coeff(big_i as usize);
                let predicted = if big_i <= n {
                    let mut r = unit_series_residual(n, t, big_i).map_err(|e| e.to_string())?;
                    if (n + 1) / 2 <= big_i {
                        r -= convolution_residual(n, t, big_i).map_err(|e| e.to_string())?;
                    }
                    r
                } else {
                    let q = q_value(&QArgs::new(n - 1, t, big_i, 0));
                    if (big_i + n + 1) % 2 == 0 {
                        q
                    } else {
                        -q
                    }
                };
                ensure(observed == predicted, || {
                    format!("n={n} t={t} I={big_i}: coefficient residual {observed}, decomposition {predicted}")
                })?;
                ensure(observed.is_zero(), || {
                    format!("n={n} t={t} I={big_i}: residual {observed}")
                })?;
                coeffs += 1;
            }
        }
    }
    Ok(format!("{coeffs} coefficients"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "factorization identity",
            factorization,
            Duration::from_secs(5),
        ),
        (
            "resolution consistency",
            resolution_consistency,
            Duration::from_secs(5),
        ),
        (
            "multiplicity triple agreement",
            multiplicity_triple,
            Duration::from_secs(10),
        ),
        ("identity family", identity_family, Duration::from_secs(60)),
        (
            "pfaffian soundness",
            pfaffian_soundness,
            Duration::from_secs(10),
        ),
        (
            "generator census",
            generator_census,
            Duration::from_secs(600),
        ),
        (
            "oracle reproduction",
            oracle_reproduction,
            Duration::from_secs(600),
        ),
        (
            "proof decomposition equivalence",
            proof_decomposition,
            Duration::from_secs(600),
        ),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let elapsed = started.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= *limit {
                Ok(detail)
            } else {
                Err(format!("took {elapsed:?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(detail) => println!(
                "PASS  {}. {name}: {detail} ({:.3} s)",
                i + 1,
                elapsed.as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "FAIL  {}. {name}: {why} ({:.3} s)",
                    i + 1,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
