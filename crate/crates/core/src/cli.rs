//! Command-line interface.
//!
//! Exit codes: 0 success, 1 counterexample or oracle mismatch, 2 invalid
//! arguments or input, 3 resource budget exceeded, 4 no generic instance.
//!
//! Budgets can be raised or lowered through environment variables:
//! `ALMALT_MAX_CASES`, `ALMALT_MAX_MONOMIALS`, `ALMALT_MAX_REDUCTIONS`,
//! `ALMALT_MAX_HILBERT_NODES`, `ALMALT_MAX_MATRIX_SIZE` and
//! `ALMALT_MAX_AMBIENT_DIM`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::oracle::{
    oracle_check_with_budget, OracleBudget, OracleReport, DEFAULT_MAX_REDRAWS,
};
use crate::pfaffian::{
    ideal_generators, parse_matrix_json, random_generic_instance, AlmostAlternatingMatrix,
};
use crate::series::{ProblemShape, SeriesReport, DEFAULT_MONOMIAL_BUDGET};
use crate::verify::{
    identity_suite, resolution_suite, series_suite, IdentityGrid, SeriesGrid, SuiteReport,
    DEFAULT_MAX_CASES,
};

/// Seed used whenever `--seed` is omitted.
pub const DEFAULT_SEED: u64 = 20_240_601;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_GENERICITY: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "almalt",
    version,
    about = "Hilbert series and Pfaffian ideals of almost alternating matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// h-vector, multiplicity, numerator and Betti table of R/J(rho).
    Hilbert {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        /// Also report the series for a polynomial ring in this many variables.
        #[arg(long)]
        dim: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// Pfaffian generators of J(rho) for a matrix file or a seeded random instance.
    Pfaffians {
        #[arg(long, conflicts_with_all = ["n", "t", "dim", "seed"])]
        matrix: Option<PathBuf>,
        #[arg(long, required_unless_present = "matrix", allow_hyphen_values = true)]
        n: Option<i64>,
        #[arg(long, required_unless_present = "matrix", allow_hyphen_values = true)]
        t: Option<i64>,
        /// Number of variables; defaults to t + 2.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Exhaustive sweeps of the identity family and the closed forms.
    Verify(VerifyArgs),
    /// Groebner-basis check of the closed form on a random instance.
    Oracle {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        /// Number of variables; defaults to t + 2.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_MAX_REDRAWS)]
        max_redraws: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Series,
    Resolution,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, allow_hyphen_values = true)]
    pub w_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub w_max: Option<i64>,
    /// Largest `t` in the Q grid.
    #[arg(long)]
    pub q_t_max: Option<i64>,
    #[arg(long)]
    pub i_max: Option<i64>,
    #[arg(long)]
    pub alpha_max: Option<i64>,
    /// Largest `n` for shape sweeps.
    #[arg(long)]
    pub max_n: Option<i64>,
    /// Largest `t` for shape sweeps.
    #[arg(long)]
    pub max_t: Option<i64>,
    /// Seed for the generic instances of the generator census.
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub out: Output,
}

/// Budgets after applying environment overrides.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub max_cases: u64,
    pub max_monomials: u64,
    pub oracle: OracleBudget,
}

fn env_override<T: std::str::FromStr>(name: &str, default: T) -> Result<T> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::OutOfRange(format!("{name}={v:?} is not a valid limit"))),
        Err(_) => Ok(default),
    }
}

impl Budgets {
    pub fn from_env() -> Result<Self> {
        let d = OracleBudget::default();
        Ok(Budgets {
            max_cases: env_override("ALMALT_MAX_CASES", DEFAULT_MAX_CASES)?,
            max_monomials: env_override("ALMALT_MAX_MONOMIALS", DEFAULT_MONOMIAL_BUDGET)?,
            oracle: OracleBudget {
                max_matrix_size: env_override("ALMALT_MAX_MATRIX_SIZE", d.max_matrix_size)?,
                max_ambient_dim: env_override("ALMALT_MAX_AMBIENT_DIM", d.max_ambient_dim)?,
                max_reductions: env_override("ALMALT_MAX_REDUCTIONS", d.max_reductions)?,
                max_hilbert_nodes: env_override("ALMALT_MAX_HILBERT_NODES", d.max_hilbert_nodes)?,
            },
        })
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Budget(_) => EXIT_BUDGET,
        Error::Genericity { .. } => EXIT_GENERICITY,
        _ => EXIT_INVALID,
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(out: &Output, body: String) -> Result<()> {
    let body = if body.ends_with('\n') {
        body
    } else {
        body + "\n"
    };
    match &out.output {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

pub fn execute(command: Command) -> Result<i32> {
    let budgets = Budgets::from_env()?;
    match command {
        Command::Hilbert { n, t, dim, out } => {
            let report = SeriesReport::compute(ProblemShape::new(n, t)?, dim);
            let body = match out.format {
                Format::Json => to_json(&report)?,
                Format::Text => render_series(&report),
            };
            emit(&out, body)?;
            Ok(EXIT_OK)
        }
        Command::Pfaffians {
            matrix,
            n,
            t,
            dim,
            seed,
            out,
        } => {
            let rho = match matrix {
                Some(path) => parse_matrix_json(&std::fs::read_to_string(path)?)?,
                None => {
                    let shape = ProblemShape::new(n.unwrap_or(0), t.unwrap_or(0))?;
                    let d = dim.unwrap_or(shape.t() as usize + 2);
                    random_generic_instance(shape, d, seed.unwrap_or(DEFAULT_SEED))?
                }
            };
            let listing = GeneratorListing::new(&rho)?;
            let body = match out.format {
                Format::Json => to_json(&listing)?,
                Format::Text => listing.render(),
            };
            emit(&out, body)?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => run_verify(args, &budgets),
        Command::Oracle {
            n,
            t,
            dim,
            seed,
            max_redraws,
            out,
        } => {
            let shape = ProblemShape::new(n, t)?;
            let d = dim.unwrap_or(shape.t() as usize + 2);
            let report = oracle_check_with_budget(
                shape,
                d,
                seed.unwrap_or(DEFAULT_SEED),
                max_redraws,
                &budgets.oracle,
            )?;
            let body = match out.format {
                Format::Json => to_json(&report)?,
                Format::Text => render_oracle(&report),
            };
            emit(&out, body)?;
            Ok(if report.matches_theorem {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            })
        }
    }
}

fn run_verify(args: VerifyArgs, budgets: &Budgets) -> Result<i32> {
    let mut ig = IdentityGrid {
        max_cases: budgets.max_cases,
        ..IdentityGrid::default()
    };
    if let Some(v) = args.w_min {
        ig.w = v..=*ig.w.end();
    }
    if let Some(v) = args.w_max {
        ig.w = *ig.w.start()..=v;
    }
    if let Some(v) = args.q_t_max {
        ig.t = 0..=v;
    }
    if let Some(v) = args.i_max {
        ig.big_i = 1..=v;
    }
    if let Some(v) = args.alpha_max {
        ig.alpha = 0..=v;
    }
    let mut sg = SeriesGrid {
        max_cases: budgets.max_cases,
        monomial_budget: budgets.max_monomials,
        ..SeriesGrid::default()
    };
    if let Some(v) = args.max_n {
        sg.max_n = v;
        sg.decomposition_max_n = sg.decomposition_max_n.min(v);
        sg.census_max_n = sg.census_max_n.min(v);
    }
    if let Some(v) = args.max_t {
        sg.max_t = v;
        sg.multiplicity_max_t = sg.multiplicity_max_t.min(v);
        sg.decomposition_max_t = sg.decomposition_max_t.min(v);
        sg.census_max_t = sg.census_max_t.min(v);
    }
    if let Some(s) = args.seed {
        sg.seed = s;
    }
    if sg.max_n < 1 || sg.max_t < 1 {
        return Err(Error::OutOfRange(
            "--max-n and --max-t must be positive".into(),
        ));
    }

    let started = Instant::now();
    let report = match args.suite {
        Suite::Identities => identity_suite(&ig)?,
        Suite::Series => series_suite(&sg)?,
        Suite::Resolution => resolution_suite(&sg)?,
        Suite::All => SuiteReport::merge(
            "all",
            vec![
                identity_suite(&ig)?,
                series_suite(&sg)?,
                resolution_suite(&sg)?,
            ],
        ),
    };
    let elapsed = started.elapsed().as_secs_f64();
    let body = match args.out.format {
        // wall time stays out of the JSON so identical runs are byte-identical
        Format::Json => to_json(&report)?,
        Format::Text => render_suite(&report) + &format!("wall time: {elapsed:.3} s\n"),
    };
    emit(&args.out, body)?;
    eprintln!(
        "verify {}: {} cases, {} ({elapsed:.3} s)",
        report.suite,
        report.total_cases,
        if report.passed { "pass" } else { "FAIL" }
    );
    for c in report.checks.iter().filter(|c| !c.passed()) {
        if let Some(ce) = &c.first_counterexample {
            eprintln!(
                "counterexample in {}: {:?} = {:?}, residual {}",
                c.name, c.params, ce.args, ce.residual
            );
        }
    }
    Ok(if report.passed {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    /// 1-based columns of `T` beyond `X`.
    pub columns: Vec<usize>,
    pub degree: u32,
    pub polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorListing {
    pub n: u32,
    pub t: u32,
    pub vars: Vec<String>,
    pub generators: Vec<GeneratorEntry>,
    /// Degree to number of generators of that degree.
    pub degree_counts: BTreeMap<u32, usize>,
}

impl GeneratorListing {
    pub fn new(rho: &AlmostAlternatingMatrix) -> Result<Self> {
        let gens = ideal_generators(rho)?;
        let names = rho.var_names();
        let mut degree_counts = BTreeMap::new();
        for g in &gens.gens {
            *degree_counts.entry(g.degree).or_insert(0) += 1;
        }
        Ok(GeneratorListing {
            n: rho.shape().n(),
            t: rho.shape().t(),
            vars: names.to_vec(),
            generators: gens
                .gens
                .iter()
                .map(|g| GeneratorEntry {
                    columns: g.column_subset.clone(),
                    degree: g.degree,
                    polynomial: g.pfaffian.display_with(names).to_string(),
                })
                .collect(),
            degree_counts,
        })
    }

    fn render(&self) -> String {
        let mut s = String::new();
        for g in &self.generators {
            let _ = writeln!(
                s,
                "S = {:?}  degree {}  {}",
                g.columns, g.degree, g.polynomial
            );
        }
        let counts: Vec<String> = self
            .degree_counts
            .iter()
            .map(|(d, k)| format!("{k} in degree {d}"))
            .collect();
        let _ = writeln!(
            s,
            "{} generators: {}",
            self.generators.len(),
            counts.join(", ")
        );
        s
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn render_series(r: &SeriesReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n = {}, t = {}", r.n, r.t);
    let _ = writeln!(s, "h-vector: [{}]", join(&r.hn));
    let _ = writeln!(s, "multiplicity: {}", r.multiplicity);
    let _ = writeln!(
        s,
        "HN(z) = {}",
        crate::IntPolynomial::new(r.hn_numerator.clone())
    );
    let _ = writeln!(s, "Betti table (N: mult (x-twist, y-twist)):");
    for row in &r.betti.rows {
        let cells: Vec<String> = row
            .summands
            .iter()
            .map(|c| format!("{} ({}, {})", c.multiplicity, c.x_twist, c.y_twist))
            .collect();
        let _ = writeln!(s, "  {}: {}", row.homological_degree, cells.join(", "));
    }
    if let Some(hs) = &r.hilbert_series {
        let _ = writeln!(
            s,
            "HS(z) = ({}) / (1 - z)^{}",
            crate::IntPolynomial::new(hs.numerator.clone()),
            hs.denom_power
        );
    }
    s
}

fn render_oracle(r: &OracleReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "shape n = {}, t = {}, ambient dimension {}",
        r.n, r.t, r.ambient_dim
    );
    let _ = writeln!(
        s,
        "seed {} (accepted {}, {} redraws)",
        r.seed, r.accepted_seed, r.redraws
    );
    let _ = writeln!(s, "generic: {}, codim: {}", r.generic, r.codim);
    let _ = writeln!(s, "Groebner numerator:    {}", r.hilbert_numerator());
    let _ = writeln!(
        s,
        "closed-form numerator: {}",
        crate::IntPolynomial::new(r.expected_numerator.clone())
    );
    let _ = writeln!(
        s,
        "{}",
        if r.matches_theorem {
            "match"
        } else {
            "MISMATCH"
        }
    );
    s
}

fn render_suite(r: &SuiteReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let status = match (c.judged, c.passed()) {
            (false, _) => "observed",
            (true, true) => "pass",
            (true, false) => "FAIL",
        };
        let _ = write!(s, "{:<34} {:>8} cases  {:<8}", c.name, c.cases, status);
        if c.nonzero > 0 {
            let _ = write!(s, " {} nonzero", c.nonzero);
        }
        if let Some(ce) = &c.first_counterexample {
            let _ = write!(
                s,
                "  first at {:?} = {:?}: {}",
                c.params, ce.args, ce.residual
            );
        }
        s.push('\n');
    }
    let _ = writeln!(
        s,
        "suite {}: {} cases, {}",
        r.suite,
        r.total_cases,
        if r.passed { "pass" } else { "FAIL" }
    );
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_verify_flags() {
        let cli = Cli::try_parse_from([
            "almalt", "verify", "--suite", "series", "--max-n", "10", "--max-t", "8",
        ])
        .unwrap();
        match cli.command {
            Command::Verify(v) => {
                assert_eq!(v.suite, Suite::Series);
                assert_eq!(v.max_n, Some(10));
                assert_eq!(v.out.format, Format::Json);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_shape_is_a_usage_error() {
        assert_eq!(
            run(["almalt", "hilbert", "--n", "-1", "--t", "2"]),
            EXIT_INVALID
        );
        assert_eq!(
            run(["almalt", "hilbert", "--n", "0", "--t", "2"]),
            EXIT_INVALID
        );
        assert_eq!(run(["almalt", "bogus"]), EXIT_INVALID);
    }

    #[test]
    fn exit_codes_by_error() {
        assert_eq!(exit_code(&Error::Budget("x".into())), EXIT_BUDGET);
        assert_eq!(
            exit_code(&Error::Genericity {
                attempts: 1,
                best_codim: 0,
                needed: 1
            }),
            EXIT_GENERICITY
        );
        assert_eq!(exit_code(&Error::OddSize(3)), EXIT_INVALID);
    }

    #[test]
    fn text_rendering() {
        let r = SeriesReport::compute(ProblemShape::new(3, 3).unwrap(), Some(5));
        let text = render_series(&r);
        assert!(text.contains("h-vector: [1, 3, 3]"));
        assert!(text.contains("multiplicity: 7"));
        assert!(text.contains("/ (1 - z)^5"));
    }
}
