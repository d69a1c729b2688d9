//! Command-line front end: argument parsing, output formatting and the
//! `verify` check suite. `run` returns the process exit code.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use spaceform::action::{action_compare, berger_action_direct, TestFunction};
use spaceform::closedspec::{berger_spectrum, merge_spectrum, round_spectrum, BergerMetric, SpectrumEntry};
use spaceform::exactmath::Rational;
use spaceform::genfun::{genfun_coeffs, Sign};
use spaceform::groups::{enumerate, verify_group_axioms, GroupSpec};
use spaceform::invariantdirac::{compare_with_closed, oracle_spectrum};
use spaceform::multpoly::{
    density_weights, evaluate_family, fit_spec, negative_closure_mismatch, poly_sum_check,
    round_polynomials, Quadratic, Side,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Compute(String),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            _ => EXIT_FAIL,
        }
    }
}

fn compute<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "spaceform", version, about = "Dirac spectra and spectral action of spherical space forms S³/Γ")]
pub struct Cli {
    /// Worker threads (default: all cores; 1 gives bit-identical output)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// `round` or `berger:<T>` (a bare number is also accepted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricArg(pub BergerMetric);

fn parse_metric(s: &str) -> Result<MetricArg, String> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("round") {
        return Ok(MetricArg(BergerMetric::round()));
    }
    let t = s.strip_prefix("berger:").unwrap_or(s);
    BergerMetric::parse(t).map(MetricArg).map_err(|e| e.to_string())
}

fn parse_group(s: &str) -> Result<GroupSpec, String> {
    s.parse().map_err(|e: spaceform::groups::GroupError| e.to_string())
}

fn parse_test_fn(s: &str) -> Result<TestFunction, String> {
    s.parse().map_err(|e: spaceform::action::ActionError| e.to_string())
}

/// Comma-separated Λ values.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaGrid(pub Vec<f64>);

fn parse_lambdas(s: &str) -> Result<LambdaGrid, String> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| format!("bad Λ value {x:?}")))
        .collect::<Result<Vec<_>, _>>()
        .map(LambdaGrid)
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.parse().map_err(|_| format!("sign must be plus or minus, got {s:?}"))
}

/// `all` or a single group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSelection {
    All,
    One(GroupSpec),
}

fn parse_selection(s: &str) -> Result<GroupSelection, String> {
    if s.eq_ignore_ascii_case("all") {
        Ok(GroupSelection::All)
    } else {
        parse_group(s).map(GroupSelection::One)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form spectrum (Berger rows for cyclic/dicyclic groups, round levels otherwise)
    Spectrum(SpectrumArgs),
    /// Numerical eigenvalues of the Dirac operator on invariant blocks
    Oracle(OracleArgs),
    /// Round-metric multiplicities from the generating function
    Genfun(GenfunArgs),
    /// Multiplicity polynomials fitted to the round spectrum
    Polys(PolysArgs),
    /// Spectral action: direct sum against the closed form
    Action(ActionArgs),
    /// Run the cross-check suite; exit 0 iff every check passes
    Verify(VerifyArgs),
    /// Group utilities
    Groups {
        #[command(subcommand)]
        command: GroupsCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupsCommand {
    /// Print every element as JSON
    Dump {
        #[arg(long, value_parser = parse_group)]
        group: GroupSpec,
    },
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_parser = parse_group)]
    pub group: GroupSpec,
    #[arg(long, default_value = "round", value_parser = parse_metric)]
    pub metric: MetricArg,
    /// Largest representation index n (Berger rows) or level k (round levels)
    #[arg(long, default_value_t = 20)]
    pub n_max: u64,
    /// Merge rows with equal exact eigenvalue
    #[arg(long)]
    pub merged: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_parser = parse_group)]
    pub group: GroupSpec,
    #[arg(long = "T", default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, default_value_t = 20)]
    pub n_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GenfunArgs {
    #[arg(long, value_parser = parse_group)]
    pub group: GroupSpec,
    #[arg(long, value_parser = parse_sign)]
    pub sign: Sign,
    /// Coefficients k = 0..terms−1
    #[arg(long, default_value_t = 100)]
    pub terms: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PolysArgs {
    #[arg(long, value_parser = parse_group)]
    pub group: GroupSpec,
    /// Number of levels used for the fit
    #[arg(long, default_value_t = 300)]
    pub terms: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ActionArgs {
    #[arg(long, value_parser = parse_group)]
    pub group: GroupSpec,
    #[arg(long, default_value = "round", value_parser = parse_metric)]
    pub metric: MetricArg,
    #[arg(long = "test-fn", default_value = "gaussian:1.0", value_parser = parse_test_fn)]
    pub test_fn: TestFunction,
    #[arg(long, default_value = "2,4,8", value_parser = parse_lambdas)]
    pub lambda: LambdaGrid,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = parse_selection)]
    pub group: GroupSelection,
    #[arg(long, default_value = "round", value_parser = parse_metric)]
    pub metric: MetricArg,
    /// Levels compared in the exact round-metric checks
    #[arg(long, default_value_t = 300)]
    pub terms: usize,
    /// Largest n in the oracle comparison
    #[arg(long, default_value_t = 40)]
    pub n_max: u64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    // output is buffered so a failing run never leaves partial records behind
    let mut buf = Vec::new();
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, &mut buf)),
            Err(e) => Err(CliError::Config(e.to_string())),
        },
        None => dispatch(&cli.command, &mut buf),
    };
    if let Err(e) = out.write_all(&buf).and_then(|_| out.flush()) {
        let _ = writeln!(err, "error: output: {e}");
        return EXIT_FAIL;
    }
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Spectrum(a) => spectrum(a, out),
        Command::Oracle(a) => oracle(a, out),
        Command::Genfun(a) => genfun(a, out),
        Command::Polys(a) => polys(a, out),
        Command::Action(a) => action(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Groups { command: GroupsCommand::Dump { group } } => {
            serde_json::to_writer_pretty(&mut *out, &enumerate(*group))?;
            writeln!(out)?;
            Ok(EXIT_OK)
        }
    }
}

fn write_json<S: Serialize + ?Sized>(out: &mut dyn Write, value: &S) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_csv<S: Serialize>(out: &mut dyn Write, rows: impl IntoIterator<Item = S>) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn reject_berger_exceptional(group: GroupSpec, metric: &MetricArg) -> Result<(), CliError> {
    if group.is_exceptional() && !metric.0.is_round() {
        return Err(CliError::Config(format!("{group} has no Berger spectrum; use --metric round")));
    }
    Ok(())
}

/// One CSV row of `spectrum`. `eigenvalue` is the exact value, `eigenvalue_float`
/// the shortest round-trip decimal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub branch: String,
    pub n: u64,
    pub m: Option<i64>,
    pub eigenvalue_float: f64,
    pub multiplicity: u64,
    pub eigenvalue: String,
}

impl From<&SpectrumEntry> for SpectrumRow {
    fn from(e: &SpectrumEntry) -> Self {
        SpectrumRow {
            branch: e.branch.to_string(),
            n: e.n,
            m: e.m,
            eigenvalue_float: e.eigenvalue(),
            multiplicity: e.multiplicity,
            eigenvalue: e.key().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergedRow {
    pub eigenvalue_float: f64,
    pub multiplicity: u64,
    pub eigenvalue: String,
}

/// Round-metric level row; `level` is k in `±(3/2 + k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundRow {
    pub level: usize,
    pub eigenvalue: Rational,
    pub eigenvalue_float: f64,
    pub multiplicity: u64,
}

fn spectrum(a: &SpectrumArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    reject_berger_exceptional(a.group, &a.metric)?;
    if a.group.is_exceptional() {
        let rs = round_spectrum(a.group, a.n_max as usize);
        let rows: Vec<RoundRow> = rs
            .eigenvalues()
            .into_iter()
            .map(|(lambda, multiplicity)| {
                let level = (lambda.abs() - Rational::new(3, 2)).to_u64().unwrap_or(0) as usize;
                RoundRow { level, eigenvalue_float: lambda.to_f64(), eigenvalue: lambda, multiplicity }
            })
            .collect();
        match a.format {
            Format::Csv => write_csv(out, &rows)?,
            Format::Json => write_json(out, &rows)?,
        }
        return Ok(EXIT_OK);
    }
    let entries = berger_spectrum(a.group, &a.metric.0, a.n_max).map_err(compute)?;
    if a.merged {
        let merged = merge_spectrum(&entries).map_err(compute)?;
        match a.format {
            Format::Csv => write_csv(
                out,
                merged.iter().map(|m| MergedRow {
                    eigenvalue_float: m.value,
                    multiplicity: m.multiplicity,
                    eigenvalue: m.key.to_string(),
                }),
            )?,
            Format::Json => write_json(out, &merged)?,
        }
    } else {
        match a.format {
            Format::Csv => write_csv(out, entries.iter().map(SpectrumRow::from))?,
            Format::Json => write_json(out, &entries)?,
        }
    }
    Ok(EXIT_OK)
}

fn oracle(a: &OracleArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if a.group.is_exceptional() {
        return Err(CliError::Config(format!("the oracle supports cyclic and dicyclic groups only, got {}", a.group)));
    }
    if !(a.t.is_finite() && a.t > 0.0) {
        return Err(CliError::Config(format!("--T must be positive, got {}", a.t)));
    }
    let rows = oracle_spectrum(a.group, a.t, a.n_max).map_err(compute)?;
    match a.format {
        Format::Csv => write_csv(out, &rows)?,
        Format::Json => write_json(out, &rows)?,
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenfunRow {
    pub k: usize,
    pub multiplicity: u64,
}

fn genfun(a: &GenfunArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if a.terms == 0 {
        return Err(CliError::Config("--terms must be at least 1".into()));
    }
    let coeffs = genfun_coeffs(a.group, a.sign, a.terms - 1).map_err(compute)?;
    let rows: Vec<GenfunRow> = coeffs.into_iter().enumerate().map(|(k, multiplicity)| GenfunRow { k, multiplicity }).collect();
    match a.format {
        Format::Csv => write_csv(out, &rows)?,
        Format::Json => write_json(out, &rows)?,
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyRow {
    pub residue: u64,
    pub period: u64,
    pub side: Side,
    pub c0: Rational,
    pub c1: Rational,
    pub c2: Rational,
}

fn polys(a: &PolysArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let fitted = fit_spec(a.group, a.terms).map_err(compute)?;
    match a.format {
        Format::Json => write_json(out, &fitted)?,
        Format::Csv => write_csv(
            out,
            fitted.iter().map(|p| PolyRow {
                residue: p.residue,
                period: p.period,
                side: p.side,
                c0: p.poly.c0.clone(),
                c1: p.poly.c1.clone(),
                c2: p.poly.c2.clone(),
            }),
        )?,
    }
    Ok(EXIT_OK)
}

fn action(a: &ActionArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    reject_berger_exceptional(a.group, &a.metric)?;
    if a.lambda.0.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
        return Err(CliError::Config("Λ values must be positive".into()));
    }
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(CliError::Config("--tol must be positive".into()));
    }
    if !a.metric.0.is_round() {
        let reports = a
            .lambda
            .0
            .iter()
            .map(|&l| berger_action_direct(a.group, &a.metric.0, &a.test_fn, l, a.tol))
            .collect::<Result<Vec<_>, _>>()
            .map_err(compute)?;
        match a.format {
            Format::Csv => write_csv(out, &reports)?,
            Format::Json => write_json(out, &reports)?,
        }
        return Ok(EXIT_OK);
    }
    let cmp = action_compare(a.group, &a.test_fn, &a.lambda.0, a.tol).map_err(|e| match e {
        spaceform::action::ActionError::UnsortedGrid => CliError::Config(e.to_string()),
        other => compute(other),
    })?;
    match a.format {
        Format::Csv => write_csv(out, &cmp.reports)?,
        Format::Json => write_json(out, &cmp)?,
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Exact equality held.
    Exact,
    /// Numeric check within tolerance.
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub group: GroupSpec,
    pub status: Status,
    /// Largest numeric deviation (0 for exact checks that held).
    pub worst_deviation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

pub fn default_groups() -> Vec<GroupSpec> {
    (1..=12)
        .map(GroupSpec::Cyclic)
        .chain((1..=6).map(GroupSpec::Dicyclic))
        .chain([GroupSpec::BinaryTetrahedral, GroupSpec::BinaryOctahedral, GroupSpec::BinaryIcosahedral])
        .collect()
}

fn exact_check(name: &str, group: GroupSpec, failure: Option<String>) -> CheckResult {
    CheckResult {
        name: name.into(),
        group,
        status: if failure.is_none() { Status::Exact } else { Status::Fail },
        worst_deviation: if failure.is_none() { 0.0 } else { f64::INFINITY },
        detail: failure,
    }
}

fn first_difference(a: &[u64], b: &[u64]) -> Option<String> {
    if a.len() != b.len() {
        return Some(format!("lengths {} and {}", a.len(), b.len()));
    }
    a.iter().zip(b).position(|(x, y)| x != y).map(|k| format!("first difference at k = {k}: {} vs {}", a[k], b[k]))
}

/// Every check for one group. Exact round-metric checks use levels `0..=terms`.
pub fn verify_group(group: GroupSpec, metric: &BergerMetric, terms: usize, n_max: u64, tol: f64) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    let axioms = verify_group_axioms(&enumerate(group)).err().map(|e| e.to_string());
    checks.push(exact_check("group_axioms", group, axioms));

    let rs = round_spectrum(group, terms);
    let mut gf = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        match genfun_coeffs(group, sign, terms) {
            Ok(c) => {
                checks.push(exact_check(
                    &format!("genfun_eq_closedspec_{sign}"),
                    group,
                    first_difference(&c, rs.side(sign)),
                ));
                gf.push(c);
            }
            Err(e) => checks.push(exact_check(&format!("genfun_eq_closedspec_{sign}"), group, Some(e.to_string()))),
        }
    }

    let (plus, minus) = evaluate_family(&round_polynomials(group), terms as u64);
    let as_nat = |v: Vec<Rational>| v.iter().map(|x| x.to_u64().unwrap_or(u64::MAX)).collect::<Vec<u64>>();
    checks.push(exact_check("polys_eq_closedspec_plus", group, first_difference(&as_nat(plus), &rs.m_plus)));
    checks.push(exact_check("polys_eq_closedspec_minus", group, first_difference(&as_nat(minus), &rs.m_minus)));

    let density = match fit_spec(group, terms) {
        Err(e) => Some(e.to_string()),
        Ok(fitted) => {
            let order = Rational::integer(group.order() as i64);
            let expected = Quadratic::new(Rational::new(-1, 4) / &order, Rational::zero(), Rational::one() / &order);
            [Side::Plus, Side::Minus].iter().find_map(|side| {
                let family: Vec<_> = fitted.iter().filter(|p| p.side == *side).cloned().collect();
                match poly_sum_check(&family, &density_weights(&family)) {
                    Ok(sum) if sum == expected => None,
                    Ok(sum) => Some(format!("{side:?} side sums to {sum}")),
                    Err(e) => Some(e.to_string()),
                }
            })
        }
    };
    checks.push(exact_check("density_sum", group, density));

    // the plus-side tables, continued to negative levels, give the minus side
    if group.is_exceptional() {
        let failure = match gf.get(1) {
            Some(minus) => negative_closure_mismatch(&round_polynomials(group), minus).map(|k| format!("mismatch at k = {k}")),
            None => Some("no minus-side coefficients".into()),
        };
        checks.push(exact_check("negative_closure", group, failure));
    }

    if !group.is_exceptional() {
        let name = format!("oracle_eq_closedspec_T={}", metric.t());
        checks.push(match compare_with_closed(group, metric, n_max) {
            Ok(report) => CheckResult {
                name,
                group,
                status: if report.passes(tol) { Status::Pass } else { Status::Fail },
                worst_deviation: report.max_abs_error,
                detail: (!report.mismatched_levels.is_empty())
                    .then(|| format!("multiplicities differ at n = {:?}", report.mismatched_levels)),
            },
            Err(e) => exact_check(&name, group, Some(e.to_string())),
        });
    }
    checks
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let groups = match &a.group {
        GroupSelection::All => default_groups(),
        GroupSelection::One(g) => {
            reject_berger_exceptional(*g, &a.metric)?;
            vec![*g]
        }
    };
    let metric = &a.metric.0;
    let checks: Vec<CheckResult> = groups
        .iter()
        .flat_map(|&g| {
            // exceptional groups only have the round metric
            let m = if g.is_exceptional() { BergerMetric::round() } else { metric.clone() };
            verify_group(g, &m, a.terms, a.n_max, a.tol)
        })
        .collect();
    let passed = checks.iter().all(|c| c.status != Status::Fail);
    write_json(out, &VerifyReport { passed, checks })?;
    Ok(if passed { EXIT_OK } else { EXIT_FAIL })
}
