//! Spectral action `Tr f(D/Λ)` by direct summation, compared with the
//! asymptotic closed form `(Λ³·M2 − Λ·M0/4)/|Γ|`.
//!
//! Fourier convention: `f̂(x) = ∫ f(u) e^{−2πiux} du`, so `f̂(0) = M0 = ∫ f` and
//! the transform of `u²f` at zero is `M2 = ∫ u² f`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closedspec::{berger_spectrum, round_spectrum, BergerMetric, ClosedSpecError, RoundSpectrum};
use crate::groups::GroupSpec;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ActionError {
    #[error("cutoff K = {given} leaves a truncation bound of {bound:e} above {tol:e}; need K >= {required}")]
    CutoffTooSmall { given: usize, required: usize, bound: f64, tol: f64 },
    #[error("no cutoff up to {0} reaches the requested tolerance")]
    CutoffUnreachable(usize),
    #[error("invalid test function: {0}")]
    BadTestFunction(String),
    #[error("Λ must be positive and finite, got {0}")]
    BadLambda(f64),
    #[error("Λ grid must be ascending")]
    UnsortedGrid,
    #[error(transparent)]
    Closed(#[from] ClosedSpecError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    /// `exp(−(u/σ)²)`
    Gaussian { sigma: f64 },
    /// `exp(p·(1 − 1/(1 − (u/R)²)))` on `|u| < R`, zero outside. Smooth, peak 1,
    /// sharper for larger `p`.
    CompactBump { radius: f64, order: u32 },
}

/// Even, nonnegative test function with its two moments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub shape: Shape,
    pub amplitude: f64,
    pub m0: f64,
    pub m2: f64,
    /// Bound on the quadrature error of `m0` and `m2` (zero when analytic).
    pub moment_error: f64,
}

impl TestFunction {
    pub fn gaussian(sigma: f64) -> Result<Self, ActionError> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(ActionError::BadTestFunction(format!("gaussian width {sigma}")));
        }
        let m0 = sigma * PI.sqrt();
        Ok(TestFunction {
            shape: Shape::Gaussian { sigma },
            amplitude: 1.0,
            m0,
            m2: m0 * sigma * sigma / 2.0,
            moment_error: 0.0,
        })
    }

    pub fn compact_bump(radius: f64, order: u32) -> Result<Self, ActionError> {
        if !(radius.is_finite() && radius > 0.0) || order == 0 {
            return Err(ActionError::BadTestFunction(format!("bump radius {radius}, order {order}")));
        }
        let shape = Shape::CompactBump { radius, order };
        let (m0, e0) = bump_moment(radius, order, 0);
        let (m2, e2) = bump_moment(radius, order, 2);
        Ok(TestFunction { shape, amplitude: 1.0, m0, m2, moment_error: e0.max(e2) })
    }

    pub fn scaled(self, c: f64) -> Self {
        TestFunction {
            amplitude: self.amplitude * c,
            m0: self.m0 * c,
            m2: self.m2 * c,
            moment_error: self.moment_error * c.abs(),
            ..self
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.amplitude * shape_eval(self.shape, u)
    }

    /// Radius beyond which `f` vanishes, if any.
    fn support(&self) -> Option<f64> {
        match self.shape {
            Shape::Gaussian { .. } => None,
            Shape::CompactBump { radius, .. } => Some(radius),
        }
    }
}

fn shape_eval(shape: Shape, u: f64) -> f64 {
    match shape {
        Shape::Gaussian { sigma } => (-(u / sigma).powi(2)).exp(),
        Shape::CompactBump { radius, order } => {
            let x = u / radius;
            if x.abs() >= 1.0 {
                0.0
            } else {
                (f64::from(order) * (1.0 - 1.0 / (1.0 - x * x))).exp()
            }
        }
    }
}

/// `∫ u^power f(u) du` by the trapezoid rule on `[−R, R]`, doubling until two
/// successive values agree. The integrand is flat to all orders at `±R`, so
/// the rule converges faster than any power and the last difference bounds
/// the error.
fn bump_moment(radius: f64, order: u32, power: i32) -> (f64, f64) {
    let shape = Shape::CompactBump { radius, order };
    let g = |u: f64| u.powi(power) * shape_eval(shape, u);
    let mut panels = 16usize;
    let trap = |panels: usize| {
        let h = 2.0 * radius / panels as f64;
        (1..panels).map(|i| g(-radius + i as f64 * h)).sum::<f64>() * h
    };
    let mut prev = trap(panels);
    loop {
        panels *= 2;
        let next = trap(panels);
        let diff = (next - prev).abs();
        if diff <= 1e-15 * next.abs() || panels >= 1 << 22 {
            return (next, diff.max(f64::EPSILON * next.abs()));
        }
        prev = next;
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape {
            Shape::Gaussian { sigma } => write!(f, "gaussian:{sigma}")?,
            Shape::CompactBump { radius, order } => write!(f, "bump:{radius}:{order}")?,
        }
        if self.amplitude != 1.0 {
            write!(f, "*{}", self.amplitude)?;
        }
        Ok(())
    }
}

/// `gaussian:<σ>` or `bump:<R>[:<order>]` (order defaults to 1).
impl FromStr for TestFunction {
    type Err = ActionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ActionError::BadTestFunction(s.to_string());
        let mut parts = s.trim().split(':');
        let kind = parts.next().ok_or_else(bad)?.to_ascii_lowercase();
        let num = |p: Option<&str>| p.ok_or_else(bad)?.trim().parse::<f64>().map_err(|_| bad());
        let out = match kind.as_str() {
            "gaussian" | "gauss" => TestFunction::gaussian(num(parts.next())?)?,
            "bump" => {
                let radius = num(parts.next())?;
                let order = match parts.next() {
                    Some(p) => p.trim().parse::<u32>().map_err(|_| bad())?,
                    None => 1,
                };
                TestFunction::compact_bump(radius, order)?
            }
            _ => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(out)
    }
}

/// Neumaier's compensated sum.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

fn check_lambda(lambda: f64) -> Result<(), ActionError> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(ActionError::BadLambda(lambda))
    }
}

/// Bound on `Σ_{j > start} mult(j)·|f(a(j)/Λ)|` where `a` is increasing and
/// positive past `start`, `f` is decreasing on `[0, ∞)` and the term ratio is
/// eventually decreasing. Terms are summed explicitly until the ratio drops
/// below 1/2 and stays decreasing, then closed off by a geometric series.
fn tail_bound(f: &TestFunction, lambda: f64, start: usize, mult: impl Fn(usize) -> f64, a: impl Fn(usize) -> f64) -> f64 {
    let term = |j: usize| {
        let x = a(j).max(0.0) / lambda;
        mult(j) * f.eval(x).abs()
    };
    if let Some(r) = f.support() {
        // everything past the support vanishes exactly
        let mut total = 0.0;
        let mut j = start + 1;
        while a(j) / lambda < r {
            total += term(j);
            j += 1;
        }
        return total;
    }
    let mut total = 0.0;
    let mut j = start + 1;
    loop {
        let t = term(j);
        let next = term(j + 1);
        if t == 0.0 {
            return total;
        }
        let ratio = next / t;
        // the ratio of consecutive terms is nonincreasing once a(j)/Λ is past
        // the peak of u ↦ u² f(u); require both conditions before closing off
        if ratio < 0.5 && a(j) / lambda > 2.0 * shape_scale(f) {
            return total + t / (1.0 - ratio);
        }
        total += t;
        j += 1;
    }
}

fn shape_scale(f: &TestFunction) -> f64 {
    match f.shape {
        Shape::Gaussian { sigma } => sigma,
        Shape::CompactBump { radius, .. } => radius,
    }
}

fn round_level(k: usize) -> f64 {
    1.5 + k as f64
}

/// Certified bound on the round-metric contribution of levels `k > cutoff`,
/// from `m(±(3/2 + k)) ≤ (k + 1)(k + 2)` on each side.
pub fn round_truncation_bound(f: &TestFunction, lambda: f64, cutoff: usize) -> f64 {
    tail_bound(f, lambda, cutoff, |k| 2.0 * ((k + 1) * (k + 2)) as f64, round_level)
}

const CUTOFF_LIMIT: usize = 10_000_000;

/// Smallest `K` whose truncation bound is at most `tol`.
pub fn required_cutoff(f: &TestFunction, lambda: f64, tol: f64) -> Result<usize, ActionError> {
    check_lambda(lambda)?;
    let ok = |k: usize| round_truncation_bound(f, lambda, k) <= tol;
    // exponential search, then bisection; the bound is monotone in K
    let mut hi = 1usize;
    while !ok(hi) {
        hi *= 2;
        if hi > CUTOFF_LIMIT {
            return Err(ActionError::CutoffUnreachable(CUTOFF_LIMIT));
        }
    }
    let mut lo = 0usize;
    if ok(lo) {
        return Ok(0);
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `Σ m(λ) f(λ/Λ)` over a round spectrum, ascending in `|λ|`.
pub fn direct_sum(rs: &RoundSpectrum, lambda: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut acc = CompensatedSum::default();
    for k in 0..=rs.level_max {
        let u = round_level(k) / lambda;
        acc.add(rs.m_plus[k] as f64 * f(u));
        acc.add(rs.m_minus[k] as f64 * f(-u));
    }
    acc.value()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectSum {
    pub value: f64,
    pub cutoff: usize,
    pub truncation_bound: f64,
}

/// Round-metric direct sum over `|λ| ≤ 3/2 + K`. Refuses when the certified
/// truncation bound exceeds `tol`.
pub fn spectral_action_direct(
    spec: GroupSpec,
    f: &TestFunction,
    lambda: f64,
    cutoff: usize,
    tol: f64,
) -> Result<DirectSum, ActionError> {
    check_lambda(lambda)?;
    let bound = round_truncation_bound(f, lambda, cutoff);
    if bound > tol {
        let required = required_cutoff(f, lambda, tol)?;
        return Err(ActionError::CutoffTooSmall { given: cutoff, required, bound, tol });
    }
    let rs = round_spectrum(spec, cutoff);
    Ok(DirectSum { value: direct_sum(&rs, lambda, |u| f.eval(u)), cutoff, truncation_bound: bound })
}

pub fn spectral_action_closed(order: u64, f: &TestFunction, lambda: f64) -> f64 {
    (lambda.powi(3) * f.m2 - lambda * f.m0 / 4.0) / order as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionReport {
    pub lambda: f64,
    pub direct: f64,
    pub closed: f64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub cutoff: usize,
    pub truncation_bound: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub group: GroupSpec,
    pub tolerance: f64,
    pub reports: Vec<ActionReport>,
    /// `d log(abs_error) / d log Λ` between consecutive grid points; `None`
    /// when either error is already at roundoff level.
    pub log_slopes: Vec<Option<f64>>,
    /// Every slope is at most −8, or the error already sits at roundoff level.
    pub superpolynomial: bool,
}

impl Comparison {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }
}

/// Truncation is held far below the comparison tolerance (and near roundoff)
/// so that the reported error is the asymptotic remainder.
const TRUNCATION_SHARE: f64 = 1e-3;
const TRUNCATION_FLOOR: f64 = 1e-15;
const SLOPE_THRESHOLD: f64 = -8.0;

pub fn action_report(spec: GroupSpec, f: &TestFunction, lambda: f64, tol: f64) -> Result<ActionReport, ActionError> {
    check_lambda(lambda)?;
    let closed = spectral_action_closed(spec.order(), f, lambda);
    let trunc_tol = ((TRUNCATION_SHARE * tol).min(TRUNCATION_FLOOR) * closed.abs()).max(f64::MIN_POSITIVE);
    let cutoff = required_cutoff(f, lambda, trunc_tol)?;
    let direct = spectral_action_direct(spec, f, lambda, cutoff, trunc_tol)?;
    let abs_error = (direct.value - closed).abs();
    let rel_error = abs_error / closed.abs();
    Ok(ActionReport {
        lambda,
        direct: direct.value,
        closed,
        abs_error,
        rel_error,
        cutoff,
        truncation_bound: direct.truncation_bound,
        passed: rel_error <= tol,
    })
}

pub fn action_compare(spec: GroupSpec, f: &TestFunction, grid: &[f64], tol: f64) -> Result<Comparison, ActionError> {
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ActionError::UnsortedGrid);
    }
    let reports = grid.iter().map(|&l| action_report(spec, f, l, tol)).collect::<Result<Vec<_>, _>>()?;
    let at_floor = |r: &ActionReport| r.abs_error <= 1e-13 * r.closed.abs() + r.truncation_bound;
    let log_slopes: Vec<Option<f64>> = reports
        .windows(2)
        .map(|w| {
            if at_floor(&w[0]) || at_floor(&w[1]) {
                None
            } else {
                Some((w[1].abs_error.ln() - w[0].abs_error.ln()) / (w[1].lambda.ln() - w[0].lambda.ln()))
            }
        })
        .collect();
    let superpolynomial = reports
        .windows(2)
        .zip(&log_slopes)
        .all(|(w, s)| at_floor(&w[1]) || s.is_some_and(|s| s <= SLOPE_THRESHOLD));
    Ok(Comparison { group: spec, tolerance: tol, reports, log_slopes, superpolynomial })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BergerActionReport {
    pub lambda: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub direct: f64,
    pub n_max: u64,
    pub truncation_bound: f64,
}

/// Direct sum for a Berger metric, cut at level `n_max` of the closed-form
/// tables. No closed form exists for comparison.
///
/// Tail bound: at level `n` every eigenvalue has `|λ| ≥ (n + 1)·min(1, 1/T) − T/2`
/// and the level carries at most `2(n + 1)²` eigenvalues with multiplicity.
pub fn berger_action_direct(
    spec: GroupSpec,
    metric: &BergerMetric,
    f: &TestFunction,
    lambda: f64,
    tol: f64,
) -> Result<BergerActionReport, ActionError> {
    check_lambda(lambda)?;
    let t = metric.t_f64();
    let lower = move |n: usize| (n + 1) as f64 * t.recip().min(1.0) - t / 2.0;
    let mult = |n: usize| 2.0 * ((n + 1) * (n + 1)) as f64;
    let mut n_max = (metric.n_max_for(lambda) as usize).max(1);
    let bound = loop {
        let b = tail_bound(f, lambda, n_max, mult, lower);
        if b <= tol {
            break b;
        }
        n_max *= 2;
        if n_max > CUTOFF_LIMIT {
            return Err(ActionError::CutoffUnreachable(CUTOFF_LIMIT));
        }
    };
    let mut terms: Vec<(f64, u64)> = berger_spectrum(spec, metric, n_max as u64)?
        .iter()
        .map(|e| (e.eigenvalue(), e.multiplicity))
        .collect();
    terms.sort_by(|a, b| a.0.abs().total_cmp(&b.0.abs()));
    let mut acc = CompensatedSum::default();
    for (x, m) in terms {
        acc.add(m as f64 * f.eval(x / lambda));
    }
    Ok(BergerActionReport { lambda, t, direct: acc.value(), n_max: n_max as u64, truncation_bound: bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss() -> TestFunction {
        TestFunction::gaussian(1.0).unwrap()
    }

    #[test]
    fn sphere_at_lambda_four() {
        let closed = spectral_action_closed(1, &gauss(), 4.0);
        assert!((closed - 54.946).abs() < 1e-3, "{closed}");
        let expect = 64.0 * PI.sqrt() / 2.0 - PI.sqrt();
        assert!((closed - expect).abs() < 1e-12);
        let direct = spectral_action_direct(GroupSpec::Cyclic(1), &gauss(), 4.0, 120, 1e-12).unwrap();
        assert!((direct.value - closed).abs() < 1e-8 * closed);
    }

    #[test]
    fn refuses_short_cutoff() {
        let err = spectral_action_direct(GroupSpec::Cyclic(1), &gauss(), 4.0, 5, 1e-10).unwrap_err();
        match err {
            ActionError::CutoffTooSmall { required, .. } => {
                assert!(required > 5);
                assert!(spectral_action_direct(GroupSpec::Cyclic(1), &gauss(), 4.0, required, 1e-10).is_ok());
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn cutoff_scales_with_lambda() {
        let k2 = required_cutoff(&gauss(), 2.0, 1e-12).unwrap();
        let k8 = required_cutoff(&gauss(), 8.0, 1e-12).unwrap();
        assert!(k8 > 3 * k2 && k8 < 5 * k2 + 10, "{k2} {k8}");
        assert!(k8 <= 12 * 8);
    }

    #[test]
    fn truncation_bound_dominates_tail() {
        let f = gauss();
        let rs = round_spectrum(GroupSpec::Cyclic(1), 400);
        let total = direct_sum(&rs, 8.0, |u| f.eval(u));
        for k in [10usize, 20, 40, 60] {
            let part = direct_sum(&round_spectrum(GroupSpec::Cyclic(1), k), 8.0, |u| f.eval(u));
            assert!(total - part <= round_truncation_bound(&f, 8.0, k) * (1.0 + 1e-12) + 1e-9);
        }
    }

    #[test]
    fn closed_form_structure() {
        let f = gauss();
        let l = 3.0;
        let a = f.m2;
        let b = -f.m0 / 4.0;
        for spec in [GroupSpec::Cyclic(1), GroupSpec::Dicyclic(3), GroupSpec::BinaryIcosahedral] {
            let o = spec.order() as f64;
            let c1 = spectral_action_closed(spec.order(), &f, l);
            let c2 = spectral_action_closed(spec.order(), &f, 2.0 * l);
            assert!((c1 - (a * l.powi(3) + b * l) / o).abs() < 1e-12);
            assert!((c2 - 8.0 * c1 - (2.0 * l - 8.0 * l) * b / o).abs() < 1e-9);
        }
        let sphere = spectral_action_closed(1, &f, 5.0);
        assert!((spectral_action_closed(120, &f, 5.0) * 120.0 - sphere).abs() < 1e-10);
    }

    #[test]
    fn linear_in_test_function() {
        let f = gauss();
        let g = TestFunction::gaussian(0.5).unwrap();
        let rs = round_spectrum(GroupSpec::Dicyclic(2), 200);
        let lhs = direct_sum(&rs, 4.0, |u| f.eval(u) + 3.0 * g.eval(u));
        let rhs = direct_sum(&rs, 4.0, |u| f.eval(u)) + 3.0 * direct_sum(&rs, 4.0, |u| g.eval(u));
        assert!((lhs - rhs).abs() <= 1e-12 * lhs);
        let scaled = f.scaled(2.5);
        let a = action_report(GroupSpec::Cyclic(3), &f, 4.0, 1e-6).unwrap();
        let b = action_report(GroupSpec::Cyclic(3), &scaled, 4.0, 1e-6).unwrap();
        assert!((b.direct - 2.5 * a.direct).abs() < 1e-10 * b.direct);
        assert!((b.closed - 2.5 * a.closed).abs() < 1e-10 * b.closed);
    }

    #[test]
    fn cyclic_two_is_half_of_sphere() {
        let f = gauss();
        let one = action_report(GroupSpec::Cyclic(1), &f, 8.0, 1e-6).unwrap();
        let two = action_report(GroupSpec::Cyclic(2), &f, 8.0, 1e-6).unwrap();
        assert!((two.direct - one.direct / 2.0).abs() < 1e-6 * one.direct);
    }

    #[test]
    fn dicyclic_two_near_closed() {
        let r = action_report(GroupSpec::Dicyclic(2), &gauss(), 4.0, 1e-6).unwrap();
        assert!(r.rel_error < 1e-3, "{r:?}");
        assert_eq!(r.closed, spectral_action_closed(8, &gauss(), 4.0));
    }

    #[test]
    fn positive_sums() {
        for spec in [GroupSpec::Cyclic(5), GroupSpec::BinaryOctahedral] {
            for l in [0.5, 1.0, 3.0] {
                let rs = round_spectrum(spec, 100);
                assert!(direct_sum(&rs, l, |u| gauss().eval(u)) > 0.0);
            }
        }
    }

    #[test]
    fn gaussian_moments() {
        let f = TestFunction::gaussian(2.0).unwrap();
        assert!((f.m0 - 2.0 * PI.sqrt()).abs() < 1e-14);
        assert!((f.m2 - 4.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn bump_moments_converge() {
        let f = TestFunction::compact_bump(1.0, 1).unwrap();
        // reference from a much finer midpoint rule
        let n = 2_000_000;
        let h = 2.0 / n as f64;
        let (mut m0, mut m2) = (0.0, 0.0);
        for i in 0..n {
            let u = -1.0 + (i as f64 + 0.5) * h;
            m0 += f.eval(u) * h;
            m2 += u * u * f.eval(u) * h;
        }
        assert!((f.m0 - m0).abs() < 1e-9);
        assert!((f.m2 - m2).abs() < 1e-9);
        assert!(f.moment_error < 1e-12);
        assert_eq!(f.eval(1.0), 0.0);
        assert_eq!(f.eval(0.0), 1.0);
    }

    #[test]
    fn bump_truncation_is_exact() {
        let f = TestFunction::compact_bump(2.0, 2).unwrap();
        // 3/2 + K ≥ RΛ = 8 means nothing is left
        assert_eq!(round_truncation_bound(&f, 4.0, 7), 0.0);
        assert!(round_truncation_bound(&f, 4.0, 3) > 0.0);
    }

    #[test]
    fn parse_test_functions() {
        assert_eq!("gaussian:1.0".parse::<TestFunction>().unwrap(), gauss());
        let b: TestFunction = "bump:2:3".parse().unwrap();
        assert_eq!(b.shape, Shape::CompactBump { radius: 2.0, order: 3 });
        assert_eq!(b.to_string(), "bump:2:3");
        for bad in ["gaussian", "gaussian:-1", "bump:1:0", "cauchy:1", "gaussian:1:2"] {
            assert!(bad.parse::<TestFunction>().is_err(), "{bad}");
        }
    }

    #[test]
    fn grid_must_ascend() {
        assert!(matches!(
            action_compare(GroupSpec::Cyclic(1), &gauss(), &[4.0, 2.0], 1e-6),
            Err(ActionError::UnsortedGrid)
        ));
    }

    #[test]
    fn berger_round_matches_round_sum() {
        let f = gauss();
        let spec = GroupSpec::Cyclic(3);
        let b = berger_action_direct(spec, &BergerMetric::round(), &f, 4.0, 1e-12).unwrap();
        let r = action_report(spec, &f, 4.0, 1e-9).unwrap();
        assert!((b.direct - r.direct).abs() < 1e-9 * r.direct, "{} {}", b.direct, r.direct);
        let squashed = berger_action_direct(spec, &BergerMetric::parse("1/2").unwrap(), &f, 4.0, 1e-12).unwrap();
        assert!(squashed.direct > 0.0 && squashed.truncation_bound <= 1e-12);
    }
}
