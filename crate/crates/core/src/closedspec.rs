//! Closed-form Dirac spectra: Berger tables for cyclic and dicyclic groups,
//! round-metric tables for all five families.
//!
//! Eigenvalues are kept symbolic as `shift(T) ± √radicand(T)` with
//! `shift = a·T + b + c/T` and `radicand = p + q/T²`, so merging compares
//! exact numbers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{ExactError, Rational};
use crate::genfun::Sign;
use crate::groups::GroupSpec;
use crate::multpoly::{evaluate_family, round_polynomials};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedSpecError {
    #[error("Berger parameter must be positive, got {0}")]
    NonPositiveT(String),
    #[error("entries come from different metrics ({0} and {1})")]
    MixedMetric(String, String),
    #[error("{0} has no Berger table (only cyclic and dicyclic groups do)")]
    Unsupported(GroupSpec),
    #[error("radicand {radicand} is not positive at n = {n}, m = {m}")]
    NonPositiveRadicand { n: u64, m: i64, radicand: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Berger metric with exact parameter `T > 0`; `T = 1` is round.
///
/// Decimal strings are parsed exactly and doubles are converted exactly,
/// so symbolic keys are always available.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BergerMetric {
    t: Rational,
}

impl BergerMetric {
    pub fn new(t: Rational) -> Result<Self, ClosedSpecError> {
        if !t.is_positive() {
            return Err(ClosedSpecError::NonPositiveT(t.to_string()));
        }
        Ok(BergerMetric { t })
    }

    pub fn round() -> Self {
        BergerMetric { t: Rational::one() }
    }

    pub fn parse(s: &str) -> Result<Self, ClosedSpecError> {
        BergerMetric::new(Rational::parse(s)?)
    }

    pub fn from_f64(t: f64) -> Result<Self, ClosedSpecError> {
        let r = Rational::from_f64(t).ok_or_else(|| ClosedSpecError::NonPositiveT(t.to_string()))?;
        BergerMetric::new(r)
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    pub fn t_f64(&self) -> f64 {
        self.t.to_f64()
    }

    pub fn is_round(&self) -> bool {
        self.t == 1
    }

    pub fn exact(&self) -> bool {
        true
    }

    /// Smallest `n_max` whose table contains every eigenvalue with `|λ| ≤ lambda`.
    pub fn n_max_for(&self, lambda: f64) -> u64 {
        let t = self.t_f64();
        (lambda * t.max(1.0 / t)).ceil().max(0.0) as u64 + 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    PlusRoot,
    MinusRoot,
    LensTail,
    DicyclicPlus,
    DicyclicMinus,
    DicyclicTail,
}

impl Branch {
    fn root_sign(self) -> i64 {
        match self {
            Branch::PlusRoot => 1,
            Branch::MinusRoot => -1,
            _ => 0,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `t·T + one + inv_t/T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShiftTerm {
    pub t: Rational,
    pub one: Rational,
    pub inv_t: Rational,
}

impl ShiftTerm {
    pub fn eval(&self, t: &Rational) -> Rational {
        &(&self.t * t) + &self.one + &self.inv_t / t
    }
}

/// `one + inv_t2/T²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Radicand {
    pub one: Rational,
    pub inv_t2: Rational,
}

impl Radicand {
    pub fn zero() -> Self {
        Radicand { one: Rational::zero(), inv_t2: Rational::zero() }
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        &self.one + &self.inv_t2 / (t * t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub branch: Branch,
    pub n: u64,
    pub m: Option<i64>,
    pub shift: ShiftTerm,
    pub radicand: Radicand,
    pub multiplicity: u64,
    #[serde(rename = "T")]
    pub t: Rational,
}

/// Exact eigenvalue `rational + coeff·√radicand` with square-free `radicand`
/// (`radicand = 1` and `coeff = 0` for rational values).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EigenKey {
    pub rational: Rational,
    pub coeff: Rational,
    #[serde(with = "bigint_string")]
    pub radicand: BigInt,
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl EigenKey {
    pub fn rational(r: Rational) -> Self {
        EigenKey { rational: r, coeff: Rational::zero(), radicand: BigInt::one() }
    }

    pub fn to_f64(&self) -> f64 {
        let root = self.radicand.to_string().parse::<f64>().unwrap_or(f64::NAN).sqrt();
        self.rational.to_f64() + self.coeff.to_f64() * root
    }
}

impl fmt::Display for EigenKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            write!(f, "{}", self.rational)
        } else {
            write!(f, "{} + {}·√{}", self.rational, self.coeff, self.radicand)
        }
    }
}

/// `n = a²·f`, with the square part stripped over small primes and a final
/// perfect-square test.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut a = BigInt::one();
    let mut rest = n.clone();
    let root = rest.sqrt();
    if &root * &root == rest {
        return (root, BigInt::one());
    }
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(100_000u32);
    while &p * &p <= rest && p <= limit {
        let p2 = &p * &p;
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            a *= &p;
        }
        p += 1u32;
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        a *= root;
        rest = BigInt::one();
    }
    (a, rest)
}

/// `√r = coeff·√f` with `f` square-free (up to the limits of `split_square`).
fn sqrt_rational(r: &Rational) -> (Rational, BigInt) {
    // √(p/q) = √(p·q)/q
    let pq = r.numer() * r.denom();
    let (a, f) = split_square(&pq);
    let coeff = Rational::from_bigints(a, r.denom().clone()).expect("nonzero denominator");
    (coeff, f)
}

impl SpectrumEntry {
    pub fn key(&self) -> EigenKey {
        let shift = self.shift.eval(&self.t);
        let sign = self.branch.root_sign();
        if sign == 0 {
            return EigenKey::rational(shift);
        }
        let r = self.radicand.eval(&self.t);
        let (coeff, f) = sqrt_rational(&r);
        let coeff = coeff * sign;
        if f.is_one() {
            EigenKey::rational(shift + coeff)
        } else {
            EigenKey { rational: shift, coeff, radicand: f }
        }
    }

    pub fn eigenvalue(&self) -> f64 {
        let t = self.t.to_f64();
        let shift = self.shift.t.to_f64() * t + self.shift.one.to_f64() + self.shift.inv_t.to_f64() / t;
        let r = self.radicand.one.to_f64() + self.radicand.inv_t2.to_f64() / (t * t);
        shift + self.branch.root_sign() as f64 * r.max(0.0).sqrt()
    }
}

fn half_t() -> Rational {
    Rational::new(-1, 2)
}

fn pair_entries(
    n: u64,
    m: i64,
    scale: i64,
    metric: &BergerMetric,
) -> Result<[SpectrumEntry; 2], ClosedSpecError> {
    // (1+n)² + (m·scale)²(1/T² − 1)
    let mn2 = Rational::integer((m * scale) * (m * scale));
    let radicand = Radicand { one: Rational::integer(((n + 1) * (n + 1)) as i64) - &mn2, inv_t2: mn2 };
    let value = radicand.eval(metric.t());
    if !value.is_positive() {
        return Err(ClosedSpecError::NonPositiveRadicand { n, m, radicand: value.to_string() });
    }
    let make = |branch| SpectrumEntry {
        branch,
        n,
        m: Some(m),
        shift: ShiftTerm { t: half_t(), one: Rational::zero(), inv_t: Rational::zero() },
        radicand: radicand.clone(),
        multiplicity: n + 1,
        t: metric.t().clone(),
    };
    Ok([make(Branch::PlusRoot), make(Branch::MinusRoot)])
}

fn linear_entry(branch: Branch, n: u64, m: Option<i64>, one: i64, inv_t: i64, mult: u64, metric: &BergerMetric) -> SpectrumEntry {
    SpectrumEntry {
        branch,
        n,
        m,
        shift: ShiftTerm { t: half_t(), one: Rational::integer(one), inv_t: Rational::integer(inv_t) },
        radicand: Radicand::zero(),
        multiplicity: mult,
        t: metric.t().clone(),
    }
}

/// Spectrum of the lens space `S³/ℤ_N`, all entries with `n ≤ n_max`.
pub fn lens_berger_spectrum(
    big_n: u32,
    metric: &BergerMetric,
    n_max: u64,
) -> Result<Vec<SpectrumEntry>, ClosedSpecError> {
    let nn = i64::from(big_n);
    let mut out = Vec::new();
    for n in 0..=n_max {
        let ni = n as i64;
        // 1 − n ≤ mN ≤ n
        let lo = (1 - ni).div_euclid(nn) + i64::from((1 - ni).rem_euclid(nn) != 0);
        let hi = ni.div_euclid(nn);
        for m in lo..=hi {
            let allowed = if nn % 2 == 0 { n % 2 == 1 } else { (n % 2 == 1) == (m % 2 == 0) };
            if allowed {
                out.extend(pair_entries(n, m, nn, metric)?);
            }
        }
        if (n + 1) % u64::from(big_n) == 0 {
            let m = ((n + 1) / u64::from(big_n)) as i64;
            out.push(linear_entry(Branch::LensTail, n, Some(m), 0, -m * nn, (2 * m * nn) as u64, metric));
        }
    }
    Ok(out)
}

/// Spectrum of the dicyclic space of order `4N`, all entries with `n ≤ n_max`.
pub fn dicyclic_berger_spectrum(
    big_n: u32,
    metric: &BergerMetric,
    n_max: u64,
) -> Result<Vec<SpectrumEntry>, ClosedSpecError> {
    let two_n = 2 * i64::from(big_n);
    let mut out = Vec::new();
    for n in (1..=n_max).step_by(2) {
        let ni = n as i64;
        // 1 − n ≤ 2mN < 0
        let lo = (1 - ni).div_euclid(two_n) + i64::from((1 - ni).rem_euclid(two_n) != 0);
        for m in lo..0 {
            out.extend(pair_entries(n, m, two_n, metric)?);
        }
        if n % 4 == 1 {
            out.push(linear_entry(Branch::DicyclicPlus, n, None, ni + 1, 0, n + 1, metric));
        } else {
            out.push(linear_entry(Branch::DicyclicMinus, n, None, -(ni + 1), 0, n + 1, metric));
        }
        if (ni + 1) % two_n == 0 {
            let m = (ni + 1) / two_n;
            out.push(linear_entry(Branch::DicyclicTail, n, Some(m), 0, -m * two_n, (m * two_n) as u64, metric));
        }
    }
    Ok(out)
}

pub fn berger_spectrum(
    spec: GroupSpec,
    metric: &BergerMetric,
    n_max: u64,
) -> Result<Vec<SpectrumEntry>, ClosedSpecError> {
    match spec {
        GroupSpec::Cyclic(n) => lens_berger_spectrum(n, metric, n_max),
        GroupSpec::Dicyclic(n) => dicyclic_berger_spectrum(n, metric, n_max),
        _ => Err(ClosedSpecError::Unsupported(spec)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergedEigenvalue {
    pub key: EigenKey,
    pub value: f64,
    pub multiplicity: u64,
}

/// Sums multiplicities of entries with equal exact eigenvalue; ascending by value.
pub fn merge_spectrum(entries: &[SpectrumEntry]) -> Result<Vec<MergedEigenvalue>, ClosedSpecError> {
    if let Some(first) = entries.first() {
        if let Some(other) = entries.iter().find(|e| e.t != first.t) {
            return Err(ClosedSpecError::MixedMetric(first.t.to_string(), other.t.to_string()));
        }
    }
    let mut acc: BTreeMap<EigenKey, u64> = BTreeMap::new();
    for e in entries {
        *acc.entry(e.key()).or_default() += e.multiplicity;
    }
    let mut out: Vec<MergedEigenvalue> = acc
        .into_iter()
        .map(|(key, multiplicity)| MergedEigenvalue { value: key.to_f64(), key, multiplicity })
        .collect();
    out.sort_by(|a, b| a.value.total_cmp(&b.value).then_with(|| a.key.cmp(&b.key)));
    Ok(out)
}

/// Round-metric multiplicities of `±(3/2 + k)`, `k ≤ level_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundSpectrum {
    pub m_plus: Vec<u64>,
    pub m_minus: Vec<u64>,
    pub level_max: usize,
}

impl RoundSpectrum {
    fn zeros(level_max: usize) -> Self {
        RoundSpectrum { m_plus: vec![0; level_max + 1], m_minus: vec![0; level_max + 1], level_max }
    }

    pub fn side(&self, sign: Sign) -> &[u64] {
        match sign {
            Sign::Plus => &self.m_plus,
            Sign::Minus => &self.m_minus,
        }
    }

    /// Adds `mult` at `λ = 1/2 + n` (plus level `n − 1`).
    fn add_upper(&mut self, n: u64, mult: u64) {
        if n >= 1 && (n - 1) as usize <= self.level_max {
            self.m_plus[(n - 1) as usize] += mult;
        }
    }

    /// Adds `mult` at `λ = −3/2 − n` (minus level `n`).
    fn add_lower(&mut self, n: u64, mult: u64) {
        if n as usize <= self.level_max {
            self.m_minus[n as usize] += mult;
        }
    }

    /// Adds `mult` at `λ = −1/2 − j` (minus level `j − 1`).
    fn add_tail(&mut self, j: u64, mult: u64) {
        if j >= 1 && (j - 1) as usize <= self.level_max {
            self.m_minus[(j - 1) as usize] += mult;
        }
    }

    /// `(λ, multiplicity)` pairs with nonzero multiplicity, ascending in `|λ|`.
    pub fn eigenvalues(&self) -> Vec<(Rational, u64)> {
        let mut out = Vec::new();
        for k in 0..=self.level_max {
            let u = Rational::new(3, 2) + Rational::integer(k as i64);
            if self.m_plus[k] > 0 {
                out.push((u.clone(), self.m_plus[k]));
            }
            if self.m_minus[k] > 0 {
                out.push((-u, self.m_minus[k]));
            }
        }
        out
    }
}

fn lens_round(big_n: u64, level_max: usize) -> RoundSpectrum {
    let mut rs = RoundSpectrum::zeros(level_max);
    let limit = level_max as u64 + 2;
    let both = |rs: &mut RoundSpectrum, n: u64, mult: u64| {
        rs.add_upper(n, mult);
        rs.add_lower(n, mult);
    };
    if big_n.is_multiple_of(2) {
        for k in 0..=limit / big_n {
            for s in 0..big_n / 2 {
                let n = k * big_n + 2 * s + 1;
                both(&mut rs, n, (2 * k + 1) * (k * big_n + 2 * s + 2));
            }
        }
    } else {
        let b_odd = if big_n >= 3 { (big_n - 3) / 2 + 1 } else { 0 };
        let b_all = (big_n - 1) / 2 + 1;
        for a in 0..=limit / (2 * big_n) {
            for b in 0..b_odd {
                both(&mut rs, 2 * a * big_n + 2 * b + 1, (2 * a + 1) * (2 * a * big_n + 2 * b + 2));
                let n = (2 * a + 1) * big_n + 2 * b + 1;
                both(&mut rs, n, (2 * a + 2) * (n + 1));
            }
            for b in 0..b_all {
                let n = (2 * a + 1) * big_n + 2 * b;
                both(&mut rs, n, (2 * a + 1) * (n + 1));
                both(&mut rs, 2 * a * big_n + 2 * b, 2 * a * (2 * a * big_n + 2 * b + 1));
            }
        }
    }
    for m in 1..=limit / big_n + 1 {
        rs.add_tail(m * big_n, 2 * m * big_n);
    }
    rs
}

fn dicyclic_round(big_n: u64, level_max: usize) -> RoundSpectrum {
    let mut rs = RoundSpectrum::zeros(level_max);
    let limit = level_max as u64 + 2;
    for k in 0..=limit / (2 * big_n) {
        for s in 0..big_n {
            let n = 2 * k * big_n + 2 * s + 1;
            let mult = (n + 1) * k;
            rs.add_upper(n, mult);
            rs.add_lower(n, mult);
        }
    }
    for n in 0..=limit {
        match n % 4 {
            1 => rs.add_upper(n, n + 1),
            3 => rs.add_lower(n, n + 1),
            _ => {}
        }
    }
    for m in 1..=limit / (2 * big_n) + 1 {
        rs.add_tail(2 * m * big_n, 2 * m * big_n);
    }
    rs
}

fn from_polynomials(spec: GroupSpec, level_max: usize) -> RoundSpectrum {
    let (plus, minus) = evaluate_family(&round_polynomials(spec), level_max as u64);
    let nat = |v: Vec<Rational>| -> Vec<u64> {
        v.iter().map(|x| x.to_u64().expect("polynomial tables give naturals")).collect()
    };
    RoundSpectrum { m_plus: nat(plus), m_minus: nat(minus), level_max }
}

/// Round-metric spectrum from the closed-form rows (cyclic, dicyclic) or the
/// printed multiplicity polynomials continued to both sides (2T, 2O, 2I).
pub fn round_spectrum(spec: GroupSpec, level_max: usize) -> RoundSpectrum {
    match spec {
        GroupSpec::Cyclic(n) => lens_round(u64::from(n), level_max),
        GroupSpec::Dicyclic(n) => dicyclic_round(u64::from(n), level_max),
        _ => from_polynomials(spec, level_max),
    }
}

/// Number of `m` with `1 − n ≤ mN ≤ n` (the pair count at level `n`, `N` even).
pub fn lens_pair_count(big_n: u32, n: u64) -> usize {
    let nn = i64::from(big_n);
    let ni = n as i64;
    (-(ni + nn)..=ni + nn).filter(|m| 1 - ni <= m * nn && m * nn <= ni).count()
}

impl fmt::Display for SpectrumEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={} λ={} ×{}", self.branch, self.n, self.key(), self.multiplicity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::{genfun_coeffs, sphere_multiplicity};

    fn merged_at_t1(entries: &[SpectrumEntry]) -> BTreeMap<Rational, u64> {
        merge_spectrum(entries)
            .unwrap()
            .into_iter()
            .map(|m| {
                assert!(m.key.coeff.is_zero(), "T = 1 eigenvalues are rational");
                (m.key.rational, m.multiplicity)
            })
            .collect()
    }

    #[test]
    fn lens_four_at_t_two() {
        let metric = BergerMetric::parse("2.0").unwrap();
        let entries = lens_berger_spectrum(4, &metric, 3).unwrap();
        let at3: Vec<_> = entries.iter().filter(|e| e.n == 3 && e.m == Some(0)).collect();
        assert_eq!(at3.len(), 2);
        let mut keys: Vec<EigenKey> = at3.iter().map(|e| e.key()).collect();
        keys.sort();
        assert_eq!(keys, vec![EigenKey::rational(Rational::integer(-5)), EigenKey::rational(Rational::integer(3))]);
        assert!(at3.iter().all(|e| e.multiplicity == 4));
    }

    #[test]
    fn trivial_group_round_is_sphere() {
        let rs = round_spectrum(GroupSpec::Cyclic(1), 2);
        assert_eq!(rs.m_plus, vec![2, 6, 12]);
        let merged = merged_at_t1(&lens_berger_spectrum(1, &BergerMetric::round(), 40).unwrap());
        for k in 0..30u64 {
            let u = Rational::new(3, 2) + Rational::integer(k as i64);
            assert_eq!(merged[&u], sphere_multiplicity(k));
            assert_eq!(merged[&-u], sphere_multiplicity(k));
        }
    }

    #[test]
    fn cyclic_two_lowest_level() {
        assert_eq!(round_spectrum(GroupSpec::Cyclic(2), 0).m_plus, vec![2]);
        let merged = merged_at_t1(&lens_berger_spectrum(2, &BergerMetric::round(), 1).unwrap());
        assert_eq!(merged[&Rational::new(3, 2)], 2);
        assert_eq!(merged[&Rational::new(-5, 2)], 6);
    }

    #[test]
    fn dicyclic_one_lowest_level() {
        let entries = dicyclic_berger_spectrum(1, &BergerMetric::round(), 1).unwrap();
        let merged = merged_at_t1(&entries);
        assert_eq!(merged[&Rational::new(3, 2)], 2);
        assert_eq!(merged[&Rational::new(-5, 2)], 2);
        assert_eq!(merged.len(), 2);
    }

    #[test]
    fn dicyclic_two_round_rows() {
        // λ = 1/2 + 2kN + 2s + 1 carries (2kN + 2s + 2)·k from the pair rows
        let rs = round_spectrum(GroupSpec::Dicyclic(2), 40);
        let linear = |n: u64| if n % 4 == 1 { n + 1 } else { 0 };
        for k in 0..4u64 {
            for s in 0..2u64 {
                let n = 4 * k + 2 * s + 1;
                if (n - 1) as usize <= 40 {
                    assert_eq!(rs.m_plus[(n - 1) as usize], (4 * k + 2 * s + 2) * k + linear(n));
                }
            }
        }
    }

    #[test]
    fn berger_at_t1_matches_round_tables() {
        for spec in (1..=12).map(GroupSpec::Cyclic).chain((1..=6).map(GroupSpec::Dicyclic)) {
            let level = 60usize;
            let entries = berger_spectrum(spec, &BergerMetric::round(), level as u64 + 2).unwrap();
            let merged = merged_at_t1(&entries);
            let rs = round_spectrum(spec, level);
            for (lambda, mult) in rs.eigenvalues() {
                assert_eq!(merged.get(&lambda).copied().unwrap_or(0), mult, "{spec} λ={lambda}");
            }
            for (lambda, mult) in &merged {
                if lambda.abs() < Rational::integer(level as i64) {
                    let k = (lambda.abs() - Rational::new(3, 2)).to_u64().unwrap() as usize;
                    let side = if lambda.is_positive() { &rs.m_plus } else { &rs.m_minus };
                    assert_eq!(side[k], *mult, "{spec} λ={lambda}");
                }
            }
        }
    }

    #[test]
    fn round_tables_match_generating_functions() {
        let specs = (1..=12)
            .map(GroupSpec::Cyclic)
            .chain((1..=6).map(GroupSpec::Dicyclic))
            .chain([GroupSpec::BinaryTetrahedral, GroupSpec::BinaryOctahedral, GroupSpec::BinaryIcosahedral]);
        for spec in specs {
            let rs = round_spectrum(spec, 100);
            assert_eq!(rs.m_plus, genfun_coeffs(spec, Sign::Plus, 100).unwrap(), "{spec}");
            assert_eq!(rs.m_minus, genfun_coeffs(spec, Sign::Minus, 100).unwrap(), "{spec}");
        }
    }

    #[test]
    fn exceptional_examples() {
        assert_eq!(round_spectrum(GroupSpec::BinaryTetrahedral, 8).m_plus, vec![2, 0, 0, 0, 0, 0, 8, 0, 10]);
        let ico = round_spectrum(GroupSpec::BinaryIcosahedral, 11);
        assert_eq!(ico.m_minus, [vec![0; 11], vec![12]].concat());
    }

    #[test]
    fn pair_count_for_even_n() {
        for big_n in [2u32, 4, 6, 8] {
            for k in 0..6u64 {
                for s in 0..u64::from(big_n) / 2 {
                    let n = k * u64::from(big_n) + 2 * s + 1;
                    assert_eq!(lens_pair_count(big_n, n), 2 * k as usize + 1);
                    let entries = lens_berger_spectrum(big_n, &BergerMetric::round(), n).unwrap();
                    let at_n = entries.iter().filter(|e| e.n == n && e.branch == Branch::PlusRoot).count();
                    assert_eq!(at_n, 2 * k as usize + 1);
                }
            }
        }
    }

    #[test]
    fn radicands_positive_for_any_t() {
        for t in ["1/7", "1/2", "3", "10"] {
            let metric = BergerMetric::parse(t).unwrap();
            for n in 1..8 {
                lens_berger_spectrum(n, &metric, 30).unwrap();
                dicyclic_berger_spectrum(n, &metric, 30).unwrap();
            }
        }
    }

    #[test]
    fn merge_rules() {
        assert!(merge_spectrum(&[]).unwrap().is_empty());
        let metric = BergerMetric::parse("1/2").unwrap();
        let e = lens_berger_spectrum(3, &metric, 4).unwrap();
        let doubled: Vec<_> = e.iter().chain(e.iter()).cloned().collect();
        let once = merge_spectrum(&e).unwrap();
        let twice = merge_spectrum(&doubled).unwrap();
        assert_eq!(once.len(), twice.len());
        assert!(once.iter().zip(&twice).all(|(a, b)| 2 * a.multiplicity == b.multiplicity));
        let other = lens_berger_spectrum(3, &BergerMetric::round(), 4).unwrap();
        let mixed: Vec<_> = e.into_iter().chain(other).collect();
        assert!(matches!(merge_spectrum(&mixed), Err(ClosedSpecError::MixedMetric(..))));
    }

    #[test]
    fn irrational_keys_are_canonical() {
        let key = |r: i64| sqrt_rational(&Rational::integer(r));
        assert_eq!(key(8), (Rational::integer(2), BigInt::from(2)));
        assert_eq!(key(49), (Rational::integer(7), BigInt::one()));
        assert_eq!(sqrt_rational(&Rational::new(45, 4)), (Rational::new(3, 2), BigInt::from(5)));
        let e = lens_berger_spectrum(3, &BergerMetric::parse("2").unwrap(), 5).unwrap();
        for entry in e {
            assert!((entry.key().to_f64() - entry.eigenvalue()).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_metrics_and_groups() {
        assert!(BergerMetric::parse("0").is_err());
        assert!(BergerMetric::parse("-1.5").is_err());
        assert!(BergerMetric::from_f64(f64::NAN).is_err());
        assert_eq!(BergerMetric::from_f64(0.25).unwrap().t(), &Rational::new(1, 4));
        assert!(berger_spectrum(GroupSpec::BinaryOctahedral, &BergerMetric::round(), 3).is_err());
    }

    #[test]
    fn cutoff_helper() {
        assert_eq!(BergerMetric::parse("2").unwrap().n_max_for(10.0), 22);
        assert_eq!(BergerMetric::parse("1/2").unwrap().n_max_for(10.0), 22);
        assert_eq!(BergerMetric::round().n_max_for(10.0), 12);
    }

    #[test]
    fn entries_serialize_exactly() {
        let e = dicyclic_berger_spectrum(2, &BergerMetric::parse("2/3").unwrap(), 9).unwrap();
        let js = serde_json::to_string(&e).unwrap();
        let back: Vec<SpectrumEntry> = serde_json::from_str(&js).unwrap();
        assert_eq!(back, e);
    }
}
