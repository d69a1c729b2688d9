//! Quadratic multiplicity polynomials on residue classes.
//!
//! A polynomial is always evaluated at the signed eigenvalue `λ`. A `Plus`
//! polynomial with residue `r` and period `L` covers `λ = 3/2 + k`,
//! `k ≡ r (mod L)`; a `Minus` one covers `λ = −(3/2 + k)`. `Both` covers the
//! whole progression `λ ∈ 3/2 + r + Lℤ`, which meets the negative side at
//! `k ≡ −3 − r (mod L)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::Rational;
use crate::genfun::{genfun_coeffs, GenfunError, Sign};
use crate::groups::GroupSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultPolyError {
    #[error("residue class {residue} mod {period} has fewer than three points")]
    InsufficientData { residue: u64, period: u64 },
    #[error("fit for residue {residue} mod {period} fails at index {index}")]
    Mismatch { residue: u64, period: u64, index: usize },
    #[error("{weights} weights for {polys} polynomials")]
    WeightCount { polys: usize, weights: usize },
    #[error("period must be positive")]
    ZeroPeriod,
    #[error(transparent)]
    Genfun(#[from] GenfunError),
}

/// `c0 + c1·u + c2·u²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Quadratic {
    pub c0: Rational,
    pub c1: Rational,
    pub c2: Rational,
}

impl Quadratic {
    pub fn new(c0: Rational, c1: Rational, c2: Rational) -> Self {
        Quadratic { c0, c1, c2 }
    }

    /// Shorthand for small literal coefficients `(numerator, denominator)`.
    pub fn from_pairs(c0: (i64, i64), c1: (i64, i64), c2: (i64, i64)) -> Self {
        Quadratic::new(
            Rational::new(c0.0, c0.1),
            Rational::new(c1.0, c1.1),
            Rational::new(c2.0, c2.1),
        )
    }

    pub fn eval(&self, u: &Rational) -> Rational {
        &self.c0 + &(u * &(&self.c1 + &(u * &self.c2)))
    }

    pub fn eval_f64(&self, u: f64) -> f64 {
        self.c0.to_f64() + u * (self.c1.to_f64() + u * self.c2.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero()
    }

    /// `u ↦ p(−u)`.
    pub fn reflect(&self) -> Self {
        Quadratic::new(self.c0.clone(), -&self.c1, self.c2.clone())
    }

    pub fn add(&self, o: &Quadratic) -> Self {
        Quadratic::new(&self.c0 + &o.c0, &self.c1 + &o.c1, &self.c2 + &o.c2)
    }

    pub fn scale(&self, w: &Rational) -> Self {
        Quadratic::new(&self.c0 * w, &self.c1 * w, &self.c2 * w)
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·u + {}·u²", self.c0, self.c1, self.c2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiplicityPolynomial {
    pub residue: u64,
    pub period: u64,
    pub side: Side,
    #[serde(flatten)]
    pub poly: Quadratic,
}

fn level_point(sign: Sign, k: u64) -> Rational {
    let u = Rational::new(3, 2) + Rational::integer(k as i64);
    match sign {
        Sign::Plus => u,
        Sign::Minus => -u,
    }
}

impl MultiplicityPolynomial {
    pub fn new(poly: Quadratic, residue: u64, period: u64, side: Side) -> Self {
        MultiplicityPolynomial { residue: residue % period, period, side, poly }
    }

    /// Mirror image under `λ ↦ −λ`: swaps the two sides of the spectrum.
    pub fn reflect(&self) -> Self {
        let (side, residue) = match self.side {
            Side::Plus => (Side::Minus, self.residue),
            Side::Minus => (Side::Plus, self.residue),
            Side::Both => (Side::Both, negative_residue(self.residue, self.period)),
        };
        MultiplicityPolynomial::new(self.poly.reflect(), residue, self.period, side)
    }

    /// Levels `k ≤ k_max` covered on one side of the spectrum.
    pub fn levels(&self, sign: Sign, k_max: u64) -> impl Iterator<Item = u64> {
        let start = match (self.side, sign) {
            (Side::Plus, Sign::Plus) | (Side::Minus, Sign::Minus) | (Side::Both, Sign::Plus) => {
                Some(self.residue)
            }
            (Side::Both, Sign::Minus) => Some(negative_residue(self.residue, self.period)),
            _ => None,
        };
        let period = self.period as usize;
        start.into_iter().flat_map(move |s| (s..=k_max).step_by(period))
    }

    pub fn value_at(&self, sign: Sign, k: u64) -> Rational {
        self.poly.eval(&level_point(sign, k))
    }
}

/// Residue on the negative side reached by the progression `3/2 + r + Lℤ`.
pub fn negative_residue(r: u64, period: u64) -> u64 {
    let l = period as i64;
    (-3 - r as i64).rem_euclid(l) as u64
}

/// Per-class Lagrange fit through the last three points, verified on every point.
///
/// Point `k` sits at `u = offset + k` (`Plus`) or `u = −(offset + k)` (`Minus`).
pub fn fit_polynomials(
    coeffs: &[u64],
    period: u64,
    offset: &Rational,
    side: Side,
) -> Result<Vec<MultiplicityPolynomial>, MultPolyError> {
    if period == 0 {
        return Err(MultPolyError::ZeroPeriod);
    }
    let at = |k: usize| {
        let u = offset + &Rational::integer(k as i64);
        if side == Side::Minus {
            -u
        } else {
            u
        }
    };
    let mut out = Vec::with_capacity(period as usize);
    for r in 0..period {
        let idx: Vec<usize> = (r as usize..coeffs.len()).step_by(period as usize).collect();
        if idx.len() < 3 {
            return Err(MultPolyError::InsufficientData { residue: r, period });
        }
        let pts = &idx[idx.len() - 3..];
        let us: Vec<Rational> = pts.iter().map(|&k| at(k)).collect();
        let mut poly = Quadratic::default();
        for i in 0..3 {
            let (a, b) = match i {
                0 => (&us[1], &us[2]),
                1 => (&us[0], &us[2]),
                _ => (&us[0], &us[1]),
            };
            let w = Rational::integer(coeffs[pts[i]] as i64) / ((&us[i] - a) * (&us[i] - b));
            poly.c0 += &w * a * b;
            poly.c1 -= &w * (a + b);
            poly.c2 += &w;
        }
        if let Some(&bad) = idx.iter().find(|&&k| poly.eval(&at(k)) != coeffs[k] as i64) {
            return Err(MultPolyError::Mismatch { residue: r, period, index: bad });
        }
        out.push(MultiplicityPolynomial::new(poly, r, period, side));
    }
    Ok(out)
}

/// Summed contributions of a family at every level `0..=k_max`, both sides.
pub fn evaluate_family(polys: &[MultiplicityPolynomial], k_max: u64) -> (Vec<Rational>, Vec<Rational>) {
    let mut plus = vec![Rational::zero(); k_max as usize + 1];
    let mut minus = plus.clone();
    for p in polys {
        for k in p.levels(Sign::Plus, k_max) {
            plus[k as usize] += p.value_at(Sign::Plus, k);
        }
        for k in p.levels(Sign::Minus, k_max) {
            minus[k as usize] += p.value_at(Sign::Minus, k);
        }
    }
    (plus, minus)
}

/// Weighted sum `Σ wᵢ Pᵢ(u)`.
pub fn poly_sum_check(polys: &[MultiplicityPolynomial], weights: &[Rational]) -> Result<Quadratic, MultPolyError> {
    if polys.len() != weights.len() {
        return Err(MultPolyError::WeightCount { polys: polys.len(), weights: weights.len() });
    }
    Ok(polys
        .iter()
        .zip(weights)
        .fold(Quadratic::default(), |acc, (p, w)| acc.add(&p.poly.scale(w))))
}

/// `1/period` for each polynomial; with these weights every complete family
/// of one side sums to `(u² − 1/4)/|Γ|`.
pub fn density_weights(polys: &[MultiplicityPolynomial]) -> Vec<Rational> {
    polys.iter().map(|p| Rational::new(1, p.period as i64)).collect()
}

/// Period of the quasi-polynomial structure of the round spectrum.
pub fn natural_period(spec: GroupSpec) -> u64 {
    match spec {
        GroupSpec::Cyclic(n) if n % 2 == 0 => u64::from(n),
        GroupSpec::Cyclic(n) => 2 * u64::from(n),
        GroupSpec::Dicyclic(n) => num_integer::lcm(4, 2 * u64::from(n)),
        GroupSpec::BinaryTetrahedral => 12,
        GroupSpec::BinaryOctahedral => 24,
        GroupSpec::BinaryIcosahedral => 60,
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Printed tables for the exceptional groups, labels as printed: residue `k`
/// is the class of `λ = 3/2 + k`, zero classes omitted.
pub fn printed_table(spec: GroupSpec) -> Option<Vec<MultiplicityPolynomial>> {
    let (period, c2, rows): (u64, (i64, i64), &[(u64, (i64, i64), (i64, i64))]) = match spec {
        GroupSpec::BinaryTetrahedral => (
            12,
            (1, 12),
            &[
                (0, (7, 16), (11, 12)),
                (2, (-7, 48), (-3, 12)),
                (4, (-11, 48), (-5, 12)),
                (6, (9, 48), (5, 12)),
                (8, (5, 48), (1, 4)),
                (10, (-23, 48), (-11, 12)),
            ],
        ),
        GroupSpec::BinaryOctahedral => (
            24,
            (1, 24),
            &[
                (0, (15, 32), (23, 24)),
                (2, (-7, 96), (-1, 8)),
                (4, (-11, 96), (-5, 24)),
                (6, (-5, 32), (-7, 24)),
                (8, (29, 96), (5, 8)),
                (10, (-23, 96), (-11, 24)),
                (12, (7, 32), (11, 24)),
                (14, (-31, 96), (-5, 8)),
                (16, (13, 96), (7, 24)),
                (18, (3, 32), (5, 24)),
                (20, (5, 96), (1, 8)),
                (22, (-47, 96), (-23, 24)),
            ],
        ),
        GroupSpec::BinaryIcosahedral => (
            60,
            (1, 60),
            &[
                (1, (1, 48), (-1, 20)),
                (3, (3, 80), (-1, 12)),
                (5, (13, 240), (-7, 60)),
                (7, (17, 240), (-3, 20)),
                (9, (7, 80), (-11, 60)),
                (11, (-19, 48), (47, 60)),
                (13, (29, 240), (-1, 4)),
                (15, (11, 80), (-17, 60)),
                (17, (37, 240), (-19, 60)),
                (19, (-79, 240), (13, 20)),
                (21, (3, 16), (-23, 60)),
                (23, (-71, 240), (7, 12)),
                (25, (53, 240), (-9, 20)),
                (27, (19, 80), (-29, 60)),
                (29, (-59, 240), (29, 60)),
                (31, (-11, 48), (9, 20)),
                (33, (23, 80), (-7, 12)),
                (35, (-47, 240), (23, 60)),
                (37, (77, 240), (-13, 20)),
                (39, (-13, 80), (19, 60)),
                (41, (-7, 48), (17, 60)),
                (43, (-31, 240), (1, 4)),
                (45, (31, 80), (-47, 60)),
                (47, (-23, 240), (11, 60)),
                (49, (-19, 240), (3, 20)),
                (51, (-1, 16), (7, 60)),
                (53, (-11, 240), (1, 12)),
                (55, (-7, 240), (1, 20)),
                (57, (39, 80), (-59, 60)),
                (59, (-119, 240), (59, 60)),
            ],
        ),
        _ => return None,
    };
    Some(
        rows.iter()
            .map(|&(r, c0, c1)| {
                MultiplicityPolynomial::new(Quadratic::from_pairs(c0, c1, c2), r, period, Side::Both)
            })
            .collect(),
    )
}

/// Closed-form round-metric families for cyclic and dicyclic groups, and the
/// printed tables (in this crate's orientation) for the exceptional groups.
pub fn round_polynomials(spec: GroupSpec) -> Vec<MultiplicityPolynomial> {
    match spec {
        GroupSpec::Cyclic(n) => lens_family(i64::from(n)),
        GroupSpec::Dicyclic(n) => dicyclic_family(i64::from(n)),
        GroupSpec::BinaryIcosahedral => printed_table(spec)
            .expect("printed table")
            .iter()
            .map(MultiplicityPolynomial::reflect)
            .collect(),
        _ => printed_table(spec).expect("printed table"),
    }
}

fn lens_family(n: i64) -> Vec<MultiplicityPolynomial> {
    let nu = n as u64;
    let mut out = Vec::new();
    let mut push = |c0: Rational, c1: Rational, c2: Rational, residue: i64, period: u64, side: Side| {
        let r = residue.rem_euclid(period as i64) as u64;
        out.push(MultiplicityPolynomial::new(Quadratic::new(c0, c1, c2), r, period, side));
    };
    if n % 2 == 0 {
        let den = 2 * n;
        for s in 0..n / 2 {
            push(q(-3 + n - 4 * s, den), q(-4 + 2 * n - 8 * s, den), q(4, den), 2 * s, nu, Side::Plus);
            push(q(5 - n + 4 * s, den), q(12 - 2 * n + 8 * s, den), q(4, den), 2 * s + 1, nu, Side::Minus);
        }
    } else {
        let den = 4 * n;
        let p = 2 * nu;
        for b in 0..=(n - 3) / 2 {
            if n < 3 {
                break;
            }
            let (c0p, c1p) = (q(-3 - 4 * b + 2 * n, den), q(-4 - 8 * b + 4 * n, den));
            let (c0m, c1m) = (q(5 + 4 * b - 2 * n, den), q(12 + 8 * b - 4 * n, den));
            push(c0p.clone(), c1p.clone(), q(4, den), 2 * b, p, Side::Plus);
            push(c0p, c1p, q(4, den), n + 2 * b, p, Side::Plus);
            push(c0m.clone(), c1m.clone(), q(4, den), 2 * b + 1, p, Side::Minus);
            push(c0m, c1m, q(4, den), n + 2 * b + 1, p, Side::Minus);
        }
        for b in 0..=(n - 1) / 2 {
            let (c0p, c1p) = (q(-1 - 4 * b, den), q(-8 * b, den));
            let (c0m, c1m) = (q(3 + 4 * b, den), q(8 + 8 * b, den));
            push(c0p.clone(), c1p.clone(), q(4, den), n + 2 * b - 1, p, Side::Plus);
            push(c0p, c1p, q(4, den), 2 * b - 1, p, Side::Plus);
            push(c0m.clone(), c1m.clone(), q(4, den), n + 2 * b, p, Side::Minus);
            push(c0m, c1m, q(4, den), 2 * b, p, Side::Minus);
        }
    }
    // tail λ = −1/2 − mN
    push(q(-1, 1), q(-2, 1), q(0, 1), n - 1, nu, Side::Minus);
    out
}

fn dicyclic_family(n: i64) -> Vec<MultiplicityPolynomial> {
    let den = 2 * n;
    let mut out: Vec<MultiplicityPolynomial> = (0..n)
        .map(|s| {
            MultiplicityPolynomial::new(
                Quadratic::new(q(-3, 4 * den) - q(s, den), q(-1, den) - q(s, n), q(1, den)),
                (2 * s) as u64,
                den as u64,
                Side::Plus,
            )
        })
        .collect();
    // λ = 1/2 + n', n' ≡ 1 (mod 4)
    out.push(MultiplicityPolynomial::new(Quadratic::from_pairs((1, 2), (1, 1), (0, 1)), 0, 4, Side::Plus));
    // minus side, in the signed variable λ < 0
    for s in 0..n {
        out.push(MultiplicityPolynomial::new(
            Quadratic::new(q(4 * s + 5, 4 * den), q(2 * s + 3, den), q(1, den)),
            (2 * s + 1) as u64,
            den as u64,
            Side::Minus,
        ));
    }
    // λ = −3/2 − n', n' ≡ 3 (mod 4), and the tail λ = −1/2 − 2mN
    out.push(MultiplicityPolynomial::new(Quadratic::from_pairs((-1, 2), (-1, 1), (0, 1)), 3, 4, Side::Minus));
    out.push(MultiplicityPolynomial::new(Quadratic::from_pairs((-1, 2), (-1, 1), (0, 1)), (den - 1) as u64, den as u64, Side::Minus));
    out
}

/// Fitted polynomials for both sides of the round spectrum, zero classes dropped.
pub fn fit_spec(spec: GroupSpec, k_max: usize) -> Result<Vec<MultiplicityPolynomial>, MultPolyError> {
    let period = natural_period(spec);
    let offset = Rational::new(3, 2);
    let mut out = Vec::new();
    for (sign, side) in [(Sign::Plus, Side::Plus), (Sign::Minus, Side::Minus)] {
        let coeffs = genfun_coeffs(spec, sign, k_max)?;
        out.extend(
            fit_polynomials(&coeffs, period, &offset, side)?
                .into_iter()
                .filter(|p| !p.poly.is_zero()),
        );
    }
    Ok(out)
}

/// First level `k` at which the plus-side table, continued to `j < 0`, disagrees with `minus`.
pub fn negative_closure_mismatch(plus_table: &[MultiplicityPolynomial], minus: &[u64]) -> Option<usize> {
    let both: Vec<MultiplicityPolynomial> = plus_table
        .iter()
        .map(|p| MultiplicityPolynomial { side: Side::Both, ..p.clone() })
        .collect();
    let (_, predicted) = evaluate_family(&both, minus.len() as u64 - 1);
    predicted.iter().zip(minus).position(|(p, &m)| *p != m as i64)
}
