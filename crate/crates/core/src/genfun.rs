//! Generating functions `F±(z) = Σ_k m(±(3/2 + k)) z^k` from group data.
//!
//! Each element γ with `c = Re γ` contributes
//! `(2 − 2c·z) / (1 − 2c·z + z²)²` to `F₊` and `(2c − 2z) / (1 − 2c·z + z²)²`
//! to `F₋`; the sum is divided by `|Γ|`. With this orientation the trivial
//! group gives `m(+3/2) = 2`, and every group containing `−1` has `F₊` even
//! and `F₋` odd.
//!
//! Classes whose real part lies in ℚ(√d) are expanded by exact series
//! division. Irrational cosines `cos(2πp/q)` are handled per Galois orbit:
//! the coefficient of `z^k` is a Laurent polynomial in `x = e^{iθ}` with
//! integer coefficients, and summing `x^e` over the orbit gives the
//! Ramanujan sum `c_q(e)`, so the result stays in ℤ.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{poly_mul, series_div, ExactError, QuadExt, Rational};
use crate::groups::{euler_phi, ramanujan_sum, real_part_census, Census, GroupSpec, RealPart};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenfunError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("coefficient {k} is {value}, not a nonnegative integer")]
    NotNatural { k: usize, value: String },
    #[error("census is not closed under the Galois action for denominator {0}")]
    NotGaloisClosed(u64),
    #[error("no printed generating function for {0}")]
    NoPrintedForm(GroupSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

impl FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "plus" | "+" => Ok(Sign::Plus),
            "minus" | "-" => Ok(Sign::Minus),
            _ => Err(format!("invalid sign {s:?} (expected plus or minus)")),
        }
    }
}

/// Quotient of two polynomials over ℚ(√d), coefficients low to high.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunction {
    pub numerator: Vec<QuadExt>,
    pub denominator: Vec<QuadExt>,
    pub d: u32,
}

fn quad_to_naturals(values: &[QuadExt]) -> Result<Vec<u64>, GenfunError> {
    values
        .iter()
        .enumerate()
        .map(|(k, v)| {
            v.as_rational()
                .and_then(Rational::to_u64)
                .ok_or(GenfunError::NotNatural { k, value: v.to_string() })
        })
        .collect()
}

/// Taylor coefficients `0..=k_max`, required to be nonnegative integers.
pub fn ratfun_coeffs(rf: &RationalFunction, k_max: usize) -> Result<Vec<u64>, GenfunError> {
    let s = series_div(&rf.numerator, &rf.denominator, k_max)?;
    quad_to_naturals(s.coeffs())
}

/// Per-element numerator for a real part `c`.
fn element_numerator(c: &QuadExt, sign: Sign) -> [QuadExt; 2] {
    let d = c.d();
    let two = QuadExt::int(2, d);
    match sign {
        Sign::Plus => [two, -(c + c)],
        Sign::Minus => [c + c, -two],
    }
}

/// `(1 − 2cz + z²)²`.
fn element_denominator(c: &QuadExt) -> [QuadExt; 5] {
    let d = c.d();
    let four_c = c.scale(&Rational::integer(4));
    let mid = &(c * c).scale(&Rational::integer(4)) + &QuadExt::int(2, d);
    [QuadExt::one(d), -&four_c, mid, -&four_c, QuadExt::one(d)]
}

/// `Σ_i (i+1)(k−i+1) c_q(2i − k + shift)`, the orbit sum of `x^shift · W_k(x)`.
fn orbit_w(k: i64, shift: i64, cq: &impl Fn(i64) -> i64) -> i64 {
    (0..=k).map(|i| (i + 1) * (k - i + 1) * cq(2 * i - k + shift)).sum()
}

/// Sum over a full Galois orbit `{p : gcd(p, q) = 1}` of the z^k coefficient,
/// counting each `θ = 2πp/q` once.
fn orbit_coefficient(k: i64, sign: Sign, cq: &impl Fn(i64) -> i64) -> i64 {
    let w = |k: i64, s: i64| if k < 0 { 0 } else { orbit_w(k, s, cq) };
    match sign {
        Sign::Plus => 2 * w(k, 0) - w(k - 1, 1) - w(k - 1, -1),
        Sign::Minus => w(k, 1) + w(k, -1) - 2 * w(k - 1, 0),
    }
}

/// Coefficients of `F±` for an arbitrary census of real parts.
pub fn genfun_from_census(
    census: &Census,
    order: u64,
    sign: Sign,
    k_max: usize,
) -> Result<Vec<u64>, GenfunError> {
    let d = census
        .entries
        .iter()
        .find_map(|(v, _)| match v {
            RealPart::Exact(x) if x.d() != 1 => Some(x.d()),
            _ => None,
        })
        .unwrap_or(1);
    let mut total = vec![QuadExt::zero(d); k_max + 1];
    let mut orbits: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();

    for (value, count) in &census.entries {
        match value {
            RealPart::Exact(c) => {
                let c = if c.d() == d {
                    c.clone()
                } else {
                    let r = c.as_rational().ok_or(ExactError::FieldMismatch { left: d, right: c.d() })?;
                    QuadExt::rational(r.clone(), d)
                };
                let s = series_div(&element_numerator(&c, sign), &element_denominator(&c), k_max)?;
                let n = Rational::integer(*count as i64);
                for (t, a) in total.iter_mut().zip(s.coeffs()) {
                    *t = &*t + &a.scale(&n);
                }
            }
            RealPart::Cos { turn } => {
                let q = turn.denom().try_into().map_err(|_| GenfunError::NotGaloisClosed(0))?;
                let p: u64 = turn.numer().try_into().map_err(|_| GenfunError::NotGaloisClosed(q))?;
                orbits.entry(q).or_default().push((p, *count));
            }
        }
    }

    for (q, members) in orbits {
        let expected: Vec<u64> = (1..q).filter(|&p| 2 * p < q && p.gcd(&q) == 1).collect();
        let mut ps: Vec<u64> = members.iter().map(|&(p, _)| p).collect();
        ps.sort_unstable();
        let n_q = members[0].1;
        if ps != expected || members.iter().any(|&(_, c)| c != n_q) || 2 * expected.len() as u64 != euler_phi(q) {
            return Err(GenfunError::NotGaloisClosed(q));
        }
        let span = k_max as i64 + 2;
        let table: Vec<i64> = (-span..=span).map(|e| ramanujan_sum(q, e)).collect();
        let cq = |e: i64| table[(e + span) as usize];
        for (k, t) in total.iter_mut().enumerate() {
            // each cosine value stands for two conjugate angles
            let orbit = orbit_coefficient(k as i64, sign, &cq);
            let add = Rational::new(orbit * n_q as i64, 2);
            *t = &*t + &QuadExt::rational(add, d);
        }
    }

    let order = Rational::integer(order as i64);
    let per_group: Vec<QuadExt> = total.iter().map(|t| t.scale(&order.recip().expect("order ≥ 1"))).collect();
    quad_to_naturals(&per_group)
}

/// Exact multiplicities `m(±(3/2 + k))`, `k = 0..=k_max`.
pub fn genfun_coeffs(spec: GroupSpec, sign: Sign, k_max: usize) -> Result<Vec<u64>, GenfunError> {
    genfun_from_census(&real_part_census(spec), spec.order(), sign, k_max)
}

/// `m(±(3/2+k)) = (k+1)(k+2)` on the round sphere.
pub fn sphere_multiplicity(k: u64) -> u64 {
    (k + 1) * (k + 2)
}

/// Label under which the printed generating function of `spec` matches our `sign`.
///
/// The binary icosahedral functions are printed with `F₊` and `F₋`
/// interchanged relative to the orientation used here.
pub fn printed_label(spec: GroupSpec, sign: Sign) -> Sign {
    match spec {
        GroupSpec::BinaryIcosahedral => sign.flip(),
        _ => sign,
    }
}

fn sparse(d: u32, terms: &[(usize, i64)]) -> Vec<QuadExt> {
    let deg = terms.iter().map(|&(p, _)| p).max().unwrap_or(0);
    let mut out = vec![QuadExt::zero(d); deg + 1];
    for &(p, c) in terms {
        out[p] = QuadExt::int(c, d);
    }
    out
}

fn even_poly(d: u32, coeffs: &[i64]) -> Vec<QuadExt> {
    let terms: Vec<(usize, i64)> = coeffs.iter().enumerate().map(|(i, &c)| (2 * i, c)).collect();
    sparse(d, &terms)
}

fn shift(poly: Vec<QuadExt>, by: usize) -> Vec<QuadExt> {
    let d = poly.first().map_or(1, QuadExt::d);
    let mut out = vec![QuadExt::zero(d); by];
    out.extend(poly);
    out
}

fn scaled(poly: Vec<QuadExt>, c: &QuadExt) -> Vec<QuadExt> {
    poly.iter().map(|x| x * c).collect()
}

fn quad(a: i64, b: i64) -> QuadExt {
    QuadExt::new(Rational::integer(a), Rational::integer(b), 5).expect("ℚ(√5)")
}

/// The printed rational functions for 2T, 2O and 2I, labels as printed.
pub fn printed_ratfun(spec: GroupSpec, printed: Sign) -> Result<RationalFunction, GenfunError> {
    match spec {
        GroupSpec::BinaryTetrahedral | GroupSpec::BinaryOctahedral => {
            let d = spec.field();
            let (num_even, lead, tail): (&[i64], usize, &[i64]) = match (spec, printed) {
                (GroupSpec::BinaryTetrahedral, Sign::Plus) => (&[1, 1, -1, 1, 7, 3], 0, &[1, 2, 2, 1]),
                (GroupSpec::BinaryTetrahedral, Sign::Minus) => (&[3, 7, 1, -1, 1, 1], 5, &[1, 2, 2, 1]),
                (_, Sign::Plus) => (&[1, 1, 1, -1, 2, 2, 10, 4, 4], 0, &[1, 2, 3, 3, 2, 1]),
                (_, Sign::Minus) => (&[4, 4, 10, 2, 2, -1, 1, 1, 1], 7, &[1, 2, 3, 3, 2, 1]),
            };
            let numerator = scaled(shift(even_poly(d, num_even), lead), &QuadExt::int(-2, d));
            let m1 = even_poly(d, &[-1, 1]);
            let cube = poly_mul(&poly_mul(&m1, &m1), &m1);
            let b = even_poly(d, tail);
            let denominator = poly_mul(&cube, &poly_mul(&b, &b));
            Ok(RationalFunction { numerator, denominator, d })
        }
        GroupSpec::BinaryIcosahedral => {
            let h = even_poly(5, &[-1, -3, -4, -2, 2, 6, 9, 9, 4, -4, -9, -9, -6, -2, 2, 4, 3, 1]);
            let base = &quad(7, 3).pow(3) * &quad(2207, 987);
            let (g, constant) = match printed {
                Sign::Plus => (
                    shift(even_poly(5, &[6, 18, 24, 12, -2, -6, -2, 2, 4, 3, 1]), 11),
                    &(&QuadExt::int(-16, 5) * &quad(710647, 317811)) / &base,
                ),
                Sign::Minus => (
                    even_poly(5, &[1, 3, 4, 2, -2, -6, -2, 12, 24, 18, 6]),
                    &(&QuadExt::int(-1024, 5) * &quad(5374978561, 2403763488))
                        / &(&quad(7, 3).pow(5) * &base),
                ),
            };
            Ok(RationalFunction { numerator: scaled(g, &constant), denominator: h, d: 5 })
        }
        _ => Err(GenfunError::NoPrintedForm(spec)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{element_order, enumerate, GroupElement};

    #[test]
    fn trivial_group() {
        assert_eq!(genfun_coeffs(GroupSpec::Cyclic(1), Sign::Plus, 3).unwrap(), vec![2, 6, 12, 20]);
        let m = genfun_coeffs(GroupSpec::Cyclic(1), Sign::Minus, 50).unwrap();
        assert!(m.iter().enumerate().all(|(k, &v)| v == sphere_multiplicity(k as u64)));
    }

    #[test]
    fn printed_2t_plus() {
        let rf = printed_ratfun(GroupSpec::BinaryTetrahedral, Sign::Plus).unwrap();
        assert_eq!(rf.numerator.len() - 1, 10);
        assert_eq!(rf.denominator.len() - 1, 18);
        assert_eq!(ratfun_coeffs(&rf, 10).unwrap(), vec![2, 0, 0, 0, 0, 0, 8, 0, 10, 0, 0]);
        assert_eq!(
            genfun_coeffs(GroupSpec::BinaryTetrahedral, Sign::Plus, 10).unwrap(),
            vec![2, 0, 0, 0, 0, 0, 8, 0, 10, 0, 0]
        );
    }

    #[test]
    fn printed_2o_minus_starts_at_seven() {
        let rf = printed_ratfun(GroupSpec::BinaryOctahedral, Sign::Minus).unwrap();
        assert!(rf.numerator[..7].iter().all(QuadExt::is_zero));
        assert_eq!(ratfun_coeffs(&rf, 6).unwrap(), vec![0; 7]);
    }

    #[test]
    fn printed_2i_constants_are_in_q_sqrt5() {
        for s in [Sign::Plus, Sign::Minus] {
            let rf = printed_ratfun(GroupSpec::BinaryIcosahedral, s).unwrap();
            assert_eq!(rf.d, 5);
            // the printed prefactors collapse to −2
            let lead = rf.numerator.iter().find(|c| !c.is_zero()).unwrap();
            assert!(lead.is_rational());
        }
        let rf = printed_ratfun(GroupSpec::BinaryIcosahedral, Sign::Plus).unwrap();
        let c = ratfun_coeffs(&rf, 11).unwrap();
        assert_eq!(c[11], 12);
        assert!(c[..11].iter().all(|&v| v == 0));
    }

    #[test]
    fn icosahedral_orientation() {
        let ours = genfun_coeffs(GroupSpec::BinaryIcosahedral, Sign::Minus, 11).unwrap();
        assert_eq!(ours, [vec![0; 11], vec![12]].concat());
        let plus = genfun_coeffs(GroupSpec::BinaryIcosahedral, Sign::Plus, 12).unwrap();
        assert_eq!(plus[0], 2);
        assert_eq!(plus[12], 14);
        assert_eq!(printed_label(GroupSpec::BinaryIcosahedral, Sign::Plus), Sign::Minus);
    }

    #[test]
    fn printed_functions_match_element_sums() {
        for spec in [GroupSpec::BinaryTetrahedral, GroupSpec::BinaryOctahedral, GroupSpec::BinaryIcosahedral] {
            for s in [Sign::Plus, Sign::Minus] {
                let rf = printed_ratfun(spec, printed_label(spec, s)).unwrap();
                assert_eq!(ratfun_coeffs(&rf, 60).unwrap(), genfun_coeffs(spec, s, 60).unwrap(), "{spec} {s}");
            }
        }
    }

    #[test]
    fn cyclic_results_are_integral() {
        for n in 1..=12u32 {
            for s in [Sign::Plus, Sign::Minus] {
                genfun_coeffs(GroupSpec::Cyclic(n), s, 100).unwrap();
            }
        }
    }

    /// Rebuild the 2O and 2I censuses from element orders as cosine
    /// descriptors, which routes every irrational class through the orbit sums.
    #[test]
    fn orbit_sums_agree_with_quadratic_field_route() {
        for spec in [GroupSpec::BinaryOctahedral, GroupSpec::BinaryIcosahedral] {
            let values = enumerate(spec).into_iter().map(|g| {
                let order = element_order(&g, 20).unwrap();
                let w = match &g {
                    GroupElement::Quaternion(q) => q.w.to_f64(),
                    GroupElement::Rotation(_) => unreachable!(),
                };
                let j = (0..order)
                    .find(|&j| {
                        let t = 2.0 * std::f64::consts::PI * j as f64 / order as f64;
                        (t.cos() - w).abs() < 1e-12
                    })
                    .unwrap();
                RealPart::cos_turn(&Rational::new(j as i64, order as i64))
            });
            let census = Census::from_values(values);
            assert!(census.entries.iter().any(|(v, _)| matches!(v, RealPart::Cos { .. })));
            for s in [Sign::Plus, Sign::Minus] {
                assert_eq!(
                    genfun_from_census(&census, spec.order(), s, 80).unwrap(),
                    genfun_coeffs(spec, s, 80).unwrap()
                );
            }
        }
    }

    #[test]
    fn incomplete_orbit_rejected() {
        let census = Census::from_values([
            RealPart::cos_turn(&Rational::new(0, 1)),
            RealPart::cos_turn(&Rational::new(1, 5)),
        ]);
        assert_eq!(
            genfun_from_census(&census, 2, Sign::Plus, 3),
            Err(GenfunError::NotGaloisClosed(5))
        );
    }

    #[test]
    fn non_integral_result_rejected() {
        // {1, −1/2} is not a group
        let census = Census::from_values([
            RealPart::cos_turn(&Rational::new(0, 1)),
            RealPart::cos_turn(&Rational::new(1, 3)),
        ]);
        assert!(matches!(
            genfun_from_census(&census, 2, Sign::Plus, 5),
            Err(GenfunError::NotNatural { .. })
        ));
    }

    #[test]
    fn central_element_forces_parity() {
        let specs = [
            GroupSpec::Cyclic(2),
            GroupSpec::Cyclic(6),
            GroupSpec::Dicyclic(3),
            GroupSpec::BinaryTetrahedral,
            GroupSpec::BinaryOctahedral,
            GroupSpec::BinaryIcosahedral,
        ];
        for spec in specs {
            let p = genfun_coeffs(spec, Sign::Plus, 120).unwrap();
            let m = genfun_coeffs(spec, Sign::Minus, 120).unwrap();
            assert!(p.iter().skip(1).step_by(2).all(|&v| v == 0), "{spec}");
            assert!(m.iter().step_by(2).all(|&v| v == 0), "{spec}");
        }
    }

    #[test]
    fn sign_parsing() {
        assert_eq!("plus".parse::<Sign>().unwrap(), Sign::Plus);
        assert_eq!("-".parse::<Sign>().unwrap(), Sign::Minus);
        assert!("up".parse::<Sign>().is_err());
    }
}
