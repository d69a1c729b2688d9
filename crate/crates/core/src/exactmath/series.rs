use std::ops::Index;

use serde::{Deserialize, Serialize};

use super::{ExactError, QuadExt};

/// Dense power series over ℚ(√d), truncated at order `K` (coefficients `0..=K`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesQ {
    coeffs: Vec<QuadExt>,
    d: u32,
}

impl SeriesQ {
    pub fn zero(order: usize, d: u32) -> Self {
        SeriesQ { coeffs: vec![QuadExt::zero(d); order + 1], d }
    }

    /// Series of a polynomial given low-to-high, truncated or zero-padded to `order`.
    pub fn from_poly(poly: &[QuadExt], order: usize, d: u32) -> Result<Self, ExactError> {
        if let Some(bad) = poly.iter().find(|c| c.d() != d) {
            return Err(ExactError::FieldMismatch { left: d, right: bad.d() });
        }
        let mut coeffs: Vec<QuadExt> = poly.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, QuadExt::zero(d));
        Ok(SeriesQ { coeffs, d })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<QuadExt> {
        self.coeffs
    }

    fn check_compatible(&self, rhs: &SeriesQ) -> Result<(), ExactError> {
        if self.d != rhs.d {
            return Err(ExactError::FieldMismatch { left: self.d, right: rhs.d });
        }
        if self.order() != rhs.order() {
            return Err(ExactError::OrderMismatch { left: self.order(), right: rhs.order() });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &SeriesQ) -> Result<SeriesQ, ExactError> {
        self.check_compatible(rhs)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Ok(SeriesQ { coeffs, d: self.d })
    }

    pub fn scale(&self, c: &QuadExt) -> Result<SeriesQ, ExactError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_mul(c))
            .collect::<Result<_, _>>()?;
        Ok(SeriesQ { coeffs, d: self.d })
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, rhs: &SeriesQ) -> Result<SeriesQ, ExactError> {
        self.check_compatible(rhs)?;
        let k_max = self.order();
        let coeffs = (0..=k_max)
            .map(|k| {
                (0..=k).fold(QuadExt::zero(self.d), |acc, j| {
                    acc + &self.coeffs[j] * &rhs.coeffs[k - j]
                })
            })
            .collect();
        Ok(SeriesQ { coeffs, d: self.d })
    }
}

impl Index<usize> for SeriesQ {
    type Output = QuadExt;

    fn index(&self, k: usize) -> &QuadExt {
        &self.coeffs[k]
    }
}

/// Solves `a · denominator ≡ numerator (mod z^{K+1})` for `a`.
///
/// Uses the coefficient recurrence `c_k = Σ_j a_{k−j} b_j`, solved for `a_k`;
/// only the first `K+1` coefficients of either input are read. Inputs are
/// plain coefficient slices so that polynomials of any degree can be passed.
pub fn series_div(
    numerator: &[QuadExt],
    denominator: &[QuadExt],
    order: usize,
) -> Result<SeriesQ, ExactError> {
    let b0 = denominator.first().ok_or(ExactError::NonInvertibleSeries)?;
    if b0.is_zero() {
        return Err(ExactError::NonInvertibleSeries);
    }
    let d = b0.d();
    for c in numerator.iter().chain(denominator) {
        if c.d() != d {
            return Err(ExactError::FieldMismatch { left: d, right: c.d() });
        }
    }
    let b0_inv = b0.inverse()?;
    let zero = QuadExt::zero(d);
    let mut out: Vec<QuadExt> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = numerator.get(k).unwrap_or(&zero).clone();
        let j_max = k.min(denominator.len() - 1);
        for j in 1..=j_max {
            let b = &denominator[j];
            if !b.is_zero() {
                acc = acc - &out[k - j] * b;
            }
        }
        out.push(&acc * &b0_inv);
    }
    Ok(SeriesQ { coeffs: out, d })
}

/// Product of two polynomials (full, untruncated).
pub fn poly_mul(p: &[QuadExt], q: &[QuadExt]) -> Vec<QuadExt> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let d = p[0].d();
    let mut out = vec![QuadExt::zero(d); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            out[i + j] = &out[i + j] + &(a * b);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Rational;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<QuadExt> {
        v.iter().map(|&x| QuadExt::int(x, 1)).collect()
    }

    fn as_ints(s: &SeriesQ) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| c.as_rational().unwrap().to_integer().unwrap().try_into().unwrap())
            .collect()
    }

    #[test]
    fn geometric_series() {
        let s = series_div(&ints(&[1]), &ints(&[1, -1]), 5).unwrap();
        assert_eq!(as_ints(&s), vec![1; 6]);
    }

    #[test]
    fn two_minus_two_z_over_one_minus_z_to_the_fourth() {
        // (1 − z)⁴ = 1 − 4z + 6z² − 4z³ + z⁴
        let num = ints(&[2, -2]);
        let den = ints(&[1, -4, 6, -4, 1]);
        let s = series_div(&num, &den, 4).unwrap();
        assert_eq!(as_ints(&s), vec![2, 6, 12, 20, 30]);
        // oracle: convolving back reproduces the numerator
        let back = SeriesQ::from_poly(&den, 4, 1).unwrap().mul(&s).unwrap();
        assert_eq!(back, SeriesQ::from_poly(&num, 4, 1).unwrap());
    }

    #[test]
    fn zero_constant_term_rejected() {
        assert_eq!(
            series_div(&ints(&[1]), &ints(&[0, 1]), 3),
            Err(ExactError::NonInvertibleSeries)
        );
        assert_eq!(series_div(&ints(&[1]), &[], 3), Err(ExactError::NonInvertibleSeries));
    }

    #[test]
    fn mixed_field_inputs_rejected() {
        let num = vec![QuadExt::sqrt_d(2).unwrap()];
        assert!(matches!(
            series_div(&num, &ints(&[1, 1]), 2),
            Err(ExactError::FieldMismatch { .. })
        ));
    }

    fn arb_series(d: u32, len: usize) -> impl Strategy<Value = Vec<QuadExt>> {
        prop::collection::vec((-20i64..20, 1i64..6, -20i64..20), len).prop_map(move |v| {
            v.into_iter()
                .map(|(a, b, c)| {
                    QuadExt::new(Rational::new(a, b), Rational::new(c, 3), d).unwrap()
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn division_round_trip(
            (a, mut b) in prop::sample::select(vec![1u32, 5])
                .prop_flat_map(|d| (arb_series(d, 8), arb_series(d, 8)))
        ) {
            let order = 7;
            let d = a[0].d();
            if b[0].is_zero() {
                b[0] = QuadExt::one(d);
            }
            let sa = SeriesQ::from_poly(&a, order, d).unwrap();
            let sb = SeriesQ::from_poly(&b, order, d).unwrap();
            let prod = sa.mul(&sb).unwrap();
            let q = series_div(prod.coeffs(), sb.coeffs(), order).unwrap();
            prop_assert_eq!(q, sa);
        }
    }
}
