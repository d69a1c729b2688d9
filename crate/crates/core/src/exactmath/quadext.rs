use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ExactError, Rational};

/// Exact element `a + b√d` of the quadratic field ℚ(√d).
///
/// `d` is a square-free natural number. For `d = 1` the field is ℚ itself and
/// `b` is always stored as zero. Equality is component-wise, which is exact
/// equality since `{1, √d}` is a ℚ-basis for square-free `d > 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: u32,
}

fn is_square_free(d: u32) -> bool {
    d >= 1 && (2..).take_while(|p| p * p <= d).all(|p| !d.is_multiple_of(p * p))
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: u32) -> Result<Self, ExactError> {
        if !is_square_free(d) {
            return Err(ExactError::BadRadicand(d));
        }
        Ok(Self::canonical(a, b, d))
    }

    fn canonical(a: Rational, b: Rational, d: u32) -> Self {
        if d == 1 {
            QuadExt { a: a + b, b: Rational::zero(), d }
        } else {
            QuadExt { a, b, d }
        }
    }

    pub fn rational(a: Rational, d: u32) -> Self {
        QuadExt { a, b: Rational::zero(), d }
    }

    pub fn int(n: i64, d: u32) -> Self {
        Self::rational(Rational::integer(n), d)
    }

    pub fn zero(d: u32) -> Self {
        Self::int(0, d)
    }

    pub fn one(d: u32) -> Self {
        Self::int(1, d)
    }

    /// `√d` itself.
    pub fn sqrt_d(d: u32) -> Result<Self, ExactError> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, if the irrational part vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn conjugate(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    /// Field norm `a² − d b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * i64::from(self.d)
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * f64::from(self.d).sqrt()
    }

    fn same_field(&self, rhs: &QuadExt) -> Result<(), ExactError> {
        if self.d == rhs.d {
            Ok(())
        } else {
            Err(ExactError::FieldMismatch { left: self.d, right: rhs.d })
        }
    }

    pub fn checked_add(&self, rhs: &QuadExt) -> Result<Self, ExactError> {
        self.same_field(rhs)?;
        Ok(QuadExt { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d: self.d })
    }

    pub fn checked_sub(&self, rhs: &QuadExt) -> Result<Self, ExactError> {
        self.same_field(rhs)?;
        Ok(QuadExt { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d: self.d })
    }

    pub fn checked_mul(&self, rhs: &QuadExt) -> Result<Self, ExactError> {
        self.same_field(rhs)?;
        let d = i64::from(self.d);
        Ok(QuadExt {
            a: &self.a * &rhs.a + &self.b * &rhs.b * d,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d,
        })
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(QuadExt { a: &self.a / &n, b: -(&self.b / &n), d: self.d })
    }

    pub fn checked_div(&self, rhs: &QuadExt) -> Result<Self, ExactError> {
        self.same_field(rhs)?;
        self.checked_mul(&rhs.inverse()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadExt { a: &self.a * r, b: &self.b * r, d: self.d }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(QuadExt::one(self.d), |acc, _| &acc * self)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}·√{}", self.a, self.b, self.d)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct QuadExtRepr {
    a: Rational,
    b: Rational,
    d: u32,
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        QuadExtRepr { a: self.a.clone(), b: self.b.clone(), d: self.d }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = QuadExtRepr::deserialize(deserializer)?;
        QuadExt::new(r.a, r.b, r.d).map_err(serde::de::Error::custom)
    }
}

// Operator forms panic on mixed fields; the `checked_*` methods return errors instead.
macro_rules! quad_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$checked(rhs).expect("quadratic field arithmetic")
            }
        }
        impl $trait<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$checked(&rhs).expect("quadratic field arithmetic")
            }
        }
        impl $trait<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$checked(rhs).expect("quadratic field arithmetic")
            }
        }
    };
}

quad_binop!(Add, add, checked_add);
quad_binop!(Sub, sub, checked_sub);
quad_binop!(Mul, mul, checked_mul);
quad_binop!(Div, div, checked_div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -&self.a, b: -&self.b, d: self.d }
    }
}
