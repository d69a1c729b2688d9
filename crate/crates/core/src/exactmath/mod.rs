//! Exact arithmetic: rationals, quadratic fields ℚ(√d) and truncated power series.

mod quadext;
mod rational;
mod series;

pub use quadext::QuadExt;
pub use rational::Rational;
pub use series::{poly_mul, series_div, SeriesQ};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("operands live in different fields: Q(sqrt {left}) vs Q(sqrt {right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("series truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("series with zero constant term is not invertible")]
    NonInvertibleSeries,
    #[error("radicand {0} is not square-free")]
    BadRadicand(u32),
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
}
