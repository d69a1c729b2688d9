//! Dirac spectra of spherical space forms S³/Γ and their spectral action.
//!
//! Four independent routes to the same multiplicities are provided and
//! cross-checked: closed-form spectrum tables ([`closedspec`]), a numeric
//! eigensolve on Γ-invariant blocks ([`invariantdirac`]), generating
//! functions summed over group elements ([`genfun`]) and quadratic
//! multiplicity polynomials ([`multpoly`]). [`action`] sums test functions
//! over the spectrum.

pub mod exactmath;
pub mod groups;
pub mod genfun;
pub mod multpoly;
pub mod closedspec;
pub mod invariantdirac;
pub mod action;
