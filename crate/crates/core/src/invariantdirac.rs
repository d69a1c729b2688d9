//! Independent numerical oracle: the Dirac operator restricted to the
//! Γ-invariant part of `Hom(V_n, Σ)` for cyclic and dicyclic Γ.
//!
//! `D'` acts on the basis `A_0..A_n, B_0..B_n` by a two-term recurrence. It is
//! not symmetric in that basis, but `W·D'·W⁻¹` is, with
//! `W = diag(√binom(n, k))` on both letters. The oracle assembles the full
//! symmetrized matrix, restricts it to the invariant subspace and hands it to
//! a dense symmetric eigensolver.

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closedspec::{berger_spectrum, BergerMetric, ClosedSpecError};
use crate::groups::GroupSpec;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{0} is not cyclic or dicyclic")]
    UnsupportedGroup(GroupSpec),
    #[error("Berger parameter must be positive and finite, got {0}")]
    BadT(f64),
    #[error("invariant subspace is trivial for {spec} at n = {n}")]
    EmptyBlock { spec: GroupSpec, n: u64 },
    #[error("D' does not preserve the invariant subspace for {spec} at n = {n} (residual {residual:e})")]
    NotClosed { spec: GroupSpec, n: u64, residual: f64 },
    #[error(transparent)]
    Closed(#[from] ClosedSpecError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    A,
    B,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::A => "A",
            Letter::B => "B",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HomBasisElement {
    Single { letter: Letter, k: u64 },
    /// `first_k` term plus `sign` times the `second_k` term.
    Pair { first: Letter, first_k: u64, second: Letter, second_k: u64, sign: i8 },
}

impl fmt::Display for HomBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            HomBasisElement::Single { letter, k } => write!(f, "{letter}{k}"),
            HomBasisElement::Pair { first, first_k, second, second_k, sign } => {
                let op = if sign < 0 { '-' } else { '+' };
                write!(f, "{first}{first_k} {op} {second}{second_k}")
            }
        }
    }
}

impl HomBasisElement {
    fn terms(&self) -> Vec<(Letter, u64, f64)> {
        match *self {
            HomBasisElement::Single { letter, k } => vec![(letter, k, 1.0)],
            HomBasisElement::Pair { first, first_k, second, second_k, sign } => {
                vec![(first, first_k, 1.0), (second, second_k, f64::from(sign))]
            }
        }
    }
}

// Even k: slot 1 is A_k, slot 2 is B_k. Odd k swaps them.
fn slot1(k: u64) -> Letter {
    if k.is_multiple_of(2) {
        Letter::A
    } else {
        Letter::B
    }
}

fn slot2(k: u64) -> Letter {
    if k.is_multiple_of(2) {
        Letter::B
    } else {
        Letter::A
    }
}

fn divides(modulus: i64, x: i64) -> bool {
    x.rem_euclid(modulus) == 0
}

pub fn invariant_basis(spec: GroupSpec, n: u64) -> Result<Vec<HomBasisElement>, OracleError> {
    let ni = n as i64;
    match spec {
        GroupSpec::Cyclic(big_n) => {
            let m = i64::from(big_n);
            let mut out = Vec::new();
            for k in 0..=n {
                let ki = k as i64;
                if divides(m, 2 * ki - ni + 1) {
                    out.push(HomBasisElement::Single { letter: slot1(k), k });
                }
                if divides(m, 2 * ki - ni - 1) {
                    out.push(HomBasisElement::Single { letter: slot2(k), k });
                }
            }
            Ok(out)
        }
        GroupSpec::Dicyclic(big_n) => {
            if n.is_multiple_of(2) {
                return Ok(Vec::new());
            }
            let m = 2 * i64::from(big_n);
            Ok((0..=n)
                .filter(|&k| divides(m, 2 * k as i64 - ni + 1))
                .map(|k| HomBasisElement::Pair {
                    first: slot1(k),
                    first_k: k,
                    second: slot2(n - k),
                    second_k: n - k,
                    sign: if k % 2 == 0 { 1 } else { -1 },
                })
                .collect())
        }
        other => Err(OracleError::UnsupportedGroup(other)),
    }
}

fn coord(letter: Letter, k: u64, n: u64) -> usize {
    match letter {
        Letter::A => k as usize,
        Letter::B => (n + 1 + k) as usize,
    }
}

/// `W·D'·W⁻¹` on the full `2(n+1)`-dimensional space.
pub fn symmetrized_operator(n: u64, t: f64) -> DMatrix<f64> {
    let dim = 2 * (n as usize + 1);
    let mut s = DMatrix::zeros(dim, dim);
    for letter in [Letter::A, Letter::B] {
        for k in 0..=n {
            let i = coord(letter, k, n);
            let kf = k as f64;
            let nf = n as f64;
            // A_k with k even and B_k with k odd carry (n − 2k)/T; the others the negative.
            let forward = matches!((letter, k % 2), (Letter::A, 0) | (Letter::B, 1));
            s[(i, i)] = if forward { (nf - 2.0 * kf) / t } else { (2.0 * kf - nf) / t };
            if forward && k < n {
                let j = coord(letter, k + 1, n);
                let off = 2.0 * ((kf + 1.0) * (nf - kf)).sqrt();
                s[(i, j)] = off;
                s[(j, i)] = off;
            }
        }
    }
    s
}

#[derive(Debug, Clone)]
pub struct DiracBlock {
    pub n: u64,
    pub t: f64,
    pub basis: Vec<HomBasisElement>,
    /// `D = D' − (T/2 + 1/T)` in an orthonormal basis of the invariant subspace.
    pub matrix: DMatrix<f64>,
    pub closure_residual: f64,
}

impl DiracBlock {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.matrix.clone()).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

const CLOSURE_TOL: f64 = 1e-12;

pub fn dirac_block(spec: GroupSpec, n: u64, t: f64) -> Result<DiracBlock, OracleError> {
    if !(t.is_finite() && t > 0.0) {
        return Err(OracleError::BadT(t));
    }
    let basis = invariant_basis(spec, n)?;
    if basis.is_empty() {
        return Err(OracleError::EmptyBlock { spec, n });
    }
    let full = symmetrized_operator(n, t);
    let dim = full.nrows();
    let mut v = DMatrix::zeros(dim, basis.len());
    for (col, el) in basis.iter().enumerate() {
        for (letter, k, c) in el.terms() {
            v[(coord(letter, k, n), col)] = c;
        }
    }
    let u = v.qr().q();
    let h = u.transpose() * &full * &u;
    let residual = (&full * &u - &u * &h).amax();
    let scale = full.amax().max(1.0);
    if residual > CLOSURE_TOL * scale {
        return Err(OracleError::NotClosed { spec, n, residual });
    }
    let shift = t / 2.0 + 1.0 / t;
    let mut matrix = (&h + h.transpose()) * 0.5;
    for i in 0..matrix.nrows() {
        matrix[(i, i)] -= shift;
    }
    Ok(DiracBlock { n, t, basis, matrix, closure_residual: residual })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleEigenvalue {
    pub eigenvalue: f64,
    pub multiplicity: u64,
    pub n: u64,
}

/// Groups sorted values whose consecutive gaps are below `tol`.
fn cluster(values: impl IntoIterator<Item = (f64, u64)>, tol: f64) -> Vec<(f64, u64)> {
    let mut sorted: Vec<(f64, u64)> = values.into_iter().collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, u64)> = Vec::new();
    for (x, m) in sorted {
        match out.last_mut() {
            Some((y, acc)) if (x - *y).abs() <= tol => *acc += m,
            _ => out.push((x, m)),
        }
    }
    out
}

const CLUSTER_TOL: f64 = 1e-9;

/// Every block eigenvalue for `n ≤ n_max`, with multiplicity `(n + 1)` times
/// its multiplicity in the block. Sorted by `n`, then eigenvalue.
pub fn oracle_spectrum(spec: GroupSpec, t: f64, n_max: u64) -> Result<Vec<OracleEigenvalue>, OracleError> {
    if !matches!(spec, GroupSpec::Cyclic(_) | GroupSpec::Dicyclic(_)) {
        return Err(OracleError::UnsupportedGroup(spec));
    }
    let per_n: Vec<Vec<OracleEigenvalue>> = (0..=n_max)
        .into_par_iter()
        .map(|n| match dirac_block(spec, n, t) {
            Err(OracleError::EmptyBlock { .. }) => Ok(Vec::new()),
            Err(e) => Err(e),
            Ok(block) => Ok(cluster(block.eigenvalues().into_iter().map(|x| (x, 1)), CLUSTER_TOL)
                .into_iter()
                .map(|(eigenvalue, m)| OracleEigenvalue { eigenvalue, multiplicity: m * (n + 1), n })
                .collect()),
        })
        .collect::<Result<_, _>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

/// Merges across `n`: equal eigenvalues (within 1e-9) add multiplicities.
pub fn merge_oracle(entries: &[OracleEigenvalue]) -> Vec<(f64, u64)> {
    cluster(entries.iter().map(|e| (e.eigenvalue, e.multiplicity)), CLUSTER_TOL)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Agreement {
    pub max_abs_error: f64,
    /// Levels `n` where the two multisets differ in size or multiplicity.
    pub mismatched_levels: Vec<u64>,
}

impl Agreement {
    pub fn passes(&self, tol: f64) -> bool {
        self.mismatched_levels.is_empty() && self.max_abs_error <= tol
    }
}

/// Level-by-level comparison of the oracle with the closed-form Berger rows.
pub fn compare_with_closed(spec: GroupSpec, metric: &BergerMetric, n_max: u64) -> Result<Agreement, OracleError> {
    let oracle = oracle_spectrum(spec, metric.t_f64(), n_max)?;
    let closed = berger_spectrum(spec, metric, n_max)?;
    let mut max_abs_error: f64 = 0.0;
    let mut mismatched_levels = Vec::new();
    for n in 0..=n_max {
        let a = cluster(oracle.iter().filter(|e| e.n == n).map(|e| (e.eigenvalue, e.multiplicity)), CLUSTER_TOL);
        let b = cluster(closed.iter().filter(|e| e.n == n).map(|e| (e.eigenvalue(), e.multiplicity)), CLUSTER_TOL);
        if a.len() != b.len() || a.iter().zip(&b).any(|(x, y)| x.1 != y.1) {
            mismatched_levels.push(n);
            continue;
        }
        for (x, y) in a.iter().zip(&b) {
            max_abs_error = max_abs_error.max((x.0 - y.0).abs());
        }
    }
    Ok(Agreement { max_abs_error, mismatched_levels })
}
