//! Closed-form bound evaluators for counts of isomorphism and rigid-isotopy
//! classes. The bounds overflow doubles immediately, so everything lives in
//! log space.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("bound requires n >= 1 and d >= 1")]
    EmptyGrid,
    #[error("upper bound requires n >= 4d + 1, got n = {n}, d = {d}")]
    UpperHypothesis { n: u64, d: u64 },
    #[error("lower bound requires n > d + 1, got n = {n}, d = {d}")]
    LowerHypothesis { n: u64, d: u64 },
}

/// `log` of the sign-pattern bound `(4e/d)^{nd} n^{nd}`.
pub fn warren_bound_log(n: u64, d: u64) -> Result<f64, BoundsError> {
    if n == 0 || d == 0 {
        return Err(BoundsError::EmptyGrid);
    }
    let (n, d) = (n as f64, d as f64);
    Ok(n * d * ((4.0 * std::f64::consts::E / d).ln() + n.ln()))
}

/// `log` of the rigid-isotopy upper bound `2dn (3e/(2d))^{dn} n^{dn}`,
/// valid for `n >= 4d + 1`.
pub fn isotopy_upper_log(n: u64, d: u64) -> Result<f64, BoundsError> {
    if n == 0 || d == 0 {
        return Err(BoundsError::EmptyGrid);
    }
    if n < 4 * d + 1 {
        return Err(BoundsError::UpperHypothesis { n, d });
    }
    let (n, d) = (n as f64, d as f64);
    Ok((2.0 * d * n).ln() + d * n * ((3.0 * std::f64::consts::E / (2.0 * d)).ln() + n.ln()))
}

/// `log` of the isomorphism-class lower bound `(n / ((d+1) e^2))^{dn}`,
/// valid for `n > d + 1`.
pub fn isomorphism_lower_log(n: u64, d: u64) -> Result<f64, BoundsError> {
    if n == 0 || d == 0 {
        return Err(BoundsError::EmptyGrid);
    }
    if n <= d + 1 {
        return Err(BoundsError::LowerHypothesis { n, d });
    }
    let (n, d) = (n as f64, d as f64);
    Ok(d * n * (n.ln() - (d + 1.0).ln() - 2.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsRow {
    pub n: u64,
    pub lower_log: f64,
    pub upper_log: f64,
    pub ratio: f64,
}

/// Table of `(n, lower, upper, upper/lower)` demonstrating that the two
/// log-counts agree up to a factor tending to one.
pub fn log_equivalence_report(ns: &[u64], d: u64) -> Result<Vec<BoundsRow>, BoundsError> {
    ns.iter()
        .map(|&n| {
            let lower_log = isomorphism_lower_log(n, d)?;
            let upper_log = isotopy_upper_log(n, d)?;
            Ok(BoundsRow {
                n,
                lower_log,
                upper_log,
                ratio: upper_log / lower_log,
            })
        })
        .collect()
}
