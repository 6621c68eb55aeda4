//! Positive-inertia indices for the quadric family attached to a sign
//! condition.
//!
//! For a sign condition `sigma` on `n` vertices and regularization
//! `epsilon > 0`, the family consists of the quadrics
//! `h_{ij}(x, z) = sigma_ij ||x_i - x_j||^2 - (sigma_ij + epsilon) z^2` and
//! `h_0(x, z) = ||x||^2 - z^2 / epsilon` on `R^{dn + 1}`. A covector
//! `omega` in the polytope `Omega = {omega_0 >= 0, omega_ij <= 0}` cap `S^k`
//! contracts the family to one symmetric matrix `omega H` in block form:
//! a scalar `-omega_0/eps - sum omega_ij (sigma_ij + eps)` and the block
//! `(omega_0 1_n + sum omega_ij U_ij) (x) 1_d`, where `U_ij` represents
//! `sigma_ij (t_i - t_j)^2`. Tensoring with the identity multiplies each
//! eigenvalue's multiplicity by `d`, which is the whole content of the
//! decomposition `ind+(omega H) = d ind1+(omega) + ind0+(omega)`.

use crate::graphs::{pair_count, pairs, GraphError, SignCondition};
use nalgebra::DMatrix;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

/// Relative eigenvalue tolerance for deciding inertia.
pub const INDEX_TOL: f64 = 1e-8;

/// Default regularization for census runs.
pub const DEFAULT_EPSILON: f64 = 1e-3;

/// Fixed chunk count: census results are independent of worker count.
const CENSUS_CHUNKS: u64 = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadricsError {
    #[error("an eigenvalue lies within the ambiguity band; perturb omega")]
    AmbiguousIndex,
    #[error("omega must satisfy omega_0 >= 0 and omega_ij <= 0 with nonzero norm")]
    InvalidOmega,
    #[error("omega has {got} pair entries, expected {expected}")]
    OmegaLength { got: usize, expected: usize },
    #[error("epsilon must be positive and finite")]
    InvalidEpsilon,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A unit covector in the polytope patch
/// `Omega = { omega_0 >= 0, omega_ij <= 0 } cap S^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaPoint {
    omega0: f64,
    pair_weights: Vec<f64>,
}

impl OmegaPoint {
    /// Normalizes the input onto the unit sphere; signs must already match
    /// the orthant.
    pub fn new(omega0: f64, pair_weights: Vec<f64>) -> Result<Self, QuadricsError> {
        if omega0 < 0.0 || pair_weights.iter().any(|&w| w > 0.0 || !w.is_finite()) {
            return Err(QuadricsError::InvalidOmega);
        }
        let norm_sq = omega0 * omega0 + pair_weights.iter().map(|w| w * w).sum::<f64>();
        if !(norm_sq > 0.0 && norm_sq.is_finite()) {
            return Err(QuadricsError::InvalidOmega);
        }
        let norm = norm_sq.sqrt();
        Ok(Self {
            omega0: omega0 / norm,
            pair_weights: pair_weights.iter().map(|w| w / norm).collect(),
        })
    }

    /// The distinguished vertex `(1, 0, ..., 0)`.
    pub fn axis(pairs: usize) -> Self {
        Self {
            omega0: 1.0,
            pair_weights: vec![0.0; pairs],
        }
    }

    /// Uniform sample on the orthant patch: a Gaussian sphere point folded
    /// onto the sign pattern `(+, -, ..., -)`.
    pub fn sample(pairs: usize, rng: &mut impl Rng) -> Self {
        loop {
            let omega0: f64 = rng.sample::<f64, _>(StandardNormal).abs();
            let pair_weights: Vec<f64> = (0..pairs)
                .map(|_| -rng.sample::<f64, _>(StandardNormal).abs())
                .collect();
            if let Ok(w) = Self::new(omega0, pair_weights) {
                return w;
            }
        }
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn pair_weights(&self) -> &[f64] {
        &self.pair_weights
    }
}

/// The quadric family of a sign condition in ambient dimension `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadricFamily {
    d: usize,
    sigma: SignCondition,
    epsilon: f64,
}

/// The two halves of the index decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexSplit {
    /// Positive index of the reduced `n x n` matrix.
    pub ind1: usize,
    /// 1 exactly when the scalar block is positive.
    pub ind0: usize,
}

impl QuadricFamily {
    pub fn new(d: usize, sigma: SignCondition, epsilon: f64) -> Result<Self, QuadricsError> {
        if d == 0 {
            return Err(QuadricsError::InvalidEpsilon);
        }
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(QuadricsError::InvalidEpsilon);
        }
        Ok(Self { d, sigma, epsilon })
    }

    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn sigma(&self) -> &SignCondition {
        &self.sigma
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    fn check_omega(&self, w: &OmegaPoint) -> Result<(), QuadricsError> {
        let expected = pair_count(self.n());
        if w.pair_weights.len() != expected {
            return Err(QuadricsError::OmegaLength { got: w.pair_weights.len(), expected });
        }
        Ok(())
    }

    /// Scalar block `-omega_0/eps - sum omega_ij (sigma_ij + eps)`.
    pub fn scalar_block(&self, w: &OmegaPoint) -> f64 {
        let mut acc = -w.omega0 / self.epsilon;
        for (idx, _) in pairs(self.n()).enumerate() {
            let sigma = self.sigma.signs()[idx] as f64;
            acc -= w.pair_weights[idx] * (sigma + self.epsilon);
        }
        acc
    }

    /// Reduced matrix `omega_0 1_n + sum omega_ij U_ij` on `R^n`.
    pub fn reduced_matrix(&self, w: &OmegaPoint) -> DMatrix<f64> {
        let n = self.n();
        let mut m = DMatrix::<f64>::identity(n, n) * w.omega0;
        for (idx, (i, j)) in pairs(n).enumerate() {
            let c = w.pair_weights[idx] * self.sigma.signs()[idx] as f64;
            m[(i - 1, i - 1)] += c;
            m[(j - 1, j - 1)] += c;
            m[(i - 1, j - 1)] -= c;
            m[(j - 1, i - 1)] -= c;
        }
        m
    }

    /// Full `(dn + 1) x (dn + 1)` matrix of the contracted family, scalar
    /// block first.
    pub fn full_matrix(&self, w: &OmegaPoint) -> DMatrix<f64> {
        let (n, d) = (self.n(), self.d);
        let size = d * n + 1;
        let mut m = DMatrix::<f64>::zeros(size, size);
        m[(0, 0)] = self.scalar_block(w);
        let reduced = self.reduced_matrix(w);
        for i in 0..n {
            for j in 0..n {
                for axis in 0..d {
                    m[(1 + i * d + axis, 1 + j * d + axis)] = reduced[(i, j)];
                }
            }
        }
        m
    }

    /// Positive inertia index of the full matrix: the number of eigenvalues
    /// above the tolerance band. Errors when any eigenvalue falls inside the
    /// band.
    pub fn index_full(&self, w: &OmegaPoint) -> Result<usize, QuadricsError> {
        self.check_omega(w)?;
        count_positive(self.full_matrix(w).symmetric_eigenvalues().as_slice())
    }

    /// The decomposition `(ind1, ind0)` with
    /// `ind+(omega H) = d * ind1 + ind0`.
    pub fn index_split(&self, w: &OmegaPoint) -> Result<IndexSplit, QuadricsError> {
        self.check_omega(w)?;
        let ind1 = count_positive(self.reduced_matrix(w).symmetric_eigenvalues().as_slice())?;
        let scalar = self.scalar_block(w);
        // Conditioning scale of the scalar block: sum of absolute
        // contributions.
        let scale = w.omega0 / self.epsilon
            + w.pair_weights
                .iter()
                .map(|p| p.abs() * (1.0 + self.epsilon))
                .sum::<f64>();
        if scalar.abs() <= INDEX_TOL * scale {
            return Err(QuadricsError::AmbiguousIndex);
        }
        Ok(IndexSplit {
            ind1,
            ind0: usize::from(scalar > 0.0),
        })
    }
}

fn count_positive(eigenvalues: &[f64]) -> Result<usize, QuadricsError> {
    let scale = eigenvalues.iter().fold(0.0f64, |acc, &l| acc.max(l.abs()));
    if scale == 0.0 || eigenvalues.iter().any(|&l| l.abs() <= INDEX_TOL * scale) {
        return Err(QuadricsError::AmbiguousIndex);
    }
    Ok(eigenvalues.iter().filter(|&&l| l > 0.0).count())
}

/// Index values allowed by the decomposition: `{l d, l d + 1 : 0 <= l <= n}`.
pub fn allowed_index_values(n: usize, d: usize) -> BTreeSet<usize> {
    (0..=n).flat_map(|l| [l * d, l * d + 1]).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusReport {
    pub samples: usize,
    /// Index values observed on the full matrices.
    pub observed_values: BTreeSet<usize>,
    /// Samples where the full index disagreed with `d*ind1 + ind0` or left
    /// the allowed value set.
    pub violations: usize,
    /// Samples skipped because an eigenvalue fell inside the tolerance band.
    pub ambiguous: usize,
}

/// Samples `omega` uniformly on the orthant patch and compares the full
/// positive index against the decomposition on every non-ambiguous sample.
///
/// Chunked deterministically by `seed`, so the result does not depend on the
/// worker count.
pub fn index_value_census(fam: &QuadricFamily, samples: usize, seed: u64) -> CensusReport {
    let k = pair_count(fam.n());
    let allowed = allowed_index_values(fam.n(), fam.d());
    let per_chunk = samples / CENSUS_CHUNKS as usize;
    let remainder = samples % CENSUS_CHUNKS as usize;

    (0..CENSUS_CHUNKS)
        .into_par_iter()
        .map(|chunk| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed.wrapping_add(chunk.wrapping_mul(0x9E3779B97F4A7C15)));
            let count = per_chunk + usize::from((chunk as usize) < remainder);
            let mut report = CensusReport {
                samples: count,
                observed_values: BTreeSet::new(),
                violations: 0,
                ambiguous: 0,
            };
            for _ in 0..count {
                let w = OmegaPoint::sample(k, &mut rng);
                match (fam.index_full(&w), fam.index_split(&w)) {
                    (Ok(full), Ok(split)) => {
                        report.observed_values.insert(full);
                        if full != fam.d() * split.ind1 + split.ind0 || !allowed.contains(&full) {
                            report.violations += 1;
                        }
                    }
                    _ => report.ambiguous += 1,
                }
            }
            report
        })
        .reduce(
            || CensusReport {
                samples: 0,
                observed_values: BTreeSet::new(),
                violations: 0,
                ambiguous: 0,
            },
            |mut a, b| {
                a.samples += b.samples;
                a.observed_values.extend(b.observed_values);
                a.violations += b.violations;
                a.ambiguous += b.ambiguous;
                a
            },
        )
}
