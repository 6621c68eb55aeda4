//! Realizing a prescribed labeled graph as a geometric graph in high
//! dimension, perturbing configurations off the discriminant, and explicit
//! isotopy witnesses.
//!
//! Realization targets squared distances `1 - eps` on edges and `1 + eps` on
//! non-edges, builds the centered Gram matrix `B = -1/2 J D J`, and embeds by
//! eigendecomposition (classical scaling). Writing `D` as the regular-simplex
//! distance matrix plus `eps S` with `S` hollow and entrywise `+-1`,
//! `B = J/2 - (eps/2) J S J`, so by Weyl's inequality every eigenvalue on the
//! centered subspace is at least `1/2 - (eps/2)(n-1)`: the matrix stays
//! positive semidefinite whenever `eps < 1/(n-1)`.
//!
//! The isotopy witness lifts two realizations of the same graph through the
//! joint homotopy `f_t(P) = (sqrt(1-t) P, sqrt(t) R)`; along it every squared
//! distance interpolates linearly in `t`, so signs are constant and the path
//! stays inside one chamber of the lifted space.

use crate::graphs::{
    discriminant_margin, geometric_graph, pairs, sign_condition, GraphError,
    LabeledGraph, PointConfig, SignCondition, DEFAULT_TOL,
};
use nalgebra::DMatrix;
use serde::Serialize;
use thiserror::Error;

/// Relative eigenvalue clamp for the PSD check in classical scaling.
pub const PSD_TOL: f64 = 1e-9;

/// Default sample count for witness paths.
pub const DEFAULT_WITNESS_STEPS: usize = 1024;

/// Tolerance on the linear-interpolation identity along witness paths.
pub const IDENTITY_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RealizeError {
    #[error("realization needs d >= n, got d = {d}, n = {n}")]
    DimensionTooSmall { d: usize, n: usize },
    #[error("eps = {eps} outside (0, {max}) for n = {n}")]
    InfeasibleEps { eps: f64, max: f64, n: usize },
    #[error("Gram matrix not positive semidefinite within tolerance (eigenvalue {eigenvalue})")]
    GramNotPsd { eigenvalue: f64 },
    #[error("perturbation search budget exhausted")]
    SearchBudget,
    #[error("witness inputs must share n and be nondegenerate realizations of one graph")]
    WitnessPrecondition,
    #[error("witness needs steps >= 2, got {steps}")]
    TooFewSteps { steps: usize },
    #[error("sign flip along witness path at leg {leg}, sample {sample}")]
    SignFlip { leg: usize, sample: usize },
    #[error("interpolation identity violated along witness path (error {error})")]
    IdentityViolated { error: f64 },
    #[error("realization failed verification (margin {margin})")]
    VerificationFailed { margin: f64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Largest admissible `eps` for `realize` on `n` vertices: the radius of the
/// provable positive-semidefinite neighborhood of the regular simplex.
pub fn eps_max(n: usize) -> f64 {
    1.0 / (n.max(2) - 1) as f64
}

/// A nondegenerate configuration in `R^{d x n}` whose geometric graph is `g`,
/// with discriminant margin at least `eps / 2`.
pub fn realize(g: &LabeledGraph, d: usize, eps: f64) -> Result<PointConfig, RealizeError> {
    let n = g.n();
    if d < n {
        return Err(RealizeError::DimensionTooSmall { d, n });
    }
    if !(eps > 0.0 && eps < eps_max(n)) {
        return Err(RealizeError::InfeasibleEps { eps, max: eps_max(n), n });
    }
    if n == 1 {
        return Ok(PointConfig::from_flat(d, 1, vec![0.0; d])?);
    }

    // Target squared distances.
    let mut dist = DMatrix::<f64>::zeros(n, n);
    for (i, j) in pairs(n) {
        let target = if g.has_edge(i, j)? { 1.0 - eps } else { 1.0 + eps };
        dist[(i - 1, j - 1)] = target;
        dist[(j - 1, i - 1)] = target;
    }

    // B = -1/2 J D J with J the centering projector.
    let row_mean: Vec<f64> = (0..n).map(|i| dist.row(i).sum() / n as f64).collect();
    let grand_mean = row_mean.iter().sum::<f64>() / n as f64;
    let mut gram = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = -0.5 * (dist[(i, j)] - row_mean[i] - row_mean[j] + grand_mean);
        }
    }

    let eigen = nalgebra::SymmetricEigen::new(gram);
    let max_eig = eigen.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    let mut spectrum: Vec<(f64, usize)> = eigen
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(k, &l)| (l, k))
        .collect();
    spectrum.sort_by(|a, b| b.0.total_cmp(&a.0));
    for &(l, _) in &spectrum {
        if l < -PSD_TOL * max_eig {
            return Err(RealizeError::GramNotPsd { eigenvalue: l });
        }
    }

    let mut coords = vec![0.0f64; n * d];
    for (axis, &(l, k)) in spectrum.iter().take(d.min(n)).enumerate() {
        let scale = l.max(0.0).sqrt();
        if scale == 0.0 {
            break;
        }
        for i in 0..n {
            coords[i * d + axis] = scale * eigen.eigenvectors[(i, k)];
        }
    }
    let p = PointConfig::from_flat(d, n, coords)?;

    let check = geometric_graph(&p, 0.0);
    let margin = discriminant_margin(&p);
    if check.graph != *g || margin < eps / 2.0 {
        return Err(RealizeError::VerificationFailed { margin });
    }
    Ok(p)
}

/// Scale a configuration off the discriminant: returns `(1 + eps) P` with a
/// positive margin and every strict pair relation of `P` preserved, `eps`
/// found by doubling search.
pub fn nondegenerate_perturbation(p: &PointConfig) -> Result<PointConfig, RealizeError> {
    let strict: Vec<(usize, usize, bool)> = pairs(p.n())
        .filter_map(|(i, j)| {
            let d2 = p.dist_sq(i, j);
            (d2 != 1.0).then_some((i, j, d2 < 1.0))
        })
        .collect();
    let mut eps = f64::EPSILON;
    for _ in 0..200 {
        let candidate = p.scaled(1.0 + eps);
        let preserved = strict
            .iter()
            .all(|&(i, j, near)| (candidate.dist_sq(i, j) < 1.0) == near);
        if preserved && discriminant_margin(&candidate) > 0.0 {
            return Ok(candidate);
        }
        eps *= 2.0;
    }
    Err(RealizeError::SearchBudget)
}

/// Report for a discretized isotopy witness path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathReport {
    pub min_margin: f64,
    pub steps: usize,
    pub ok: bool,
}

fn lift(p: &PointConfig, r: &PointConfig, t: f64) -> PointConfig {
    let (d, dr, n) = (p.d(), r.d(), p.n());
    let (a, b) = ((1.0 - t).sqrt(), t.sqrt());
    let mut coords = Vec::with_capacity(n * (d + dr));
    for v in 1..=n {
        coords.extend(p.point(v).iter().map(|x| a * x));
        coords.extend(r.point(v).iter().map(|x| b * x));
    }
    PointConfig::from_flat(d + dr, n, coords).expect("finite scaling")
}

fn sweep_leg(
    p: &PointConfig,
    r: &PointConfig,
    expected: &SignCondition,
    steps: usize,
    leg: usize,
    min_margin: &mut f64,
) -> Result<(), RealizeError> {
    let n = p.n();
    for sample in 0..steps {
        let t = sample as f64 / (steps - 1) as f64;
        let lifted = lift(p, r, t);
        // Linear interpolation of every squared distance.
        let mut worst = 0.0f64;
        for (i, j) in pairs(n) {
            let interp = (1.0 - t) * p.dist_sq(i, j) + t * r.dist_sq(i, j);
            worst = worst.max((lifted.dist_sq(i, j) - interp).abs());
        }
        if worst > IDENTITY_TOL {
            return Err(RealizeError::IdentityViolated { error: worst });
        }
        match sign_condition(&lifted, 0.0) {
            Ok(sigma) if sigma == *expected => {}
            _ => return Err(RealizeError::SignFlip { leg, sample }),
        }
        *min_margin = min_margin.min(discriminant_margin(&lifted));
    }
    Ok(())
}

/// Verified rigid-isotopy witness between `p0` and `p1` inside the lifted
/// space `R^{(d + d_R) x n}`: the concatenation of `f_t(p0)` for `t: 0 -> 1`
/// and the reverse of `f_t(p1)`, sampled on a uniform grid, with the sign
/// condition checked at every sample.
pub fn isotopy_witness(
    p0: &PointConfig,
    p1: &PointConfig,
    r: &PointConfig,
    steps: usize,
) -> Result<PathReport, RealizeError> {
    if steps < 2 {
        return Err(RealizeError::TooFewSteps { steps });
    }
    let n = p0.n();
    if p1.n() != n || r.n() != n || p0.d() != p1.d() {
        return Err(RealizeError::WitnessPrecondition);
    }
    let sigma = sign_condition(p0, DEFAULT_TOL).map_err(|_| RealizeError::WitnessPrecondition)?;
    let sigma1 = sign_condition(p1, DEFAULT_TOL).map_err(|_| RealizeError::WitnessPrecondition)?;
    let sigma_r = sign_condition(r, DEFAULT_TOL).map_err(|_| RealizeError::WitnessPrecondition)?;
    if sigma != sigma1 || sigma != sigma_r {
        return Err(RealizeError::WitnessPrecondition);
    }

    let mut min_margin = f64::INFINITY;
    sweep_leg(p0, r, &sigma, steps, 0, &mut min_margin)?;
    sweep_leg(p1, r, &sigma, steps, 1, &mut min_margin)?;
    Ok(PathReport {
        min_margin,
        steps,
        ok: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::pair_count;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn empty_graph_distances() {
        let g = LabeledGraph::empty(3).unwrap();
        let p = realize(&g, 3, 0.1).unwrap();
        for (i, j) in pairs(3) {
            assert!((p.dist_sq(i, j) - 1.1).abs() < 1e-9);
        }
    }

    #[test]
    fn complete_graph_distances() {
        let g = LabeledGraph::complete(4).unwrap();
        let p = realize(&g, 4, 0.1).unwrap();
        for (i, j) in pairs(4) {
            assert!((p.dist_sq(i, j) - 0.9).abs() < 1e-9);
        }
        assert_eq!(geometric_graph(&p, 0.0).graph, g);
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = LabeledGraph::empty(4).unwrap();
        assert!(matches!(
            realize(&g, 3, 0.1),
            Err(RealizeError::DimensionTooSmall { .. })
        ));
        assert!(matches!(
            realize(&g, 4, 0.4),
            Err(RealizeError::InfeasibleEps { .. })
        ));
        assert!(matches!(
            realize(&g, 4, 0.0),
            Err(RealizeError::InfeasibleEps { .. })
        ));
    }

    #[test]
    fn exhaustive_n5() {
        for mask in 0u64..1 << pair_count(5) {
            let g = LabeledGraph::from_edge_mask(5, mask).unwrap();
            let p = realize(&g, 5, 0.1).unwrap();
            assert_eq!(geometric_graph(&p, 0.0).graph, g, "mask {mask}");
            assert!(discriminant_margin(&p) >= 0.05);
        }
    }

    #[test]
    fn sampled_n6() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let mask: u64 = rng.gen::<u64>() & ((1 << pair_count(6)) - 1);
            let g = LabeledGraph::from_edge_mask(6, mask).unwrap();
            let p = realize(&g, 6, 0.1).unwrap();
            assert_eq!(geometric_graph(&p, 0.0).graph, g);
        }
    }

    #[test]
    fn rank_after_centering() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=6usize {
            let mask: u64 = rng.gen::<u64>() & ((1u64 << pair_count(n)) - 1);
            let g = LabeledGraph::from_edge_mask(n, mask).unwrap();
            let p = realize(&g, n, 0.1).unwrap();
            // Center the rows; the configuration must span at most n-1
            // dimensions.
            let d = p.d();
            let mut mat = DMatrix::<f64>::zeros(n, d);
            for v in 1..=n {
                for c in 0..d {
                    mat[(v - 1, c)] = p.point(v)[c];
                }
            }
            let mean = mat.row_sum() / n as f64;
            for v in 0..n {
                mat.set_row(v, &(mat.row(v) - &mean));
            }
            assert!(mat.rank(1e-9) < n);
        }
    }

    #[test]
    fn perturbation_examples() {
        let on = PointConfig::line(&[0.0, 1.0]).unwrap();
        let p = nondegenerate_perturbation(&on).unwrap();
        assert!(discriminant_margin(&p) > 0.0);
        assert_eq!(geometric_graph(&p, 0.0).graph, LabeledGraph::empty(2).unwrap());

        let off = PointConfig::line(&[0.0, 0.4, 3.0]).unwrap();
        let q = nondegenerate_perturbation(&off).unwrap();
        assert_eq!(
            geometric_graph(&q, 0.0).graph,
            geometric_graph(&off, 0.0).graph
        );

        let origin = PointConfig::new(2, vec![vec![0.0, 0.0]; 3]).unwrap();
        let r = nondegenerate_perturbation(&origin).unwrap();
        assert_eq!(geometric_graph(&r, 0.0).graph, LabeledGraph::complete(3).unwrap());
    }

    #[test]
    fn witness_constant_path() {
        let g = LabeledGraph::from_edges(3, &[(1, 2)]).unwrap();
        let p = realize(&g, 3, 0.1).unwrap();
        let r = realize(&g, 3, 0.1).unwrap();
        let report = isotopy_witness(&p, &p, &r, 64).unwrap();
        assert!(report.ok);
        assert!(report.min_margin > 0.0);
    }

    #[test]
    fn witness_two_vertex_line() {
        // (-2, 0) and (0, -2) are isomorphic but not rigidly isotopic inside
        // the line itself; the lifted path avoids the discriminant.
        let p0 = PointConfig::line(&[-2.0, 0.0]).unwrap();
        let p1 = PointConfig::line(&[0.0, -2.0]).unwrap();
        let g = LabeledGraph::empty(2).unwrap();
        let r = realize(&g, 2, 0.1).unwrap();
        let report = isotopy_witness(&p0, &p1, &r, 1000).unwrap();
        assert!(report.ok);
        assert!(report.min_margin > 0.0);
    }

    #[test]
    fn witness_random_graph_two_realizations() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mask: u64 = rng.gen::<u64>() & ((1 << pair_count(4)) - 1);
        let g = LabeledGraph::from_edge_mask(4, mask).unwrap();
        let p0 = realize(&g, 5, 0.08).unwrap();
        let p1 = realize(&g, 5, 0.02).unwrap();
        let r = realize(&g, 4, 0.1).unwrap();
        let report = isotopy_witness(&p0, &p1, &r, 256).unwrap();
        assert!(report.ok);
    }

    #[test]
    fn witness_rejects_mismatched_graphs() {
        let g = LabeledGraph::empty(3).unwrap();
        let h = LabeledGraph::complete(3).unwrap();
        let p0 = realize(&g, 3, 0.1).unwrap();
        let p1 = realize(&h, 3, 0.1).unwrap();
        let r = realize(&g, 3, 0.1).unwrap();
        assert!(matches!(
            isotopy_witness(&p0, &p1, &r, 16),
            Err(RealizeError::WitnessPrecondition)
        ));
        assert!(matches!(
            isotopy_witness(&p0, &p0, &r, 1),
            Err(RealizeError::TooFewSteps { .. })
        ));
    }
}
