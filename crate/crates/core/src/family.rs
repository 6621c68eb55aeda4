//! Recursive construction of large families of pairwise non-isomorphic
//! geometric graphs in `R^d`.
//!
//! The scaffold is the regular unit simplex with vertices `P_1..P_{d+1}`.
//! Vertices are grown round-robin: vertex `i` lives in cluster
//! `((i-1) mod (d+1)) + 1` inside the ball `B(P_cluster(i), eps_i)`, where
//! `eps_i = eps0 / C^(n-i)` and `C` is a probed Lipschitz constant for the
//! sphere-intersection map. To add vertex `k`, pick a transversal `pi` of one
//! previously placed point per cluster other than `cluster(k)`; the unit
//! spheres around those points meet in a well-conditioned point `q_pi` near
//! `P_cluster(k)`, which is nudged toward the transversal's centroid until it
//! sits strictly inside all transversal balls, off every other unit sphere,
//! inside its own cluster ball, and creates no `(d+1)`-fold sphere
//! intersection. Distinct transversals give the new vertex distinct neighbor
//! sets, so the labeled graphs of a family stay pairwise distinct.

use crate::graphs::{geometric_graph, GraphError, LabeledGraph, PointConfig};
use nalgebra::{DMatrix, DVector};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;
use thiserror::Error;

/// Margin demanded of every strict geometric condition (squared distances).
pub const GEOMETRY_TOL: f64 = 1e-9;

/// Relative singular-value cutoff for the sphere linear systems.
const RANK_TOL: f64 = 1e-12;

/// Default full-expansion budget.
pub const DEFAULT_MEMBER_BUDGET: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("sphere intersection needs exactly d points of matching dimension")]
    BadInput,
    #[error("singular linear system: sphere centers are affinely dependent")]
    DegenerateCenters,
    #[error("the spheres have empty intersection")]
    EmptyIntersection,
    #[error("configuration invalid: {0}")]
    InvalidConfig(String),
    #[error("epsilon schedule bottoms out at {eps1:e}; raise eps0 or lower n")]
    ScheduleTooTight { eps1: f64 },
    #[error("transversal {pi:?} is not one prior point per foreign cluster")]
    BadTransversal { pi: Vec<usize> },
    #[error("nudge search failed for transversal {pi:?} while adding vertex {vertex}")]
    ConstructionFailure { pi: Vec<usize>, vertex: usize },
    #[error("family inconsistency: {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The regular `d`-simplex with unit edges, centered at the origin:
/// `d + 1` points in `R^d`.
pub fn regular_simplex(d: usize) -> PointConfig {
    assert!(d >= 1);
    // Scaled standard basis of R^{d+1} has pairwise distances 1; reflect the
    // all-ones direction onto the last axis and drop it.
    let m = d + 1;
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let u = DVector::<f64>::repeat(m, 1.0 / (m as f64).sqrt());
    let mut w = u.clone();
    w[m - 1] -= 1.0;
    let w = w.normalize();
    let mut points = Vec::with_capacity(m);
    for i in 0..m {
        let mut q = DVector::<f64>::zeros(m);
        q[i] = inv_sqrt2;
        let reflected = &q - &w * (2.0 * w.dot(&q));
        points.push(reflected.rows(0, d).iter().cloned().collect::<Vec<f64>>());
    }
    // Center.
    let mean: Vec<f64> = (0..d)
        .map(|c| points.iter().map(|p| p[c]).sum::<f64>() / m as f64)
        .collect();
    for p in &mut points {
        for c in 0..d {
            p[c] -= mean[c];
        }
    }
    PointConfig::new(d, points).expect("finite simplex")
}

fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Both solutions of `||q - c_i|| = 1` for `d` centers in `R^d`, when the
/// centers are affinely independent.
#[derive(Debug, Clone)]
enum SphereMeet {
    Points(Vec<f64>, Vec<f64>),
    Empty,
}

fn sphere_meet(centers: &[&[f64]]) -> Result<SphereMeet, FamilyError> {
    let d = centers.len();
    if d == 0 || centers.iter().any(|c| c.len() != d) {
        return Err(FamilyError::BadInput);
    }
    let first = centers[0];
    let (particular, direction) = if d == 1 {
        (vec![first[0]], vec![1.0])
    } else {
        // Subtracting the first sphere equation from the rest leaves the
        // linear system 2 (c_i - c_1) . q = ||c_i||^2 - ||c_1||^2.
        let mut a = DMatrix::<f64>::zeros(d - 1, d);
        let mut b = DVector::<f64>::zeros(d - 1);
        let norm1: f64 = first.iter().map(|x| x * x).sum();
        for (row, c) in centers[1..].iter().enumerate() {
            for col in 0..d {
                a[(row, col)] = 2.0 * (c[col] - first[col]);
            }
            b[row] = c.iter().map(|x| x * x).sum::<f64>() - norm1;
        }
        let svd = a.clone().svd(true, true);
        let smax = svd.singular_values.max();
        if smax.is_nan() || smax <= 0.0 || svd.singular_values.min() <= RANK_TOL * smax {
            return Err(FamilyError::DegenerateCenters);
        }
        let particular = svd
            .solve(&b, RANK_TOL * smax)
            .map_err(|_| FamilyError::DegenerateCenters)?;
        // The intersection line runs along the kernel of A, spanned by the
        // generalized cross product of its rows (cofactor expansion).
        let mut direction = vec![0.0f64; d];
        let mut scale = 0.0f64;
        for (col, slot) in direction.iter_mut().enumerate() {
            let det = a.clone().remove_column(col).determinant();
            *slot = if col % 2 == 0 { det } else { -det };
            scale += det * det;
        }
        let scale = scale.sqrt();
        if scale.is_nan() || scale <= 0.0 {
            return Err(FamilyError::DegenerateCenters);
        }
        for x in &mut direction {
            *x /= scale;
        }
        (particular.iter().cloned().collect(), direction)
    };

    // Intersect the line with the first sphere: t^2 + 2 t u.(q0 - c1) +
    // ||q0 - c1||^2 - 1 = 0 with u the unit direction.
    let offset: Vec<f64> = particular
        .iter()
        .zip(first)
        .map(|(q, c)| q - c)
        .collect();
    let half_b: f64 = direction.iter().zip(&offset).map(|(u, o)| u * o).sum();
    let c0: f64 = offset.iter().map(|o| o * o).sum::<f64>() - 1.0;
    let disc = half_b * half_b - c0;
    if disc < 0.0 {
        return Ok(SphereMeet::Empty);
    }
    let root = disc.sqrt();
    let t_plus = -half_b + root;
    let t_minus = -half_b - root;
    let at = |t: f64| -> Vec<f64> {
        particular
            .iter()
            .zip(&direction)
            .map(|(q, u)| q + t * u)
            .collect()
    };
    Ok(SphereMeet::Points(at(t_plus), at(t_minus)))
}

/// The point of `S(c_1, 1) cap ... cap S(c_d, 1)` nearer to `anchor`; ties
/// broken by lexicographic coordinate comparison.
pub fn sphere_intersection(centers: &[&[f64]], anchor: &[f64]) -> Result<Vec<f64>, FamilyError> {
    if anchor.len() != centers.len() {
        return Err(FamilyError::BadInput);
    }
    match sphere_meet(centers)? {
        SphereMeet::Empty => Err(FamilyError::EmptyIntersection),
        SphereMeet::Points(p, q) => {
            let (dp, dq) = (dist_sq(&p, anchor), dist_sq(&q, anchor));
            let lex_before = |a: &[f64], b: &[f64]| {
                a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne())
                    == Some(std::cmp::Ordering::Less)
            };
            if dp < dq || (dp == dq && lex_before(&p, &q)) {
                Ok(p)
            } else {
                Ok(q)
            }
        }
    }
}

/// Probe the Lipschitz constant of the sphere-intersection map near the
/// simplex: perturb the first `d` vertices inside balls of radius `h` and
/// measure the displacement of the intersection against the worst input
/// displacement.
pub fn estimate_lipschitz(d: usize, probes: usize, seed: u64) -> Result<f64, FamilyError> {
    let simplex = regular_simplex(d);
    let anchor = simplex.point(d + 1).to_vec();
    let h = 1e-5;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 1.0;
    for _ in 0..probes {
        let mut centers = Vec::with_capacity(d);
        let mut max_input: f64 = 0.0;
        for v in 1..=d {
            let mut c = simplex.point(v).to_vec();
            let mut delta_sq = 0.0;
            for x in &mut c {
                let delta = rng.gen_range(-h..h);
                *x += delta;
                delta_sq += delta * delta;
            }
            max_input = max_input.max(delta_sq.sqrt());
            centers.push(c);
        }
        let refs: Vec<&[f64]> = centers.iter().map(|c| c.as_slice()).collect();
        let q = sphere_intersection(&refs, &anchor)?;
        worst = worst.max(dist_sq(&q, &anchor).sqrt() / max_input);
    }
    // Light headroom only: the P1 ball checks re-verify containment at every
    // insertion, and an oversized C starves the epsilon schedule.
    Ok((worst * 1.25).clamp(2.0, 64.0))
}

/// Parameters of a family run.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyConfig {
    pub d: usize,
    pub n_target: usize,
    pub eps0: f64,
    /// Lipschitz constant estimate for the epsilon schedule, at least 1.
    pub lipschitz: f64,
    pub seed: u64,
    /// Full-expansion cap; past it, lineages are sampled by seed.
    pub member_budget: usize,
}

impl FamilyConfig {
    /// Default configuration: `eps0 = 1e-3`, probed Lipschitz constant,
    /// budget of 10^5 members.
    pub fn new(d: usize, n_target: usize, seed: u64) -> Result<Self, FamilyError> {
        let cfg = Self {
            d,
            n_target,
            eps0: 1e-3,
            lipschitz: estimate_lipschitz(d, 200, seed ^ 0x5EED)?,
            seed,
            member_budget: DEFAULT_MEMBER_BUDGET,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        if self.d == 0 {
            return Err(FamilyError::InvalidConfig("d must be at least 1".into()));
        }
        if self.n_target < self.d + 2 {
            return Err(FamilyError::InvalidConfig(format!(
                "n_target must be at least d + 2 = {}",
                self.d + 2
            )));
        }
        if !(self.eps0 > 0.0 && self.eps0 <= 0.02) {
            return Err(FamilyError::InvalidConfig("eps0 must lie in (0, 0.02]".into()));
        }
        if self.lipschitz < 1.0 {
            return Err(FamilyError::InvalidConfig("lipschitz must be at least 1".into()));
        }
        let eps1 = self.epsilons()[0];
        if eps1 < 1e-7 {
            return Err(FamilyError::ScheduleTooTight { eps1 });
        }
        Ok(())
    }

    /// `eps_i = eps0 / C^(n - i)` for `i = 1..=n`, strictly increasing.
    pub fn epsilons(&self) -> Vec<f64> {
        (1..=self.n_target)
            .map(|i| self.eps0 / self.lipschitz.powi((self.n_target - i) as i32))
            .collect()
    }

    /// Cluster label of vertex `i` (1-based, in `1..=d+1`).
    pub fn cluster(&self, i: usize) -> usize {
        (i - 1) % (self.d + 1) + 1
    }
}

/// A family member: the configuration, its labeled graph, and the chosen
/// transversal per growth step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyMember {
    pub points: PointConfig,
    pub graph: LabeledGraph,
    pub lineage: Vec<Vec<usize>>,
}

/// Shared context for growing one family.
pub struct FamilyBuilder {
    cfg: FamilyConfig,
    simplex: PointConfig,
    epsilons: Vec<f64>,
}

impl FamilyBuilder {
    pub fn new(cfg: FamilyConfig) -> Result<Self, FamilyError> {
        cfg.validate()?;
        let simplex = regular_simplex(cfg.d);
        let epsilons = cfg.epsilons();
        Ok(Self { cfg, simplex, epsilons })
    }

    pub fn config(&self) -> &FamilyConfig {
        &self.cfg
    }

    /// The singleton base family member: the simplex shrunk just inside the
    /// unit distances, so its geometric graph is the complete graph and the
    /// configuration is off the discriminant.
    pub fn base_member(&self) -> Result<FamilyMember, FamilyError> {
        let shrink = 1.0 - self.epsilons[0] / 2.0;
        let points = self.simplex.scaled(shrink);
        let gg = geometric_graph(&points, GEOMETRY_TOL);
        if gg.degenerate || gg.graph != LabeledGraph::complete(self.cfg.d + 1)? {
            return Err(FamilyError::InternalInconsistency(
                "base simplex is not a clean complete graph".into(),
            ));
        }
        Ok(FamilyMember {
            points,
            graph: gg.graph,
            lineage: Vec::new(),
        })
    }

    /// All transversals available for the next vertex of `member`: one prior
    /// index per cluster other than the new vertex's own, in cluster order.
    pub fn transversals(&self, member: &FamilyMember) -> Vec<Vec<usize>> {
        let k = member.points.n() + 1;
        let own = self.cfg.cluster(k);
        let mut pools: Vec<Vec<usize>> = Vec::new();
        for cluster in 1..=self.cfg.d + 1 {
            if cluster == own {
                continue;
            }
            pools.push((1..k).filter(|&i| self.cfg.cluster(i) == cluster).collect());
        }
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for pool in pools {
            let mut next = Vec::with_capacity(out.len() * pool.len());
            for prefix in &out {
                for &i in &pool {
                    let mut ext = prefix.clone();
                    ext.push(i);
                    next.push(ext);
                }
            }
            out = next;
        }
        out
    }

    fn check_transversal(&self, member: &FamilyMember, pi: &[usize]) -> Result<(), FamilyError> {
        let k = member.points.n() + 1;
        let own = self.cfg.cluster(k);
        let mut expected: Vec<usize> = (1..=self.cfg.d + 1).filter(|&c| c != own).collect();
        let clusters: Vec<usize> = pi.iter().map(|&i| self.cfg.cluster(i)).collect();
        expected.retain(|c| !clusters.contains(c));
        if pi.len() != self.cfg.d
            || !expected.is_empty()
            || pi.iter().any(|&i| i == 0 || i >= k)
        {
            return Err(FamilyError::BadTransversal { pi: pi.to_vec() });
        }
        Ok(())
    }

    /// Intersection points of every `d`-subset of the member's unit spheres;
    /// the new vertex must avoid landing at unit distance from any of them.
    fn sphere_meets(&self, member: &FamilyMember) -> Result<Vec<Vec<f64>>, FamilyError> {
        let n = member.points.n();
        let d = self.cfg.d;
        let mut meets = Vec::new();
        let mut subset: Vec<usize> = (1..=d).collect();
        loop {
            let centers: Vec<&[f64]> = subset.iter().map(|&v| member.points.point(v)).collect();
            match sphere_meet(&centers)? {
                SphereMeet::Points(p, q) => {
                    meets.push(p);
                    meets.push(q);
                }
                SphereMeet::Empty => {}
            }
            // next d-combination of 1..=n
            let mut idx = d;
            loop {
                if idx == 0 {
                    return Ok(meets);
                }
                idx -= 1;
                if subset[idx] < n - (d - 1 - idx) {
                    subset[idx] += 1;
                    for j in idx + 1..d {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// Add one vertex along transversal `pi`.
    pub fn extend(&self, member: &FamilyMember, pi: &[usize]) -> Result<FamilyMember, FamilyError> {
        self.check_transversal(member, pi)?;
        let meets = self.sphere_meets(member)?;
        self.extend_with_meets(member, pi, &meets)
    }

    fn extend_with_meets(
        &self,
        member: &FamilyMember,
        pi: &[usize],
        meets: &[Vec<f64>],
    ) -> Result<FamilyMember, FamilyError> {
        let d = self.cfg.d;
        let k = member.points.n() + 1;
        let own = self.cfg.cluster(k);
        let anchor = self.simplex.point(own);
        let eps_k = self.epsilons[k - 1];

        let centers: Vec<&[f64]> = pi.iter().map(|&i| member.points.point(i)).collect();
        let q = sphere_intersection(&centers, anchor)?;

        // q sits on the transversal spheres and, by the parent's P2
        // invariant, strictly off every other unit sphere. Its side of each
        // of those spheres is what distinguishes the transversals, so the
        // nudge must not cross any of them.
        let base_sides: Vec<bool> = (1..=member.points.n())
            .map(|v| dist_sq(&q, member.points.point(v)) < 1.0)
            .collect();

        // Nudge direction: toward the transversal centroid, which strictly
        // decreases all d distances. The exact centroid direction can be
        // tangent to a sphere around some d-fold meet (the symmetric base
        // simplex does this), leaving the P2 margin stuck at second order,
        // so fall back to deterministically tilted directions.
        let centroid: Vec<f64> = (0..d)
            .map(|c| centers.iter().map(|p| p[c]).sum::<f64>() / d as f64)
            .collect();
        let mut dir: Vec<f64> = centroid.iter().zip(&q).map(|(c, x)| c - x).collect();
        let norm = dist_sq(&dir, &vec![0.0; d]).sqrt();
        if norm < 1e-12 {
            return Err(FamilyError::ConstructionFailure { pi: pi.to_vec(), vertex: k });
        }
        for x in &mut dir {
            *x /= norm;
        }

        let mut tilt_rng = {
            let mut h = 0xcbf29ce484222325u64;
            for &i in pi {
                h = (h ^ i as u64).wrapping_mul(0x100000001b3);
            }
            ChaCha8Rng::seed_from_u64(h ^ (k as u64) << 32)
        };
        for attempt in 0..8 {
            let dir_a: Vec<f64> = if attempt == 0 {
                dir.clone()
            } else {
                let tilted: Vec<f64> = dir
                    .iter()
                    .map(|&x| x + 0.35 * (tilt_rng.gen::<f64>() * 2.0 - 1.0))
                    .collect();
                let n = tilted.iter().map(|x| x * x).sum::<f64>().sqrt();
                if n < 1e-12 {
                    continue;
                }
                tilted.iter().map(|x| x / n).collect()
            };
            let mut delta = eps_k / 2.0;
            for _ in 0..40 {
                let candidate: Vec<f64> =
                    q.iter().zip(&dir_a).map(|(x, u)| x + delta * u).collect();
                if self.candidate_ok(member, pi, &candidate, anchor, eps_k, &base_sides, meets) {
                    let mut coords = member.points.coords().to_vec();
                    coords.extend(&candidate);
                    let points = PointConfig::from_flat(d, k, coords)?;
                    let gg = geometric_graph(&points, GEOMETRY_TOL);
                    if gg.degenerate {
                        return Err(FamilyError::InternalInconsistency(
                            "accepted candidate is near the discriminant".into(),
                        ));
                    }
                    let mut lineage = member.lineage.clone();
                    lineage.push(pi.to_vec());
                    return Ok(FamilyMember {
                        points,
                        graph: gg.graph,
                        lineage,
                    });
                }
                delta /= 2.0;
            }
        }
        Err(FamilyError::ConstructionFailure { pi: pi.to_vec(), vertex: k })
    }

    #[allow(clippy::too_many_arguments)]
    fn candidate_ok(
        &self,
        member: &FamilyMember,
        pi: &[usize],
        candidate: &[f64],
        anchor: &[f64],
        eps_k: f64,
        base_sides: &[bool],
        meets: &[Vec<f64>],
    ) -> bool {
        // P1: stay in the own-cluster ball.
        if dist_sq(candidate, anchor) >= eps_k * eps_k {
            return false;
        }
        // Strictly inside every transversal ball, off every unit sphere, and
        // on q's side of every non-transversal sphere.
        for v in 1..=member.points.n() {
            let gap = dist_sq(candidate, member.points.point(v)) - 1.0;
            if gap.abs() <= GEOMETRY_TOL {
                return false;
            }
            if pi.contains(&v) {
                if gap >= 0.0 {
                    return false;
                }
            } else if (gap < 0.0) != base_sides[v - 1] {
                return false;
            }
        }
        // P2: no (d+1)-fold sphere intersection through the new vertex.
        meets
            .iter()
            .all(|m| (dist_sq(candidate, m) - 1.0).abs() > GEOMETRY_TOL)
    }

    /// Breadth-first growth to `n_target`, all transversals per level, with
    /// seeded downsampling past the member budget. Returns members with
    /// pairwise distinct labeled graphs.
    pub fn generate(&self) -> Result<Vec<FamilyMember>, FamilyError> {
        let mut level = vec![self.base_member()?];
        for k in self.cfg.d + 2..=self.cfg.n_target {
            let mut jobs: Vec<(usize, Vec<usize>)> = Vec::new();
            for (idx, member) in level.iter().enumerate() {
                for pi in self.transversals(member) {
                    jobs.push((idx, pi));
                }
            }
            if jobs.len() > self.cfg.member_budget {
                let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed.wrapping_add(k as u64));
                jobs.shuffle(&mut rng);
                jobs.truncate(self.cfg.member_budget);
                jobs.sort();
            }
            let meets: Vec<Vec<Vec<f64>>> = level
                .par_iter()
                .map(|m| self.sphere_meets(m))
                .collect::<Result<_, _>>()?;
            let next: Vec<FamilyMember> = jobs
                .par_iter()
                .map(|(idx, pi)| self.extend_with_meets(&level[*idx], pi, &meets[*idx]))
                .collect::<Result<_, _>>()?;
            let mut seen = HashSet::new();
            for member in &next {
                if !seen.insert(member.graph.clone()) {
                    return Err(FamilyError::InternalInconsistency(format!(
                        "duplicate labeled graph at level {k}"
                    )));
                }
            }
            level = next;
        }
        Ok(level)
    }

    /// Post-hoc verification: P1 per vertex, nondegeneracy, and full P2 over
    /// all `(d+1)`-subsets, for every member.
    pub fn verify_member(&self, member: &FamilyMember) -> Result<(), FamilyError> {
        let n = member.points.n();
        let d = self.cfg.d;
        for i in 1..=n {
            let center = self.simplex.point(self.cfg.cluster(i));
            let eps_i = self.epsilons[i - 1];
            if dist_sq(member.points.point(i), center) >= eps_i * eps_i {
                return Err(FamilyError::InternalInconsistency(format!(
                    "vertex {i} violates the cluster ball"
                )));
            }
        }
        let gg = geometric_graph(&member.points, GEOMETRY_TOL);
        if gg.degenerate || gg.graph != member.graph {
            return Err(FamilyError::InternalInconsistency(
                "stored graph disagrees with the configuration".into(),
            ));
        }
        // Full P2: for each (d+1)-subset, the meet of the first d spheres
        // must miss the last sphere.
        let mut subset: Vec<usize> = (1..=d + 1).collect();
        loop {
            let centers: Vec<&[f64]> =
                subset[..d].iter().map(|&v| member.points.point(v)).collect();
            let last = member.points.point(subset[d]);
            if let SphereMeet::Points(p, q) = sphere_meet(&centers)? {
                for m in [&p, &q] {
                    if (dist_sq(m, last) - 1.0).abs() <= GEOMETRY_TOL {
                        return Err(FamilyError::InternalInconsistency(format!(
                            "P2 fails on subset {subset:?}"
                        )));
                    }
                }
            }
            let mut idx = d + 1;
            loop {
                if idx == 0 {
                    return Ok(());
                }
                idx -= 1;
                if subset[idx] < n - (d - idx) {
                    subset[idx] += 1;
                    for j in idx + 1..=d {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

/// Grow the family described by `cfg`, shrinking `eps0` and retrying twice
/// on construction failures.
pub fn generate_family(cfg: &FamilyConfig) -> Result<Vec<FamilyMember>, FamilyError> {
    let mut attempt = cfg.clone();
    let mut last_err = None;
    for _ in 0..3 {
        match FamilyBuilder::new(attempt.clone()).and_then(|b| b.generate()) {
            Ok(members) => return Ok(members),
            Err(e @ FamilyError::ConstructionFailure { .. }) => {
                last_err = Some(e);
                attempt.eps0 /= 2.0;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one attempt"))
}
