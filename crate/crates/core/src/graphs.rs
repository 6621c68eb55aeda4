//! Labeled graphs, point configurations and sign conditions.
//!
//! Conventions shared by every other module:
//!
//! * Vertices are labeled `1..=n`.
//! * The pair `(i, j)` with `1 <= i < j <= n` is stored at the lexicographic
//!   index `pair_index(i, j, n)`, i.e. `(1,2), (1,3), ..., (1,n), (2,3), ...`.
//! * A point configuration is an `n`-tuple of points in `R^d`, stored one row
//!   per point.
//! * The geometric graph of a configuration has the edge `(i, j)` exactly when
//!   `||p_i - p_j||^2 < 1`, and the sign condition records
//!   `sign(||p_i - p_j||^2 - 1)` per pair, so an edge corresponds to sign `-1`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Default width of the degeneracy band around squared distance 1.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("pair ({i}, {j}) is not a valid ordered pair for n = {n}")]
    InvalidPair { i: usize, j: usize, n: usize },
    #[error("vertex count must be positive")]
    EmptyVertexSet,
    #[error("dimension and point count must be positive")]
    EmptyConfiguration,
    #[error("coordinate ({row}, {col}) is not finite")]
    NonFiniteCoordinate { row: usize, col: usize },
    #[error("pair ({i}, {j}) has squared distance {dist_sq} within {tol} of 1")]
    DegeneratePair {
        i: usize,
        j: usize,
        dist_sq: f64,
        tol: f64,
    },
    #[error("sign vector has length {got}, expected {expected}")]
    SignLength { got: usize, expected: usize },
    #[error("sign entries must be +1 or -1")]
    InvalidSign,
}

/// Number of unordered pairs on `n` labeled vertices.
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Lexicographic index of the pair `(i, j)`, `1 <= i < j <= n`.
pub fn pair_index(i: usize, j: usize, n: usize) -> Result<usize, GraphError> {
    if i == 0 || j == 0 || i >= j || j > n {
        return Err(GraphError::InvalidPair { i, j, n });
    }
    Ok((i - 1) * n - i * (i - 1) / 2 + (j - i - 1))
}

/// Iterator over all pairs `(i, j)` in the canonical order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

/// Graph on `{1..n}` stored as an edge bitset over the canonical pair indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: usize,
    bits: Vec<u64>,
}

impl LabeledGraph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        let words = pair_count(n).div_ceil(64).max(1);
        Ok(Self {
            n,
            bits: vec![0; words],
        })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for (i, j) in pairs(n) {
            g.set_edge(i, j, true)?;
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(i, j) in edges {
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            g.set_edge(a, b, true)?;
        }
        Ok(g)
    }

    /// Graph whose edge bitset is the low `C(n,2)` bits of `mask`.
    /// Only supported while the pair count fits in one word.
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Self, GraphError> {
        let k = pair_count(n);
        assert!(k <= 64, "edge mask form requires C(n,2) <= 64");
        if n == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        let mask = if k == 64 { mask } else { mask & ((1u64 << k) - 1) };
        Ok(Self {
            n,
            bits: vec![mask],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set_edge(&mut self, i: usize, j: usize, present: bool) -> Result<(), GraphError> {
        let idx = pair_index(i, j, self.n)?;
        if present {
            self.bits[idx / 64] |= 1 << (idx % 64);
        } else {
            self.bits[idx / 64] &= !(1 << (idx % 64));
        }
        Ok(())
    }

    pub fn has_edge(&self, i: usize, j: usize) -> Result<bool, GraphError> {
        let idx = pair_index(i, j, self.n)?;
        Ok(self.bits[idx / 64] >> (idx % 64) & 1 == 1)
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        pairs(self.n)
            .filter(|&(i, j)| self.has_edge(i, j).expect("canonical pair"))
            .collect()
    }

    /// Degree of vertex `v` (1-based).
    pub fn degree(&self, v: usize) -> usize {
        (1..=self.n)
            .filter(|&u| u != v)
            .filter(|&u| {
                let (a, b) = if u < v { (u, v) } else { (v, u) };
                self.has_edge(a, b).expect("canonical pair")
            })
            .count()
    }

    /// The sign condition realized by any nondegenerate configuration of this
    /// graph: `-1` on edges, `+1` on non-edges.
    pub fn to_signs(&self) -> SignCondition {
        let signs = pairs(self.n)
            .map(|(i, j)| {
                if self.has_edge(i, j).expect("canonical pair") {
                    -1
                } else {
                    1
                }
            })
            .collect();
        SignCondition {
            n: self.n,
            signs,
        }
    }
}

/// Labeled graphs are equal exactly when their vertex counts and edge bitsets
/// coincide; this is `==` on the type.
pub fn graphs_equal_labeled(a: &LabeledGraph, b: &LabeledGraph) -> bool {
    a == b
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for LabeledGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LabeledGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        LabeledGraph::from_edges(repr.n, &repr.edges).map_err(D::Error::custom)
    }
}

/// An `n`-tuple of points in `R^d`, one row per point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfig {
    d: usize,
    n: usize,
    coords: Vec<f64>,
}

impl PointConfig {
    pub fn new(d: usize, points: Vec<Vec<f64>>) -> Result<Self, GraphError> {
        if d == 0 || points.is_empty() {
            return Err(GraphError::EmptyConfiguration);
        }
        let n = points.len();
        let mut coords = Vec::with_capacity(n * d);
        for (row, p) in points.iter().enumerate() {
            if p.len() != d {
                return Err(GraphError::EmptyConfiguration);
            }
            for (col, &x) in p.iter().enumerate() {
                if !x.is_finite() {
                    return Err(GraphError::NonFiniteCoordinate { row: row + 1, col: col + 1 });
                }
                coords.push(x);
            }
        }
        Ok(Self { d, n, coords })
    }

    pub fn from_flat(d: usize, n: usize, coords: Vec<f64>) -> Result<Self, GraphError> {
        if d == 0 || n == 0 || coords.len() != n * d {
            return Err(GraphError::EmptyConfiguration);
        }
        if let Some(pos) = coords.iter().position(|x| !x.is_finite()) {
            return Err(GraphError::NonFiniteCoordinate { row: pos / d + 1, col: pos % d + 1 });
        }
        Ok(Self { d, n, coords })
    }

    /// One-dimensional configuration from a coordinate list.
    pub fn line(xs: &[f64]) -> Result<Self, GraphError> {
        Self::from_flat(1, xs.len(), xs.to_vec())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coordinates of the point labeled `v` (1-based).
    pub fn point(&self, v: usize) -> &[f64] {
        &self.coords[(v - 1) * self.d..v * self.d]
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dist_sq(&self, i: usize, j: usize) -> f64 {
        let (p, q) = (self.point(i), self.point(j));
        p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum()
    }

    /// The configuration `(1 + eps) * P`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            d: self.d,
            n: self.n,
            coords: self.coords.iter().map(|x| x * factor).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PointsRepr {
    d: usize,
    points: Vec<Vec<f64>>,
}

impl Serialize for PointConfig {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PointsRepr {
            d: self.d,
            points: (1..=self.n).map(|v| self.point(v).to_vec()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PointConfig {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PointsRepr::deserialize(deserializer)?;
        PointConfig::new(repr.d, repr.points).map_err(D::Error::custom)
    }
}

/// Vector of signs of `||p_i - p_j||^2 - 1` over all pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignCondition {
    n: usize,
    signs: Vec<i8>,
}

impl SignCondition {
    pub fn new(n: usize, signs: Vec<i8>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        if signs.len() != pair_count(n) {
            return Err(GraphError::SignLength { got: signs.len(), expected: pair_count(n) });
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(GraphError::InvalidSign);
        }
        Ok(Self { n, signs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign(&self, i: usize, j: usize) -> Result<i8, GraphError> {
        Ok(self.signs[pair_index(i, j, self.n)?])
    }

    /// The labeled graph determined by the sign condition: edge iff sign `-1`.
    pub fn to_graph(&self) -> LabeledGraph {
        let mut g = LabeledGraph::empty(self.n).expect("n > 0");
        for (idx, (i, j)) in pairs(self.n).enumerate() {
            if self.signs[idx] == -1 {
                g.set_edge(i, j, true).expect("canonical pair");
            }
        }
        g
    }
}

#[derive(Serialize, Deserialize)]
struct SignsRepr {
    n: usize,
    signs: Vec<i8>,
}

impl Serialize for SignCondition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SignsRepr {
            n: self.n,
            signs: self.signs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SignCondition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SignsRepr::deserialize(deserializer)?;
        SignCondition::new(repr.n, repr.signs).map_err(D::Error::custom)
    }
}

/// A geometric graph together with a flag telling whether the configuration
/// came within `tol` of the discriminant.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricGraph {
    pub graph: LabeledGraph,
    pub degenerate: bool,
    pub margin: f64,
}

/// Geometric graph of `p`: edge `(i, j)` iff `||p_i - p_j||^2 < 1`.
///
/// The result is flagged degenerate when some pair is within `tol` of squared
/// distance 1; the graph itself is still the one given by strict inequalities.
pub fn geometric_graph(p: &PointConfig, tol: f64) -> GeometricGraph {
    let n = p.n();
    let mut graph = LabeledGraph::empty(n).expect("n > 0");
    let mut degenerate = false;
    let mut margin = f64::INFINITY;
    for (i, j) in pairs(n) {
        let dist_sq = p.dist_sq(i, j);
        let gap = (dist_sq - 1.0).abs();
        margin = margin.min(gap);
        if gap <= tol {
            degenerate = true;
        }
        if dist_sq < 1.0 {
            graph.set_edge(i, j, true).expect("canonical pair");
        }
    }
    GeometricGraph { graph, degenerate, margin }
}

/// Sign condition of a nondegenerate configuration.
///
/// Consistent with [`geometric_graph`]: the sign is `-1` exactly on edges.
pub fn sign_condition(p: &PointConfig, tol: f64) -> Result<SignCondition, GraphError> {
    let n = p.n();
    let mut signs = Vec::with_capacity(pair_count(n));
    for (i, j) in pairs(n) {
        let dist_sq = p.dist_sq(i, j);
        if (dist_sq - 1.0).abs() <= tol {
            return Err(GraphError::DegeneratePair { i, j, dist_sq, tol });
        }
        signs.push(if dist_sq < 1.0 { -1 } else { 1 });
    }
    SignCondition::new(n, signs)
}

/// Distance of `p` from the discriminant, measured on squared lengths:
/// `min over pairs of | ||p_i - p_j||^2 - 1 |`. Zero exactly on the
/// discriminant; infinite when there are no pairs.
pub fn discriminant_margin(p: &PointConfig) -> f64 {
    pairs(p.n())
        .map(|(i, j)| (p.dist_sq(i, j) - 1.0).abs())
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pair_index_examples() {
        assert_eq!(pair_index(1, 2, 4).unwrap(), 0);
        assert_eq!(pair_index(3, 4, 4).unwrap(), 5);
        assert_eq!(pair_index(1, 4, 4).unwrap(), 2);
    }

    #[test]
    fn pair_index_is_lex_bijection() {
        for n in 1..=9 {
            let indices: Vec<usize> = pairs(n)
                .map(|(i, j)| pair_index(i, j, n).unwrap())
                .collect();
            assert_eq!(indices, (0..pair_count(n)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn pair_index_rejects_bad_input() {
        assert!(pair_index(2, 2, 4).is_err());
        assert!(pair_index(3, 2, 4).is_err());
        assert!(pair_index(1, 5, 4).is_err());
        assert!(pair_index(0, 1, 4).is_err());
    }

    #[test]
    fn two_far_points_have_no_edge() {
        let p = PointConfig::line(&[-2.0, 0.0]).unwrap();
        let gg = geometric_graph(&p, DEFAULT_TOL);
        assert!(!gg.degenerate);
        assert_eq!(gg.graph, LabeledGraph::empty(2).unwrap());
    }

    #[test]
    fn coincident_points_give_complete_graph() {
        let p = PointConfig::new(2, vec![vec![0.0, 0.0]; 4]).unwrap();
        let gg = geometric_graph(&p, DEFAULT_TOL);
        assert_eq!(gg.graph, LabeledGraph::complete(4).unwrap());
    }

    #[test]
    fn pair_on_discriminant_is_flagged() {
        let p = PointConfig::line(&[0.0, 1.0]).unwrap();
        let gg = geometric_graph(&p, 1e-12);
        assert!(gg.degenerate);
        assert!(sign_condition(&p, 1e-12).is_err());
    }

    #[test]
    fn sign_condition_examples() {
        let close = PointConfig::line(&[0.0, 0.5]).unwrap();
        assert_eq!(sign_condition(&close, DEFAULT_TOL).unwrap().signs(), &[-1]);

        let far = PointConfig::line(&[0.0, 3.0]).unwrap();
        assert_eq!(sign_condition(&far, DEFAULT_TOL).unwrap().signs(), &[1]);

        // Unit-edge triangle scaled by 1.01: every squared distance is
        // 1.01^2 > 1.
        let h = 3f64.sqrt() / 2.0;
        let tri = PointConfig::new(2, vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.5, h],
        ])
        .unwrap()
        .scaled(1.01);
        assert_eq!(sign_condition(&tri, DEFAULT_TOL).unwrap().signs(), &[1, 1, 1]);
    }

    #[test]
    fn margin_examples() {
        let on = PointConfig::line(&[0.0, 1.0]).unwrap();
        assert_eq!(discriminant_margin(&on), 0.0);

        let off = PointConfig::line(&[0.0, 2.0]).unwrap();
        assert_eq!(discriminant_margin(&off), 3.0);

        let three = PointConfig::line(&[0.0, 0.5, 3.0]).unwrap();
        assert!((discriminant_margin(&three) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn labeled_equality_is_strict() {
        let k3 = LabeledGraph::complete(3).unwrap();
        assert!(graphs_equal_labeled(&k3, &k3.clone()));

        let path_12_23 = LabeledGraph::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        let path_21_13 = LabeledGraph::from_edges(3, &[(2, 1), (1, 3)]).unwrap();
        assert!(!graphs_equal_labeled(&path_12_23, &path_21_13));

        let e3 = LabeledGraph::empty(3).unwrap();
        let e4 = LabeledGraph::empty(4).unwrap();
        assert!(!graphs_equal_labeled(&e3, &e4));
    }

    #[test]
    fn json_rejects_invalid_data() {
        assert!(serde_json::from_str::<LabeledGraph>(r#"{"n":4,"edges":[[1,5]]}"#).is_err());
        assert!(serde_json::from_str::<LabeledGraph>(r#"{"n":4,"edges":[[2,2]]}"#).is_err());
        assert!(serde_json::from_str::<PointConfig>(r#"{"d":2,"points":[[0.0]]}"#).is_err());
        assert!(serde_json::from_str::<SignCondition>(r#"{"n":3,"signs":[1,0,1]}"#).is_err());
        assert!(serde_json::from_str::<SignCondition>(r#"{"n":3,"signs":[1,1]}"#).is_err());
    }

    #[test]
    fn json_round_trips() {
        let g = LabeledGraph::from_edges(4, &[(1, 2), (2, 4)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":4,"edges":[[1,2],[2,4]]}"#);
        assert_eq!(serde_json::from_str::<LabeledGraph>(&s).unwrap(), g);

        let p = PointConfig::new(2, vec![vec![0.0, 1.0], vec![2.0, 3.0]]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<PointConfig>(&s).unwrap(), p);

        let sc = SignCondition::new(3, vec![1, -1, 1]).unwrap();
        let s = serde_json::to_string(&sc).unwrap();
        assert_eq!(serde_json::from_str::<SignCondition>(&s).unwrap(), sc);
    }

    fn arb_config(max_n: usize, max_d: usize) -> impl Strategy<Value = PointConfig> {
        (1..=max_n, 1..=max_d).prop_flat_map(|(n, d)| {
            proptest::collection::vec(-3.0..3.0f64, n * d)
                .prop_map(move |coords| PointConfig::from_flat(d, n, coords).unwrap())
        })
    }

    proptest! {
        // Edge iff sign -1: the data-level restatement of the fact that the
        // sign vector determines the labeled graph.
        #[test]
        fn edge_iff_negative_sign(p in arb_config(6, 3)) {
            if let Ok(sigma) = sign_condition(&p, DEFAULT_TOL) {
                let gg = geometric_graph(&p, DEFAULT_TOL);
                prop_assert_eq!(sigma.to_graph(), gg.graph);
            }
        }

        // Small scalings keep strict signs, and scaling pushes any
        // configuration off the discriminant.
        #[test]
        fn small_scaling_preserves_graph(p in arb_config(5, 2)) {
            let gg = geometric_graph(&p, DEFAULT_TOL);
            if !gg.degenerate {
                let eps = (discriminant_margin(&p) / 100.0).min(1e-6);
                let scaled = geometric_graph(&p.scaled(1.0 + eps), 0.0);
                prop_assert_eq!(scaled.graph, gg.graph);
            }
        }

        // Rigid motions never change the geometric graph.
        #[test]
        fn rigid_motion_invariance(
            coords in proptest::collection::vec(-3.0..3.0f64, 8),
            angle in 0.0..std::f64::consts::TAU,
            tx in -5.0..5.0f64,
            ty in -5.0..5.0f64,
        ) {
            let p = PointConfig::from_flat(2, 4, coords).unwrap();
            let (s, c) = angle.sin_cos();
            let moved: Vec<Vec<f64>> = (1..=4)
                .map(|v| {
                    let q = p.point(v);
                    vec![c * q[0] - s * q[1] + tx, s * q[0] + c * q[1] + ty]
                })
                .collect();
            let q = PointConfig::new(2, moved).unwrap();
            prop_assert_eq!(geometric_graph(&q, 0.0).graph, geometric_graph(&p, 0.0).graph);
        }
    }
}
