//! Recount of the line chamber number through the compactified discriminant.
//!
//! For a nonempty graph `G` on `[n]`, the homomorphisms of `G` into the unit
//! distance graph on the line form `X(G) x R^{beta0(G)}` with `X(G)` finite,
//! so the one-point compactification is a wedge of `|X(G)|` spheres of
//! dimension `beta0(G)` (or the point at infinity when `X(G)` is empty).
//! Summing cohomology dimensions over the graphs with `i + 1` edges gives the
//! `E1` table; its alternating sum is the Euler characteristic of the
//! compactified discriminant, and the chamber count falls out by duality
//! because all chambers of a hyperplane arrangement complement are
//! contractible.

use crate::graphs::{pair_count, GraphError, LabeledGraph};
use thiserror::Error;

/// Largest `n` for which all `2^C(n,2) - 1` nonempty graphs are iterated.
pub const MAX_EULER_N: usize = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EulerError {
    #[error("budget allows 1 <= n <= {max}, got {n}", max = MAX_EULER_N)]
    BudgetExceeded { n: usize },
    #[error("derived Betti number {value} is negative; the E1 table is inconsistent")]
    InternalInconsistency { value: i64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Homomorphism data of a labeled graph mapped into the unit distance graph
/// on the line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomStructure {
    pub graph: LabeledGraph,
    /// Number of connected components, isolated vertices included.
    pub beta0: usize,
    /// Homomorphism count with one translation per component quotiented out;
    /// zero exactly when some component is non-bipartite.
    pub x_size: u64,
}

/// Per component: root at 0, give each spanning-tree edge a `+-1` step, and
/// accept an assignment when every non-tree edge also spans exactly one unit.
pub fn hom_count_line(g: &LabeledGraph) -> HomStructure {
    let n = g.n();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (i, j) in g.edges() {
        adj[i].push(j);
        adj[j].push(i);
    }

    let mut seen = vec![false; n + 1];
    let mut beta0 = 0usize;
    let mut x_size: u64 = 1;
    for root in 1..=n {
        if seen[root] {
            continue;
        }
        beta0 += 1;
        // BFS spanning tree.
        let mut order = vec![root];
        let mut parent = vec![0usize; n + 1];
        seen[root] = true;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    order.push(v);
                }
            }
        }
        let tree_edges: Vec<(usize, usize)> =
            order[1..].iter().map(|&v| (parent[v], v)).collect();
        let non_tree: Vec<(usize, usize)> = order
            .iter()
            .flat_map(|&u| adj[u].iter().map(move |&v| (u, v)))
            .filter(|&(u, v)| u < v)
            .filter(|&(u, v)| {
                !tree_edges.contains(&(u, v)) && !tree_edges.contains(&(v, u))
            })
            .collect();

        let mut accepted = 0u64;
        let mut pos = vec![0i64; n + 1];
        for mask in 0u64..1u64 << tree_edges.len() {
            pos[root] = 0;
            for (bit, &(u, v)) in tree_edges.iter().enumerate() {
                pos[v] = pos[u] + if mask >> bit & 1 == 1 { 1 } else { -1 };
            }
            if non_tree.iter().all(|&(u, v)| (pos[u] - pos[v]).abs() == 1) {
                accepted += 1;
            }
        }
        x_size *= accepted;
    }
    HomStructure {
        graph: g.clone(),
        beta0,
        x_size,
    }
}

/// The `E1` dimension table: `dim(i, j)` sums `dim H^j` of the compactified
/// homomorphism spaces over all graphs with `i + 1` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E1Table {
    n: usize,
    /// Row per column index `i` (edge count minus one), entries `j = 0..n`.
    dims: Vec<Vec<u64>>,
}

impl E1Table {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> usize {
        self.dims.len()
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn dim(&self, i: usize, j: usize) -> u64 {
        self.dims.get(i).and_then(|col| col.get(j)).copied().unwrap_or(0)
    }

    /// Column-major dump, `dims[i][j]`.
    pub fn as_rows(&self) -> &[Vec<u64>] {
        &self.dims
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for (i, col) in self.dims.iter().enumerate() {
            for (j, &v) in col.iter().enumerate() {
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                chi += sign * v as i64;
            }
        }
        chi
    }
}

/// Next same-popcount mask (Gosper). `mask` must be nonzero.
fn next_same_weight(mask: u64) -> u64 {
    let c = mask & mask.wrapping_neg();
    let r = mask + c;
    (((r ^ mask) >> 2) / c) | r
}

/// Streams the masks of each edge-count layer in increasing order.
fn for_each_layer_mask(k: usize, mut f: impl FnMut(usize, u64)) {
    for edges in 1..=k {
        let mut mask = (1u64 << edges) - 1;
        let last = mask << (k - edges);
        loop {
            f(edges, mask);
            if mask == last {
                break;
            }
            mask = next_same_weight(mask);
        }
    }
}

pub fn e1_table(n: usize) -> Result<E1Table, EulerError> {
    if n == 0 || n > MAX_EULER_N {
        return Err(EulerError::BudgetExceeded { n });
    }
    let k = pair_count(n);
    let mut dims = vec![vec![0u64; n + 1]; k];
    for_each_layer_mask(k, |edges, mask| {
        let g = LabeledGraph::from_edge_mask(n, mask).expect("n > 0");
        let hom = hom_count_line(&g);
        dims[edges - 1][0] += 1;
        if hom.x_size > 0 {
            dims[edges - 1][hom.beta0] += hom.x_size;
        }
    });
    Ok(E1Table { n, dims })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerReport {
    pub n: usize,
    pub chi: i64,
    pub chambers: u64,
    pub table: E1Table,
}

/// Chamber count of the line arrangement complement via the Euler
/// characteristic of the compactified discriminant: the reduced cohomology is
/// concentrated in degree `n - 1`, so
/// `chambers = 1 + (-1)^{n-1} (chi - 1)`.
pub fn euler_report(n: usize) -> Result<EulerReport, EulerError> {
    if n == 1 {
        // No pairs: the discriminant is empty and the line is one chamber.
        return Ok(EulerReport {
            n,
            chi: 1,
            chambers: 1,
            table: E1Table { n, dims: Vec::new() },
        });
    }
    let table = e1_table(n)?;
    let chi = table.euler_characteristic();
    let sign = if (n - 1).is_multiple_of(2) { 1 } else { -1 };
    let betti_top = sign * (chi - 1);
    if betti_top < 0 {
        return Err(EulerError::InternalInconsistency { value: betti_top });
    }
    Ok(EulerReport {
        n,
        chi,
        chambers: 1 + betti_top as u64,
        table,
    })
}

pub fn chamber_count_via_euler(n: usize) -> Result<u64, EulerError> {
    Ok(euler_report(n)?.chambers)
}
