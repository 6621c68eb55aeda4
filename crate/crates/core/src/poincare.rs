//! Poincare polynomials with exponents affine in the ambient dimension, the
//! complete table for graphs on four vertices, Floer numbers, and the
//! aggregated polynomial of the whole discriminant complement.
//!
//! A [`GradedPoly`] term `(coeff, a, b)` stands for `coeff * t^(a*d + b)`.
//! Exponent collisions (say `t^(d-2)` meeting `t^0` at `d = 2`) only happen
//! at evaluation time, so terms are kept symbolic until then.

use crate::graphs::{pair_count, GraphError, LabeledGraph};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PoincareError {
    #[error("operation supports n = {expected}, got a graph on {got} vertices")]
    UnsupportedOrder { got: usize, expected: String },
    #[error("aggregated polynomial disagrees with the closed form: {got} != {expected}")]
    InternalInconsistency { got: String, expected: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Term `coeff * t^(a*d + b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GradedTerm {
    pub coeff: i64,
    pub a: i64,
    pub b: i64,
}

/// Polynomial in `t` whose exponents are affine in `d`, normalized: terms
/// sorted by `(a, b)`, no duplicates, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedPoly {
    terms: Vec<GradedTerm>,
}

impl GradedPoly {
    pub fn new(raw: &[(i64, i64, i64)]) -> Self {
        let terms = raw
            .iter()
            .map(|&(coeff, a, b)| GradedTerm { coeff, a, b })
            .collect();
        Self { terms }.normalized()
    }

    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        Self::new(&[(c, 0, 0)])
    }

    fn normalized(mut self) -> Self {
        self.terms.sort_by_key(|t| (t.a, t.b));
        let mut merged: Vec<GradedTerm> = Vec::new();
        for t in self.terms {
            match merged.last_mut() {
                Some(last) if last.a == t.a && last.b == t.b => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != 0);
        Self { terms: merged }
    }

    pub fn terms(&self) -> &[GradedTerm] {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().copied());
        Self { terms }.normalized()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| GradedTerm { coeff: t.coeff * k, ..*t })
                .collect(),
        }
        .normalized()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    /// Value at `t = 1`: the total Betti number.
    pub fn eval_one(&self) -> i64 {
        self.terms.iter().map(|t| t.coeff).sum()
    }

    /// Substitute a concrete dimension; exponents that collide merge.
    /// Returns `(exponent, coefficient)` pairs sorted by exponent.
    pub fn evaluate_at_d(&self, d: i64) -> Vec<(i64, i64)> {
        let mut map = std::collections::BTreeMap::new();
        for t in &self.terms {
            *map.entry(t.a * d + t.b).or_insert(0i64) += t.coeff;
        }
        map.retain(|_, c| *c != 0);
        map.into_iter().collect()
    }
}

impl std::fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let exp = match (t.a, t.b) {
                    (0, 0) => String::new(),
                    (0, b) => format!("t^{b}"),
                    (1, 0) => "t^d".to_string(),
                    (a, 0) => format!("t^({a}d)"),
                    (1, b) if b < 0 => format!("t^(d{b})"),
                    (1, b) => format!("t^(d+{b})"),
                    (a, b) if b < 0 => format!("t^({a}d{b})"),
                    (a, b) => format!("t^({a}d+{b})"),
                };
                if exp.is_empty() {
                    format!("{}", t.coeff)
                } else if t.coeff == 1 {
                    exp
                } else {
                    format!("{}{exp}", t.coeff)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Poincare polynomial of the configuration space of `n` points:
/// `prod_{j=1}^{n-1} (1 + j t^(d-1))`.
pub fn poincare_config(n: usize) -> GradedPoly {
    // Coefficients of the product in y = t^(d-1) are the elementary
    // symmetric functions of 1..n-1.
    let mut elem = vec![1i64];
    for j in 1..n as i64 {
        let mut next = vec![0i64; elem.len() + 1];
        for (k, &c) in elem.iter().enumerate() {
            next[k] += c;
            next[k + 1] += c * j;
        }
        elem = next;
    }
    GradedPoly::new(
        &elem
            .iter()
            .enumerate()
            .map(|(k, &c)| (c, k as i64, -(k as i64)))
            .collect::<Vec<_>>(),
    )
}

/// The unlabeled graph types on four vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Graph4Type {
    Empty,
    SingleEdge,
    TwoDisjointEdges,
    PathThree,
    PathFour,
    Star,
    TriangleIsolated,
    Paw,
    FourCycle,
    Diamond,
    Complete,
}

impl Graph4Type {
    pub const ALL: [Graph4Type; 11] = [
        Graph4Type::Empty,
        Graph4Type::SingleEdge,
        Graph4Type::TwoDisjointEdges,
        Graph4Type::PathThree,
        Graph4Type::PathFour,
        Graph4Type::Star,
        Graph4Type::TriangleIsolated,
        Graph4Type::Paw,
        Graph4Type::FourCycle,
        Graph4Type::Diamond,
        Graph4Type::Complete,
    ];

    pub fn poincare(self) -> GradedPoly {
        match self {
            Graph4Type::Empty => {
                GradedPoly::new(&[(1, 0, 0), (6, 1, -1), (11, 2, -2), (6, 3, -3)])
            }
            Graph4Type::SingleEdge => GradedPoly::new(&[(1, 0, 0), (3, 1, -1), (2, 2, -2)]),
            Graph4Type::TwoDisjointEdges => GradedPoly::new(&[(1, 0, 0), (1, 1, -1)]),
            Graph4Type::PathThree => GradedPoly::new(&[(1, 0, 0), (2, 1, -1), (1, 2, -2)]),
            Graph4Type::PathFour => GradedPoly::new(&[(1, 0, 0), (1, 1, -1)]),
            Graph4Type::Star => {
                GradedPoly::new(&[(1, 0, 0), (1, 1, -2), (1, 1, -1), (1, 2, -3)])
            }
            Graph4Type::TriangleIsolated => GradedPoly::new(&[(1, 0, 0), (1, 1, -1)]),
            Graph4Type::Paw => GradedPoly::new(&[(1, 0, 0), (1, 1, -1)]),
            Graph4Type::FourCycle => {
                GradedPoly::new(&[(1, 0, 0), (1, 1, -2), (1, 1, -1), (1, 2, -3)])
            }
            Graph4Type::Diamond => GradedPoly::new(&[(1, 0, 0), (1, 1, -1)]),
            Graph4Type::Complete => GradedPoly::constant(1),
        }
    }

    /// Number of labeled graphs of this unlabeled type.
    pub fn labeled_copies(self) -> i64 {
        match self {
            Graph4Type::Empty | Graph4Type::Complete => 1,
            Graph4Type::SingleEdge | Graph4Type::Diamond => 6,
            Graph4Type::TwoDisjointEdges | Graph4Type::FourCycle => 3,
            Graph4Type::PathThree | Graph4Type::PathFour | Graph4Type::Paw => 12,
            Graph4Type::Star | Graph4Type::TriangleIsolated => 4,
        }
    }

    pub fn floer(self) -> i64 {
        self.poincare().eval_one()
    }
}

fn triangle_count(g: &LabeledGraph) -> usize {
    let n = g.n();
    let mut count = 0;
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                if g.has_edge(a, b).unwrap_or(false)
                    && g.has_edge(b, c).unwrap_or(false)
                    && g.has_edge(a, c).unwrap_or(false)
                {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Classify a graph on four vertices by edge count, degree multiset and
/// triangle count; this separates all eleven types.
pub fn classify4(g: &LabeledGraph) -> Result<Graph4Type, PoincareError> {
    if g.n() != 4 {
        return Err(PoincareError::UnsupportedOrder { got: g.n(), expected: "4".into() });
    }
    let e = g.edge_count();
    let mut degrees: Vec<usize> = (1..=4).map(|v| g.degree(v)).collect();
    degrees.sort_unstable();
    let triangles = triangle_count(g);
    Ok(match (e, degrees.as_slice(), triangles) {
        (0, _, _) => Graph4Type::Empty,
        (1, _, _) => Graph4Type::SingleEdge,
        (2, [1, 1, 1, 1], _) => Graph4Type::TwoDisjointEdges,
        (2, _, _) => Graph4Type::PathThree,
        (3, _, 1) => Graph4Type::TriangleIsolated,
        (3, [1, 1, 1, 3], _) => Graph4Type::Star,
        (3, _, _) => Graph4Type::PathFour,
        (4, _, 1) => Graph4Type::Paw,
        (4, _, _) => Graph4Type::FourCycle,
        (5, _, _) => Graph4Type::Diamond,
        _ => Graph4Type::Complete,
    })
}

/// Table row for a labeled graph on four vertices.
pub fn poincare_table4(g: &LabeledGraph) -> Result<GradedPoly, PoincareError> {
    Ok(classify4(g)?.poincare())
}

/// Rows for graphs on three vertices, by edge count.
fn poincare_table3(g: &LabeledGraph) -> Result<GradedPoly, PoincareError> {
    if g.n() != 3 {
        return Err(PoincareError::UnsupportedOrder { got: g.n(), expected: "3".into() });
    }
    Ok(match g.edge_count() {
        0 => poincare_config(3),
        1 | 2 => GradedPoly::new(&[(1, 0, 0), (1, 1, -1)]),
        _ => GradedPoly::constant(1),
    })
}

/// Stable total Betti number of the chamber of `G`, for graphs on at most
/// four vertices.
pub fn floer_number(g: &LabeledGraph) -> Result<i64, PoincareError> {
    match g.n() {
        1 => Ok(1),
        2 => Ok(if g.edge_count() == 1 { 1 } else { 2 }),
        3 => Ok(poincare_table3(g)?.eval_one()),
        4 => Ok(poincare_table4(g)?.eval_one()),
        n => Err(PoincareError::UnsupportedOrder { got: n, expected: "at most 4".into() }),
    }
}

fn closed_form(n: usize) -> GradedPoly {
    match n {
        3 => GradedPoly::new(&[(8, 0, 0), (9, 1, -1), (2, 2, -2)]),
        4 => GradedPoly::new(&[
            (64, 0, 0),
            (7, 1, -2),
            (92, 1, -1),
            (7, 2, -3),
            (35, 2, -2),
            (6, 3, -3),
        ]),
        _ => unreachable!(),
    }
}

fn ensure_matches_closed_form(n: usize, total: &GradedPoly) -> Result<(), PoincareError> {
    let expected = closed_form(n);
    if *total != expected {
        return Err(PoincareError::InternalInconsistency {
            got: total.to_string(),
            expected: expected.to_string(),
        });
    }
    Ok(())
}

/// Poincare polynomial of the full discriminant complement, `n = 3` or `4`,
/// computed by summing the per-labeled-graph rows over all `2^C(n,2)` graphs
/// and checked term-by-term against the closed form.
pub fn complement_poincare(n: usize) -> Result<GradedPoly, PoincareError> {
    if n != 3 && n != 4 {
        return Err(PoincareError::UnsupportedOrder { got: n, expected: "3 or 4".into() });
    }
    let k = pair_count(n);
    let mut total = GradedPoly::zero();
    for mask in 0u64..1 << k {
        let g = LabeledGraph::from_edge_mask(n, mask)?;
        let row = if n == 3 {
            poincare_table3(&g)?
        } else {
            poincare_table4(&g)?
        };
        total = total.add(&row);
    }
    ensure_matches_closed_form(n, &total)?;
    Ok(total)
}

/// Substitute a concrete dimension into `p`, first subtracting the table rows
/// (times labeled-copy counts) of graph types not realizable in that
/// dimension. The caller decides which graphs to drop; pass one labeled
/// representative per type.
pub fn evaluate_at_d(
    p: &GradedPoly,
    d: i64,
    drop_unrealizable: Option<&[LabeledGraph]>,
) -> Result<Vec<(i64, i64)>, PoincareError> {
    let mut poly = p.clone();
    if let Some(dropped) = drop_unrealizable {
        for g in dropped {
            let ty = classify4(g)?;
            poly = poly.sub(&ty.poincare().scale(ty.labeled_copies()));
        }
    }
    Ok(poly.evaluate_at_d(d))
}
