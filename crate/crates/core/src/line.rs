//! Exact enumeration of the chambers of the line discriminant complement.
//!
//! A chamber of `R^{1 x n}` minus the hyperplanes `{x_i - x_j = +-1}` is
//! determined by, per pair, which of the three relations holds:
//! `x_i - x_j < -1`, `|x_i - x_j| < 1`, or `x_i - x_j > 1`. Feasibility of an
//! assignment is a system of strict difference constraints, decided exactly
//! with integer arithmetic: each constraint `x_u - x_v < c` becomes an edge of
//! weight `(c, -1)` (bound, strictness count) and the system is infeasible
//! exactly when some cycle has lexicographic weight at most `(0, 0)`.

use crate::graphs::{pair_count, pairs, GraphError, LabeledGraph, PointConfig};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Practical enumeration budget.
pub const MAX_ENUM_N: usize = 7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LineError {
    #[error("enumeration budget allows 1 <= n <= {max}, got {n}", max = MAX_ENUM_N)]
    BudgetExceeded { n: usize },
    #[error("assignment has length {got}, expected {expected}")]
    AssignmentLength { got: usize, expected: usize },
    #[error("assignment is infeasible")]
    Infeasible,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Relation of an ordered pair `(i, j)`, `i < j`, on the line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairRelation {
    /// `x_i - x_j < -1`
    FarLeft,
    /// `|x_i - x_j| < 1`
    Near,
    /// `x_i - x_j > 1`
    FarRight,
}

pub const RELATIONS: [PairRelation; 3] =
    [PairRelation::FarLeft, PairRelation::Near, PairRelation::FarRight];

/// Constraint `x_u - x_v < c` over 0-based variables.
#[derive(Debug, Clone, Copy)]
struct Constraint {
    u: usize,
    v: usize,
    c: i64,
}

fn constraints_of(i: usize, j: usize, rel: PairRelation) -> [Option<Constraint>; 2] {
    let (u, v) = (i - 1, j - 1);
    match rel {
        PairRelation::FarLeft => [Some(Constraint { u, v, c: -1 }), None],
        PairRelation::FarRight => [Some(Constraint { u: v, v: u, c: -1 }), None],
        PairRelation::Near => [
            Some(Constraint { u, v, c: 1 }),
            Some(Constraint { u: v, v: u, c: 1 }),
        ],
    }
}

/// Lexicographic weights `(integer bound, strictness count)`.
type LexWeight = (i64, i64);

fn lex_add(a: LexWeight, b: LexWeight) -> LexWeight {
    (a.0 + b.0, a.1 + b.1)
}

/// Bellman-Ford over lexicographic weights from a virtual source. Returns the
/// potentials, or `None` when a cycle of weight at most `(0, 0)` exists.
fn potentials(n: usize, constraints: &[Constraint]) -> Option<Vec<LexWeight>> {
    let mut dist: Vec<LexWeight> = vec![(0, 0); n];
    for _ in 1..n {
        let mut updated = false;
        for con in constraints {
            let cand = lex_add(dist[con.v], (con.c, -1));
            if cand < dist[con.u] {
                dist[con.u] = cand;
                updated = true;
            }
        }
        if !updated {
            break;
        }
    }
    for con in constraints {
        if lex_add(dist[con.v], (con.c, -1)) < dist[con.u] {
            return None;
        }
    }
    Some(dist)
}

fn prefix_constraints(n: usize, assignment: &[PairRelation]) -> Vec<Constraint> {
    pairs(n)
        .zip(assignment)
        .flat_map(|((i, j), &rel)| constraints_of(i, j, rel).into_iter().flatten())
        .collect()
}

/// Whether the strict constraint system of `assignment` has a real solution.
///
/// With `partial` the assignment may cover only a prefix of the pairs in
/// canonical order; otherwise it must cover all of them.
pub fn feasible(n: usize, assignment: &[PairRelation], partial: bool) -> Result<bool, LineError> {
    let expected = pair_count(n);
    if (partial && assignment.len() > expected) || (!partial && assignment.len() != expected) {
        return Err(LineError::AssignmentLength { got: assignment.len(), expected });
    }
    Ok(potentials(n, &prefix_constraints(n, assignment)).is_some())
}

/// All feasible full assignments, in lexicographic order
/// (`FarLeft < Near < FarRight` per pair).
pub fn enumerate_chambers(n: usize) -> Result<Vec<Vec<PairRelation>>, LineError> {
    if n == 0 || n > MAX_ENUM_N {
        return Err(LineError::BudgetExceeded { n });
    }
    let total = pair_count(n);
    let mut out = Vec::new();
    let mut prefix: Vec<PairRelation> = Vec::with_capacity(total);
    let mut constraints: Vec<Constraint> = Vec::new();
    let pair_list: Vec<(usize, usize)> = pairs(n).collect();

    fn dfs(
        n: usize,
        total: usize,
        pair_list: &[(usize, usize)],
        prefix: &mut Vec<PairRelation>,
        constraints: &mut Vec<Constraint>,
        out: &mut Vec<Vec<PairRelation>>,
    ) {
        if prefix.len() == total {
            out.push(prefix.clone());
            return;
        }
        let (i, j) = pair_list[prefix.len()];
        for rel in RELATIONS {
            let added: Vec<Constraint> =
                constraints_of(i, j, rel).into_iter().flatten().collect();
            constraints.extend(&added);
            if potentials(n, constraints).is_some() {
                prefix.push(rel);
                dfs(n, total, pair_list, prefix, constraints, out);
                prefix.pop();
            }
            constraints.truncate(constraints.len() - added.len());
        }
    }

    dfs(n, total, &pair_list, &mut prefix, &mut constraints, &mut out);
    Ok(out)
}

/// The labeled graph realized by a chamber: edge exactly on `Near` pairs.
pub fn chamber_graph(n: usize, assignment: &[PairRelation]) -> Result<LabeledGraph, LineError> {
    if assignment.len() != pair_count(n) {
        return Err(LineError::AssignmentLength {
            got: assignment.len(),
            expected: pair_count(n),
        });
    }
    let mut g = LabeledGraph::empty(n)?;
    for ((i, j), &rel) in pairs(n).zip(assignment) {
        if rel == PairRelation::Near {
            g.set_edge(i, j, true)?;
        }
    }
    Ok(g)
}

/// Distinct labeled graphs over all chambers, with the distribution of
/// chambers per graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineGraphCensus {
    /// Number of distinct labeled graphs realizable on the line.
    pub count: usize,
    /// chambers-per-graph -> number of graphs with that multiplicity.
    pub histogram: BTreeMap<usize, usize>,
}

pub fn realizable_graphs_line(n: usize) -> Result<LineGraphCensus, LineError> {
    let chambers = enumerate_chambers(n)?;
    let mut per_graph: BTreeMap<LabeledGraphKey, usize> = BTreeMap::new();
    for chamber in &chambers {
        let g = chamber_graph(n, chamber)?;
        *per_graph.entry(LabeledGraphKey(g.edges())).or_insert(0) += 1;
    }
    let mut histogram = BTreeMap::new();
    for &mult in per_graph.values() {
        *histogram.entry(mult).or_insert(0) += 1;
    }
    Ok(LineGraphCensus {
        count: per_graph.len(),
        histogram,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct LabeledGraphKey(Vec<(usize, usize)>);

/// A rational point of the chamber, with slack at least `1/(4n)` on every
/// strict constraint. Coordinates come from the Bellman-Ford potentials
/// `a + b/(4n)` where `(a, b)` is the lexicographic distance.
pub fn witness_point(n: usize, assignment: &[PairRelation]) -> Result<PointConfig, LineError> {
    let expected = pair_count(n);
    if assignment.len() != expected {
        return Err(LineError::AssignmentLength { got: assignment.len(), expected });
    }
    let constraints = prefix_constraints(n, assignment);
    let dist = potentials(n, &constraints).ok_or(LineError::Infeasible)?;
    // Exact check: a_u - a_v + (b_u - b_v) delta < c for delta = 1/(4n),
    // using that |b_u - b_v| delta < 1 so the lexicographic order decides.
    debug_assert!(constraints.iter().all(|con| {
        let da = dist[con.u].0 - dist[con.v].0;
        let db = dist[con.u].1 - dist[con.v].1;
        da < con.c || (da == con.c && db < 0)
    }));
    let delta = 1.0 / (4.0 * n as f64);
    let xs: Vec<f64> = dist
        .iter()
        .map(|&(a, b)| a as f64 + b as f64 * delta)
        .collect();
    Ok(PointConfig::line(&xs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{sign_condition, DEFAULT_TOL};
    use crate::series;
    use num::BigInt;
    use PairRelation::*;

    #[test]
    fn feasibility_examples() {
        assert!(feasible(2, &[Near], false).unwrap());
        // x1 > x2 + 1 > x3 + 2 contradicts |x1 - x3| < 1.
        assert!(!feasible(3, &[FarRight, Near, FarRight], false).unwrap());
        // e.g. x = (1.5, 0.8, 0).
        assert!(feasible(3, &[Near, FarRight, Near], false).unwrap());
    }

    // Independent feasibility oracle: any feasible system with unit bounds has
    // a solution on the lattice (1/(4n)) Z inside [-2n, 2n] (shortest-path
    // potentials have integer part in [-(n-1), 0] and strictness part at most
    // n - 1), so exhaustive lattice search decides feasibility for tiny n.
    fn feasible_bruteforce(n: usize, assignment: &[PairRelation]) -> bool {
        let step = 1.0 / (4.0 * n as f64);
        let lo = -2.0 * n as f64;
        let count = (4 * n) * (4 * n) + 1;
        let mut idx = vec![0usize; n];
        loop {
            let xs: Vec<f64> = idx.iter().map(|&k| lo + k as f64 * step).collect();
            let ok = pairs(n).zip(assignment).all(|((i, j), &rel)| {
                let diff = xs[i - 1] - xs[j - 1];
                match rel {
                    FarLeft => diff < -1.0,
                    Near => diff.abs() < 1.0,
                    FarRight => diff > 1.0,
                }
            });
            if ok {
                return true;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return false;
                }
                idx[k] += 1;
                if idx[k] < count {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn feasibility_matches_bruteforce_n3() {
        let prs = pair_count(3);
        let mut assignment = vec![FarLeft; prs];
        fn rec(assignment: &mut Vec<PairRelation>, pos: usize) -> Vec<Vec<PairRelation>> {
            if pos == assignment.len() {
                return vec![assignment.clone()];
            }
            let mut all = Vec::new();
            for rel in RELATIONS {
                assignment[pos] = rel;
                all.extend(rec(assignment, pos + 1));
            }
            all
        }
        for a in rec(&mut assignment, 0) {
            assert_eq!(
                feasible(3, &a, false).unwrap(),
                feasible_bruteforce(3, &a),
                "assignment {a:?}"
            );
        }
    }

    #[test]
    fn chamber_counts() {
        assert_eq!(enumerate_chambers(1).unwrap().len(), 1);
        assert_eq!(enumerate_chambers(2).unwrap().len(), 3);
        assert_eq!(enumerate_chambers(3).unwrap().len(), 19);
        assert_eq!(enumerate_chambers(4).unwrap().len(), 183);
        assert_eq!(enumerate_chambers(5).unwrap().len(), 2371);
        assert!(enumerate_chambers(8).is_err());
        assert!(enumerate_chambers(0).is_err());
    }

    #[test]
    fn output_is_sorted() {
        let chambers = enumerate_chambers(3).unwrap();
        let mut sorted = chambers.clone();
        sorted.sort();
        assert_eq!(chambers, sorted);
    }

    #[test]
    fn chamber_count_matches_egf() {
        for n in 1..=5 {
            let egf = series::semiorder_count(n, 6).unwrap();
            assert_eq!(
                BigInt::from(enumerate_chambers(n).unwrap().len()),
                egf,
                "n = {n}"
            );
        }
    }

    #[test]
    fn chamber_count_matches_egf_n6() {
        let egf = series::semiorder_count(6, 6).unwrap();
        assert_eq!(egf, BigInt::from(38703u64));
        assert_eq!(enumerate_chambers(6).unwrap().len(), 38703);
    }

    #[test]
    fn graph_census() {
        assert_eq!(realizable_graphs_line(2).unwrap().count, 2);
        assert_eq!(realizable_graphs_line(3).unwrap().count, 8);
        assert_eq!(realizable_graphs_line(4).unwrap().count, 57);
        let census = realizable_graphs_line(4).unwrap();
        let total: usize = census.histogram.iter().map(|(m, c)| m * c).sum();
        assert_eq!(total, 183);
    }

    #[test]
    fn census_matches_uig_egf() {
        for n in 2..=5 {
            let egf = series::uig_count(n, 6).unwrap();
            assert_eq!(
                BigInt::from(realizable_graphs_line(n).unwrap().count),
                egf,
                "n = {n}"
            );
        }
    }

    #[test]
    fn no_line_chamber_realizes_cycle_or_star() {
        // All labeled copies of the two unrealizable types on 4 vertices.
        let cycles = [
            [(1, 2), (2, 3), (3, 4), (1, 4)],
            [(1, 2), (2, 4), (3, 4), (1, 3)],
            [(1, 3), (2, 3), (2, 4), (1, 4)],
        ];
        let stars = [
            [(1, 2), (1, 3), (1, 4)],
            [(1, 2), (2, 3), (2, 4)],
            [(1, 3), (2, 3), (3, 4)],
            [(1, 4), (2, 4), (3, 4)],
        ];
        let mut bad = Vec::new();
        for c in cycles {
            bad.push(LabeledGraph::from_edges(4, &c).unwrap());
        }
        for s in stars {
            bad.push(LabeledGraph::from_edges(4, &s).unwrap());
        }
        for chamber in enumerate_chambers(4).unwrap() {
            let g = chamber_graph(4, &chamber).unwrap();
            assert!(bad.iter().all(|b| *b != g));
        }
    }

    #[test]
    fn witness_round_trip_n2() {
        let w = witness_point(2, &[Near]).unwrap();
        assert!((w.point(1)[0] - w.point(2)[0]).abs() < 1.0);
        let w = witness_point(2, &[FarRight]).unwrap();
        assert!(w.point(1)[0] - w.point(2)[0] > 1.0);
        assert!(witness_point(3, &[FarRight, Near, FarRight]).is_err());
    }

    #[test]
    fn witness_round_trip_all_chambers() {
        for n in 2..=4 {
            for chamber in enumerate_chambers(n).unwrap() {
                let w = witness_point(n, &chamber).unwrap();
                let sigma = sign_condition(&w, DEFAULT_TOL).unwrap();
                for ((i, j), &rel) in pairs(n).zip(&chamber) {
                    let expected = if rel == Near { -1 } else { 1 };
                    assert_eq!(sigma.sign(i, j).unwrap(), expected, "n={n} pair ({i},{j})");
                }
                // Slack on every strict constraint is at least 1/(4n) up to
                // floating-point conversion noise.
                let slack = 1.0 / (4.0 * n as f64) - 1e-9;
                for ((i, j), &rel) in pairs(n).zip(&chamber) {
                    let diff = w.point(i)[0] - w.point(j)[0];
                    match rel {
                        FarLeft => assert!(diff < -1.0 - slack),
                        FarRight => assert!(diff > 1.0 + slack),
                        Near => assert!(diff.abs() < 1.0 - slack),
                    }
                }
            }
        }
    }
}
