//! Cross-module oracle equivalences, bundled as one meta-check.
//!
//! The flagship equivalence counts the line chambers three independent ways:
//! strict-inequality enumeration, exact generating-function coefficients, and
//! the Euler characteristic of the compactified discriminant. The quick level
//! covers `n <= 4` plus the structural identities; the full level extends to
//! `n = 5` chambers, the `n = 6` Euler recount, and a `d = 2` family build.

use crate::graphs::LabeledGraph;
use crate::quadrics::{index_value_census, QuadricFamily, DEFAULT_EPSILON};
use crate::{euler, family, line, poincare, series};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyLevel {
    Quick,
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub level: VerifyLevel,
    pub ok: bool,
    pub checks: Vec<CheckResult>,
}

fn push(checks: &mut Vec<CheckResult>, name: &str, expected: String, actual: String) {
    let ok = expected == actual;
    checks.push(CheckResult {
        name: name.to_string(),
        expected,
        actual,
        ok,
    });
}

fn three_way_chambers(checks: &mut Vec<CheckResult>, n: usize) {
    let via_line = line::enumerate_chambers(n)
        .map(|c| c.len().to_string())
        .unwrap_or_else(|e| format!("error: {e}"));
    let via_egf = series::semiorder_count(n, n)
        .map(|v| v.to_string())
        .unwrap_or_else(|e| format!("error: {e}"));
    let via_euler = euler::chamber_count_via_euler(n)
        .map(|v| v.to_string())
        .unwrap_or_else(|e| format!("error: {e}"));
    push(
        checks,
        &format!("chambers-n{n}-line-vs-egf"),
        via_egf.clone(),
        via_line,
    );
    push(
        checks,
        &format!("chambers-n{n}-euler-vs-egf"),
        via_egf,
        via_euler,
    );
}

fn e1_table_check(checks: &mut Vec<CheckResult>) {
    let expected = "[(0,0,3), (0,2,6), (1,0,3), (1,1,12), (2,0,1)]".to_string();
    let actual = match euler::e1_table(3) {
        Ok(t) => {
            let mut entries = Vec::new();
            for i in 0..t.columns() {
                for j in 0..=t.n() {
                    if t.dim(i, j) > 0 {
                        entries.push(format!("({i},{j},{})", t.dim(i, j)));
                    }
                }
            }
            format!("[{}]", entries.join(", "))
        }
        Err(e) => format!("error: {e}"),
    };
    push(checks, "e1-table-n3", expected, actual);
}

fn poincare_checks(checks: &mut Vec<CheckResult>) {
    let aggregated = match poincare::complement_poincare(4) {
        Ok(p) => p.to_string(),
        Err(e) => format!("error: {e}"),
    };
    push(
        checks,
        "table4-aggregation",
        "64 + 7t^(d-2) + 92t^(d-1) + 7t^(2d-3) + 35t^(2d-2) + 6t^(3d-3)".to_string(),
        aggregated,
    );
    let drop = vec![
        LabeledGraph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).expect("cycle"),
        LabeledGraph::from_edges(4, &[(1, 2), (1, 3), (1, 4)]).expect("star"),
    ];
    let at1 = poincare::complement_poincare(4)
        .and_then(|p| poincare::evaluate_at_d(&p, 1, Some(&drop)))
        .map(|terms| terms.iter().map(|(_, c)| c).sum::<i64>().to_string())
        .unwrap_or_else(|e| format!("error: {e}"));
    push(checks, "line-chambers-via-table4", "183".to_string(), at1);
    let at2 = poincare::complement_poincare(4)
        .and_then(|p| poincare::evaluate_at_d(&p, 2, None))
        .map(|terms| {
            let constant = terms
                .iter()
                .find(|&&(e, _)| e == 0)
                .map(|&(_, c)| c)
                .unwrap_or(0);
            let total: i64 = terms.iter().map(|(_, c)| c).sum();
            format!("{constant}/{total}")
        })
        .unwrap_or_else(|e| format!("error: {e}"));
    push(checks, "plane-chambers-and-total", "71/211".to_string(), at2);
}

fn index_checks(checks: &mut Vec<CheckResult>, seed: u64, samples: usize) {
    for (label, n, d, signs) in [
        ("all-far", 3usize, 2usize, vec![1i8, 1, 1]),
        ("mixed", 3, 2, vec![-1, 1, -1]),
        ("mixed", 4, 3, vec![1, -1, 1, -1, 1, -1]),
    ] {
        let sigma = crate::graphs::SignCondition::new(n, signs).expect("valid signs");
        let fam = QuadricFamily::new(d, sigma, DEFAULT_EPSILON).expect("valid family");
        let report = index_value_census(&fam, samples, seed);
        let ambiguous_ok = report.ambiguous * 100 < report.samples.max(1);
        push(
            checks,
            &format!("index-decomposition-n{n}-d{d}-{label}"),
            "violations=0 ambiguous<1%".to_string(),
            format!(
                "violations={} ambiguous{}1%",
                report.violations,
                if ambiguous_ok { "<" } else { ">=" }
            ),
        );
    }
}

fn family_check(checks: &mut Vec<CheckResult>, seed: u64) {
    let outcome = family::FamilyConfig::new(2, 8, seed).and_then(|cfg| {
        let members = family::generate_family(&cfg)?;
        let builder = family::FamilyBuilder::new(cfg)?;
        for m in &members {
            builder.verify_member(m)?;
        }
        Ok(members.len())
    });
    let (ok, actual) = match outcome {
        Ok(count) => (count >= 16, format!("{count} distinct verified members")),
        Err(e) => (false, format!("error: {e}")),
    };
    checks.push(CheckResult {
        name: "family-d2-n8".into(),
        expected: ">= 16 distinct verified members".into(),
        actual,
        ok,
    });
}

/// Run the oracle equivalences; `seed` feeds the sampling checks.
pub fn run_verify(level: VerifyLevel, seed: u64) -> VerifyReport {
    let mut checks = Vec::new();
    for n in 2..=4 {
        three_way_chambers(&mut checks, n);
    }
    e1_table_check(&mut checks);
    poincare_checks(&mut checks);
    index_checks(&mut checks, seed, 1000);

    if level == VerifyLevel::Full {
        three_way_chambers(&mut checks, 5);
        let via_egf = series::semiorder_count(6, 6)
            .map(|v| v.to_string())
            .unwrap_or_else(|e| format!("error: {e}"));
        let via_euler = euler::chamber_count_via_euler(6)
            .map(|v| v.to_string())
            .unwrap_or_else(|e| format!("error: {e}"));
        push(&mut checks, "chambers-n6-euler-vs-egf", via_egf, via_euler);
        let uig_line = line::realizable_graphs_line(5)
            .map(|c| c.count.to_string())
            .unwrap_or_else(|e| format!("error: {e}"));
        let uig_egf = series::uig_count(5, 5)
            .map(|v| v.to_string())
            .unwrap_or_else(|e| format!("error: {e}"));
        push(&mut checks, "uig-n5-line-vs-egf", uig_egf, uig_line);
        family_check(&mut checks, seed);
    }

    let ok = checks.iter().all(|c| c.ok);
    VerifyReport { level, ok, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_verify_passes() {
        let report = run_verify(VerifyLevel::Quick, 7);
        for check in &report.checks {
            assert!(check.ok, "{}: {} != {}", check.name, check.expected, check.actual);
        }
        assert!(report.ok);
        let n3: Vec<_> = report
            .checks
            .iter()
            .filter(|c| c.name.starts_with("chambers-n3"))
            .collect();
        assert_eq!(n3.len(), 2);
        assert!(n3.iter().all(|c| c.actual == "19"));
    }

    #[test]
    fn report_serializes() {
        let report = run_verify(VerifyLevel::Quick, 7);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"level\":\"quick\""));
        assert!(json.contains("chambers-n2-line-vs-egf"));
    }
}
