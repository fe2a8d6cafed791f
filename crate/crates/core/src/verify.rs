//! Self-check suites: counting-oracle equivalence on a small grid and
//! bracketing of every embedded reference cell by a freshly computed upper
//! bound. The `check` CLI command runs both.

use crate::counting::{brute_count, graph_count};
use crate::error::Error;
use crate::estimate::record_for_graph;
use crate::exponent::RationalExponent;
use crate::fixtures::{self, TableCell};
use crate::graph::FactorGraph;
use crate::task::TaskSpec;

/// One comparison, named for the report.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub lines: Vec<CheckLine>,
}

impl CheckReport {
    pub fn passed(&self) -> usize {
        self.lines.iter().filter(|l| l.ok).count()
    }

    pub fn failed(&self) -> usize {
        self.lines.len() - self.passed()
    }

    pub fn all_ok(&self) -> bool {
        self.failed() == 0
    }

    fn push(&mut self, name: String, ok: bool, detail: String) {
        self.lines.push(CheckLine { name, ok, detail });
    }
}

/// The exponent grid of the oracle suite.
pub fn oracle_exponents() -> Vec<RationalExponent> {
    ["2", "2+", "7/3", "7/3+", "3", "3+"]
        .iter()
        .map(|t| t.parse().unwrap())
        .collect()
}

/// Walk counts against brute-force counts for every `(k, e, m)` with
/// `k` in {2, 3}, the six grid exponents, and `m` up to `m_max`, at word
/// lengths up to `n_max`; then cap saturation (`m >= n` equals no cap) for
/// each `(k, e)` at length `sat_n_max`. One line per spec.
pub fn oracle_equivalence(m_max: usize, n_max: usize, sat_n_max: usize) -> CheckReport {
    let mut report = CheckReport::default();
    for k in [2u8, 3] {
        for e in oracle_exponents() {
            for m in 1..=m_max {
                let name = format!("oracle k={k} e={e} m={m}");
                let task = TaskSpec::new(k, e, m).unwrap().with_symmetry(false);
                let g = match FactorGraph::build(&task) {
                    Ok(g) => g,
                    Err(err) => {
                        report.push(name, false, format!("build failed: {err}"));
                        continue;
                    }
                };
                match brute_count(k, &e, Some(m), n_max) {
                    Ok(series) => {
                        let mut bad = None;
                        for n in g.order()..=n_max {
                            let walks = graph_count(&g, n).unwrap();
                            if walks != series.counts[n] {
                                bad = Some(format!(
                                    "n={n}: walks {walks} vs brute {}",
                                    series.counts[n]
                                ));
                                break;
                            }
                        }
                        match bad {
                            None => report.push(
                                name,
                                true,
                                format!("equal for n={}..={n_max}", g.order()),
                            ),
                            Some(detail) => report.push(name, false, detail),
                        }
                    }
                    Err(err) => report.push(name, false, format!("brute failed: {err}")),
                }
            }
            let name = format!("saturation k={k} e={e}");
            match (
                brute_count(k, &e, Some(sat_n_max), sat_n_max),
                brute_count(k, &e, None, sat_n_max),
            ) {
                (Ok(capped), Ok(free)) => {
                    let ok = capped.counts == free.counts;
                    report.push(name, ok, format!("cap {sat_n_max} vs none"));
                }
                (a, b) => {
                    report.push(name, false, format!("enumeration failed: {a:?} {b:?}"));
                }
            }
        }
    }
    report
}

/// Largest-cap approximation that fits the state budget, for one language.
fn bracketing_graph(
    k: u8,
    e: &RationalExponent,
    precision: f64,
    state_budget: usize,
    m_limit: usize,
) -> Option<FactorGraph> {
    let mut best = None;
    for m in 1..=m_limit {
        let task = TaskSpec::new(k, *e, m)
            .unwrap()
            .with_precision(precision)
            .unwrap()
            .with_state_cap(state_budget)
            .unwrap();
        match FactorGraph::build(&task) {
            Ok(g) => best = Some(g),
            Err(Error::StateCapExceeded { .. }) | Err(Error::LabelTooWide { .. }) => break,
            Err(_) => break,
        }
    }
    best
}

/// Every reference cell must lie below a freshly computed certified upper
/// bound for its language: published values came from caps at least as
/// large as anything we build here, and bounds only descend as the cap
/// grows. One line per cell (display rounding tolerance 1e-7).
pub fn fixture_bracketing(precision: f64) -> CheckReport {
    let mut report = CheckReport::default();
    let mut pairs: Vec<(u8, RationalExponent)> = Vec::new();
    for c in fixtures::cells() {
        if !pairs.contains(&(c.k, c.exponent)) {
            pairs.push((c.k, c.exponent));
        }
    }
    for (k, e) in pairs {
        let cells: Vec<&TableCell> = fixtures::lookup(k, &e);
        let graph = bracketing_graph(k, &e, precision, 6_000, 4);
        let Some(g) = graph else {
            for _ in &cells {
                report.push(
                    format!("bracket k={k} e={e}"),
                    false,
                    "no approximation fits the state budget".to_string(),
                );
            }
            continue;
        };
        let record = record_for_graph(&g);
        for cell in cells {
            let name = format!("bracket k={k} e={e} [{:?}]", cell.table);
            match cell.bracketing_floor() {
                Some(floor) => {
                    let ok = record.enclosure.hi >= floor - 1e-7;
                    report.push(
                        name,
                        ok,
                        format!(
                            "hi(m={}) = {:.9} vs reference {floor}",
                            g.task().period_cap,
                            record.enclosure.hi
                        ),
                    );
                }
                None => report.push(name, true, "estimate-only cell, nothing to bracket".into()),
            }
        }
    }
    report
}
