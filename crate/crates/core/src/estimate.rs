//! Growth records, period-cap series with extrapolation, and jump intervals.

use crate::decimal;
use crate::error::{Error, Result};
use crate::exponent::{Classification, classify};
use crate::graph::FactorGraph;
use crate::spectral::{DEFAULT_MAX_ITERS, Enclosure, spectral_enclosure};
use crate::task::TaskSpec;

/// Result of one task: graph statistics, certified enclosure, outward-rounded
/// display bounds, and (for series) a non-certified limit estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthRecord {
    pub task: TaskSpec,
    pub n_states: usize,
    pub n_edges: usize,
    pub enclosure: Enclosure,
    /// `enclosure.lo` rounded down at the 7th decimal.
    pub display_lo: String,
    /// `enclosure.hi` rounded up at the 7th decimal.
    pub display_hi: String,
    /// Extrapolated limit of the bound series; only present when at least
    /// three series points exist, and never certified.
    pub estimate: Option<f64>,
    /// The true language is finite (the approximation's growth is still the
    /// number reported).
    pub finite: bool,
    pub converged: bool,
}

/// Why a series stopped early.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    /// First period cap that could not be built.
    pub period_cap: usize,
    /// States discovered before the cap tripped.
    pub states_reached: usize,
}

/// One record per period cap, plus series-level outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesOutcome {
    pub records: Vec<GrowthRecord>,
    pub estimate: Option<f64>,
    pub truncated: Option<Truncation>,
    pub finite: bool,
}

/// Builds the record for a graph that is already available.
pub fn record_for_graph(g: &FactorGraph) -> GrowthRecord {
    let task = g.task().clone();
    let finite = matches!(
        classify(task.alphabet, &task.exponent),
        Ok(Classification::Finite)
    );
    let spectral = spectral_enclosure(g, task.precision, DEFAULT_MAX_ITERS);
    let enclosure = spectral.enclosure;
    GrowthRecord {
        n_states: g.n_states(),
        n_edges: g.n_edges(),
        enclosure,
        display_lo: decimal::format7(decimal::floor7(enclosure.lo)),
        display_hi: decimal::format7(decimal::ceil7(enclosure.hi)),
        estimate: None,
        finite,
        converged: spectral.converged,
        task,
    }
}

/// Builds the graph for `task` and encloses its growth rate.
pub fn growth_record(task: &TaskSpec) -> Result<GrowthRecord> {
    let g = FactorGraph::build(task)?;
    Ok(record_for_graph(&g))
}

/// Runs `run_series` with a custom graph supplier (e.g. a cache-backed one).
/// A finite classification short-circuits to a single flagged record at
/// `m_from`; hitting the state cap stops the series with partial results.
pub fn run_series_with<F>(
    base: &TaskSpec,
    m_from: usize,
    m_to: usize,
    mut build: F,
) -> Result<SeriesOutcome>
where
    F: FnMut(&TaskSpec) -> Result<FactorGraph>,
{
    if m_from == 0 {
        return Err(Error::BadPeriodCap);
    }
    if m_from > m_to {
        return Err(Error::EmptyRange {
            from: m_from,
            to: m_to,
        });
    }
    let finite = matches!(
        classify(base.alphabet, &base.exponent)?,
        Classification::Finite
    );
    let mut records = Vec::new();
    let mut truncated = None;
    let caps: Vec<usize> = if finite {
        vec![m_from]
    } else {
        (m_from..=m_to).collect()
    };
    for m in caps {
        let task = base.at_period_cap(m);
        match build(&task) {
            Ok(g) => records.push(record_for_graph(&g)),
            Err(Error::StateCapExceeded { reached, .. }) => {
                truncated = Some(Truncation {
                    period_cap: m,
                    states_reached: reached,
                });
                break;
            }
            Err(other) => return Err(other),
        }
    }
    let estimate = if records.len() >= 3 {
        let h: Vec<f64> = records.iter().map(|r| r.enclosure.hi).collect();
        aitken(h[h.len() - 3], h[h.len() - 2], h[h.len() - 1])
    } else {
        None
    };
    if let Some(last) = records.last_mut() {
        last.estimate = estimate;
    }
    Ok(SeriesOutcome {
        records,
        estimate,
        truncated,
        finite,
    })
}

/// Series of enclosures for period caps `m_from..=m_to`, with an Aitken
/// estimate of the limit from the last three upper bounds.
pub fn run_series(base: &TaskSpec, m_from: usize, m_to: usize) -> Result<SeriesOutcome> {
    run_series_with(base, m_from, m_to, FactorGraph::build)
}

/// Aitken delta-squared limit estimate from three consecutive series values;
/// exact on geometric convergence. `None` when the second difference
/// degenerates (constant or nearly constant input).
pub fn aitken(u0: f64, u1: f64, u2: f64) -> Option<f64> {
    let d1 = u1 - u0;
    let d2 = u2 - u1;
    let dd = d2 - d1;
    let scale = u0.abs().max(u1.abs()).max(u2.abs());
    if !dd.is_finite() || dd.abs() <= 4.0 * f64::EPSILON * scale {
        return None;
    }
    Some(u2 - d2 * d2 / dd)
}

/// Certified interval for the growth-rate jump between the `e`-free and
/// `e+`-free languages, clamped below at zero (growth is nondecreasing in
/// the exponent).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpInterval {
    pub lo: f64,
    pub hi: f64,
}

pub fn jump_interval(beta: &GrowthRecord, beta_plus: &GrowthRecord) -> Result<JumpInterval> {
    if beta.task.alphabet != beta_plus.task.alphabet {
        return Err(Error::MismatchedRecords(format!(
            "alphabets differ: {} vs {}",
            beta.task.alphabet, beta_plus.task.alphabet
        )));
    }
    let (e, ep) = (&beta.task.exponent, &beta_plus.task.exponent);
    if e.value_cmp(ep.numerator(), ep.denominator()) != std::cmp::Ordering::Equal {
        return Err(Error::MismatchedRecords(format!(
            "exponents differ in value: {e} vs {ep}"
        )));
    }
    if e.is_strict() || !ep.is_strict() {
        return Err(Error::MismatchedRecords(
            "expected a non-strict record followed by its strict counterpart".to_string(),
        ));
    }
    Ok(JumpInterval {
        lo: (beta_plus.enclosure.lo - beta.enclosure.hi).max(0.0),
        hi: (beta_plus.enclosure.hi - beta.enclosure.lo).max(0.0),
    })
}
