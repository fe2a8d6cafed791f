//! Emission of records, series, jumps, counts, and check reports as JSON,
//! CSV, or aligned text. Payloads are deterministic: no timestamps, fixed
//! field order, shortest-round-trip floats.

use growthbound_core::decimal;
use growthbound_core::verify::CheckReport;
use growthbound_core::{CountSeries, GrowthRecord, JumpInterval};
use serde::Serialize;

#[derive(Serialize)]
pub struct SpecOut {
    pub k: u8,
    pub exponent: String,
    pub m: usize,
    pub symmetry: bool,
}

#[derive(Serialize)]
pub struct GraphOut {
    pub states: usize,
    pub edges: usize,
}

#[derive(Serialize)]
pub struct BoundOut {
    pub lo: f64,
    pub hi: f64,
    pub display_lo: String,
    pub display_hi: String,
}

#[derive(Serialize)]
pub struct RecordOut {
    pub spec: SpecOut,
    pub graph: GraphOut,
    pub bound: BoundOut,
    pub estimate: Option<f64>,
    pub finite: bool,
    pub truncated: bool,
}

impl RecordOut {
    pub fn from_record(r: &GrowthRecord, paper_rounding: bool) -> Self {
        let (display_lo, display_hi) = if paper_rounding {
            (
                decimal::format7(decimal::nearest7(r.enclosure.lo)),
                decimal::format7(decimal::nearest7(r.enclosure.hi)),
            )
        } else {
            (r.display_lo.clone(), r.display_hi.clone())
        };
        RecordOut {
            spec: SpecOut {
                k: r.task.alphabet,
                exponent: r.task.exponent.to_string(),
                m: r.task.period_cap,
                symmetry: r.task.symmetry,
            },
            graph: GraphOut {
                states: r.n_states,
                edges: r.n_edges,
            },
            bound: BoundOut {
                lo: r.enclosure.lo,
                hi: r.enclosure.hi,
                display_lo,
                display_hi,
            },
            estimate: r.estimate,
            finite: r.finite,
            truncated: false,
        }
    }
}

#[derive(Serialize)]
pub struct SeriesSpecOut {
    pub k: u8,
    pub exponent: String,
    pub m_from: usize,
    pub m_to: usize,
    pub symmetry: bool,
}

#[derive(Serialize)]
pub struct SeriesOut {
    pub spec: SeriesSpecOut,
    pub records: Vec<RecordOut>,
    pub estimate: Option<f64>,
    pub finite: bool,
    pub truncated: bool,
}

#[derive(Serialize)]
pub struct JumpOut {
    pub k: u8,
    pub exponent: String,
    pub m: usize,
    pub beta: RecordOut,
    pub beta_plus: RecordOut,
    pub jump: JumpIntervalOut,
}

#[derive(Serialize)]
pub struct JumpIntervalOut {
    pub lo: f64,
    pub hi: f64,
}

impl From<JumpInterval> for JumpIntervalOut {
    fn from(j: JumpInterval) -> Self {
        JumpIntervalOut { lo: j.lo, hi: j.hi }
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

const RECORD_CSV_HEADER: &str =
    "k,exponent,m,symmetry,states,edges,lo,hi,display_lo,display_hi,estimate,finite,truncated\n";

fn record_csv_row(r: &RecordOut) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        r.spec.k,
        r.spec.exponent,
        r.spec.m,
        r.spec.symmetry,
        r.graph.states,
        r.graph.edges,
        r.bound.lo,
        r.bound.hi,
        r.bound.display_lo,
        r.bound.display_hi,
        r.estimate.map_or(String::new(), |e| e.to_string()),
        r.finite,
        r.truncated,
    )
}

pub fn record_csv(r: &RecordOut) -> String {
    format!("{RECORD_CSV_HEADER}{}", record_csv_row(r))
}

pub fn series_csv(records: &[RecordOut]) -> String {
    let mut out = String::from(RECORD_CSV_HEADER);
    for r in records {
        out.push_str(&record_csv_row(r));
    }
    out
}

pub fn record_table(r: &RecordOut) -> String {
    let mut out = header_line(&r.spec.exponent, r.spec.k, r.spec.symmetry);
    out.push_str("    m     states      edges  bound\n");
    out.push_str(&format!(
        "{:>5} {:>10} {:>10}  [{}, {}]{}\n",
        r.spec.m,
        r.graph.states,
        r.graph.edges,
        r.bound.display_lo,
        r.bound.display_hi,
        if r.finite { "  (finite language)" } else { "" },
    ));
    out
}

/// Mimics the published cell layout: cap, upper bound, estimate underneath.
pub fn series_table(s: &SeriesOut) -> String {
    let mut out = header_line(&s.spec.exponent, s.spec.k, s.spec.symmetry);
    out.push_str("    m     states      edges  upper bound\n");
    for r in &s.records {
        out.push_str(&format!(
            "{:>5} {:>10} {:>10}  {}{}\n",
            r.spec.m,
            r.graph.states,
            r.graph.edges,
            r.bound.display_hi,
            if r.finite { "  (finite language)" } else { "" },
        ));
    }
    match s.estimate {
        Some(e) => out.push_str(&format!("estimate {e:.7}\n")),
        None => out.push_str("estimate -\n"),
    }
    if s.truncated {
        out.push_str("series truncated at the state cap\n");
    }
    out
}

pub fn jump_table(j: &JumpOut) -> String {
    let mut out = header_line(&j.exponent, j.k, j.beta.spec.symmetry);
    out.push_str(&format!(
        "{:<12} [{}, {}]\n",
        j.exponent, j.beta.bound.display_lo, j.beta.bound.display_hi
    ));
    out.push_str(&format!(
        "{:<12} [{}, {}]\n",
        format!("{}+", j.exponent),
        j.beta_plus.bound.display_lo,
        j.beta_plus.bound.display_hi
    ));
    out.push_str(&format!(
        "jump         [{:.7}, {:.7}]\n",
        j.jump.lo, j.jump.hi
    ));
    out
}

fn header_line(exponent: &str, k: u8, symmetry: bool) -> String {
    format!(
        "k={k}  exponent={exponent}  symmetry={}\n",
        if symmetry { "on" } else { "off" }
    )
}

#[derive(Serialize)]
pub struct CountsOut {
    pub k: u8,
    pub exponent: String,
    pub m: Option<usize>,
    pub counts: Vec<CountRow>,
}

#[derive(Serialize)]
pub struct CountRow {
    pub n: usize,
    pub count: String,
}

pub fn counts_out(s: &CountSeries) -> CountsOut {
    CountsOut {
        k: s.alphabet,
        exponent: s.exponent.to_string(),
        m: s.period_cap,
        counts: s
            .counts
            .iter()
            .enumerate()
            .map(|(n, c)| CountRow {
                n,
                count: c.to_string(),
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct CheckLineOut {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct CheckOut {
    pub lines: Vec<CheckLineOut>,
    pub passed: usize,
    pub failed: usize,
}

pub fn check_out(reports: &[&CheckReport]) -> CheckOut {
    let lines: Vec<CheckLineOut> = reports
        .iter()
        .flat_map(|r| r.lines.iter())
        .map(|l| CheckLineOut {
            name: l.name.clone(),
            ok: l.ok,
            detail: l.detail.clone(),
        })
        .collect();
    let passed = lines.iter().filter(|l| l.ok).count();
    let failed = lines.len() - passed;
    CheckOut {
        lines,
        passed,
        failed,
    }
}
