//! Subcommand execution and exit-code mapping: 0 success, 1 internal
//! failure or failed checks, 2 usage errors, 3 resource limits (with a
//! partial JSON payload).

use growthbound_core::verify::{CheckReport, fixture_bracketing, oracle_equivalence};
use growthbound_core::{
    Error, FactorGraph, GrowthRecord, TaskSpec, brute_count, jump_interval, record_for_graph,
    run_series_with,
};
use serde::Serialize;

use crate::cache::GraphCache;
use crate::config::{CheckArgs, Cli, Command, CountArgs, Format, TaskArgs};
use crate::output;

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Bound(args) => cmd_bound(&args),
        Command::Series(args) => cmd_series(&args),
        Command::Jump(args) => cmd_jump(&args),
        Command::Count(args) => cmd_count(&args),
        Command::Check(args) => cmd_check(&args),
    }
}

#[derive(Serialize)]
struct PartialOut {
    spec: output::SpecOut,
    truncated: bool,
    partial_states: usize,
}

fn resource_exit(task: &TaskSpec, reached: usize) -> i32 {
    let payload = PartialOut {
        spec: output::SpecOut {
            k: task.alphabet,
            exponent: task.exponent.to_string(),
            m: task.period_cap,
            symmetry: task.symmetry,
        },
        truncated: true,
        partial_states: reached,
    };
    print!("{}", output::json(&payload));
    3
}

fn usage_exit(err: &Error) -> i32 {
    eprintln!("error: {err}");
    eprintln!("run `growthbound --help` for usage");
    2
}

fn cmd_bound(args: &TaskArgs) -> i32 {
    if args.caps.from != args.caps.to {
        eprintln!("error: `bound` takes a single period cap; use `series` for ranges");
        return 2;
    }
    let task = match args.task() {
        Ok(t) => t,
        Err(e) => return usage_exit(&e),
    };
    let mut cache = GraphCache::new(args.cache_dir());
    let record = match cache.load_or_build(&task) {
        Ok((graph, _)) => record_for_graph(&graph),
        Err(Error::StateCapExceeded { reached, .. }) => return resource_exit(&task, reached),
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    emit_record(&record, args);
    0
}

fn emit_record(record: &GrowthRecord, args: &TaskArgs) {
    let out = output::RecordOut::from_record(record, args.paper_rounding);
    match args.format {
        Format::Json => print!("{}", output::json(&out)),
        Format::Csv => print!("{}", output::record_csv(&out)),
        Format::Table => print!("{}", output::record_table(&out)),
    }
}

fn cmd_series(args: &TaskArgs) -> i32 {
    let base = match args.task() {
        Ok(t) => t,
        Err(e) => return usage_exit(&e),
    };
    let mut cache = GraphCache::new(args.cache_dir());
    let outcome = match run_series_with(&base, args.caps.from, args.caps.to, |task| {
        cache.load_or_build(task).map(|(g, _)| g)
    }) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let records: Vec<output::RecordOut> = outcome
        .records
        .iter()
        .map(|r| output::RecordOut::from_record(r, args.paper_rounding))
        .collect();
    let out = output::SeriesOut {
        spec: output::SeriesSpecOut {
            k: base.alphabet,
            exponent: base.exponent.to_string(),
            m_from: args.caps.from,
            m_to: args.caps.to,
            symmetry: base.symmetry,
        },
        records,
        estimate: outcome.estimate,
        finite: outcome.finite,
        truncated: outcome.truncated.is_some(),
    };
    match args.format {
        Format::Json => print!("{}", output::json(&out)),
        Format::Csv => print!("{}", output::series_csv(&out.records)),
        Format::Table => print!("{}", output::series_table(&out)),
    }
    if let Some(t) = outcome.truncated {
        eprintln!(
            "warning: series stopped before m={}: state cap hit after {} states",
            t.period_cap, t.states_reached
        );
        return 3;
    }
    0
}

fn cmd_jump(args: &TaskArgs) -> i32 {
    if args.caps.from != args.caps.to {
        eprintln!("error: `jump` takes a single period cap");
        return 2;
    }
    if args.exponent.is_strict() {
        eprintln!("error: `jump` takes the non-strict exponent and compares against its `+` form");
        return 2;
    }
    let base = match args.task() {
        Ok(t) => t,
        Err(e) => return usage_exit(&e),
    };
    let strict_task = TaskSpec {
        exponent: base.exponent.strictened(),
        ..base.clone()
    };
    let mut cache = GraphCache::new(args.cache_dir());
    let mut record_of = |task: &TaskSpec| -> Result<GrowthRecord, i32> {
        match cache.load_or_build(task) {
            Ok((g, _)) => Ok(record_for_graph(&g)),
            Err(Error::StateCapExceeded { reached, .. }) => Err(resource_exit(task, reached)),
            Err(e) => {
                eprintln!("error: {e}");
                Err(1)
            }
        }
    };
    let beta = match record_of(&base) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let beta_plus = match record_of(&strict_task) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let jump = match jump_interval(&beta, &beta_plus) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let out = output::JumpOut {
        k: base.alphabet,
        exponent: base.exponent.to_string(),
        m: base.period_cap,
        beta: output::RecordOut::from_record(&beta, args.paper_rounding),
        beta_plus: output::RecordOut::from_record(&beta_plus, args.paper_rounding),
        jump: jump.into(),
    };
    match args.format {
        Format::Json => print!("{}", output::json(&out)),
        Format::Csv => print!(
            "k,exponent,m,jump_lo,jump_hi\n{},{},{},{},{}\n",
            out.k, out.exponent, out.m, out.jump.lo, out.jump.hi
        ),
        Format::Table => print!("{}", output::jump_table(&out)),
    }
    0
}

fn cmd_count(args: &CountArgs) -> i32 {
    let series = match brute_count(args.alphabet, &args.exponent, args.period_cap, args.max_len) {
        Ok(s) => s,
        Err(e @ Error::CountGuardExceeded(_)) => {
            eprintln!("error: {e}");
            return 3;
        }
        Err(e) => return usage_exit(&e),
    };
    match args.format {
        Format::Json => print!("{}", output::json(&output::counts_out(&series))),
        Format::Csv | Format::Table => print!("{}", series.to_csv()),
    }
    0
}

fn cmd_check(args: &CheckArgs) -> i32 {
    let oracle = oracle_equivalence(4, 14, 12);
    let bracketing = fixture_bracketing(args.precision);
    let cache_check = check_cache_round_trip(args.cache.clone());

    match args.format {
        Format::Json => {
            let out = output::check_out(&[&oracle, &bracketing, &cache_check]);
            print!("{}", output::json(&out));
        }
        Format::Csv | Format::Table => {
            for report in [&oracle, &bracketing, &cache_check] {
                for line in &report.lines {
                    println!(
                        "{} {}: {}",
                        if line.ok { "OK  " } else { "FAIL" },
                        line.name,
                        line.detail
                    );
                }
            }
            println!(
                "oracle equivalence: {}/{} specs OK",
                oracle.passed(),
                oracle.lines.len()
            );
            println!(
                "reference bracketing: {}/{} cells OK",
                bracketing.passed(),
                bracketing.lines.len()
            );
            println!(
                "cache round-trip: {}",
                if cache_check.all_ok() { "OK" } else { "FAIL" }
            );
        }
    }
    if oracle.all_ok() && bracketing.all_ok() && cache_check.all_ok() {
        0
    } else {
        1
    }
}

/// Store-then-load must reproduce the graph bit for bit, and a corrupted
/// byte must be caught by the checksum. Runs in a scratch subdirectory so
/// an existing cache is never touched.
fn check_cache_round_trip(dir: Option<std::path::PathBuf>) -> CheckReport {
    let mut report = CheckReport::default();
    let scratch = format!("growthbound-roundtrip-{}", std::process::id());
    let dir = dir.unwrap_or_else(std::env::temp_dir).join(scratch);
    let task = TaskSpec::new(2, "3".parse().unwrap(), 2).unwrap();
    let outcome = (|| -> Result<(bool, bool), Error> {
        let reference = FactorGraph::build(&task)?;
        let mut cache = GraphCache::new(Some(dir.clone()));
        let (stored, _) = cache.load_or_build(&task)?;
        let (loaded, _) = cache.load_or_build(&task)?;
        let identical =
            stored.to_text() == loaded.to_text() && loaded.to_text() == reference.to_text();
        // flip one byte and make sure the checksum complains
        let path = std::fs::read_dir(&dir)
            .ok()
            .and_then(|mut it| it.next().and_then(|e| e.ok()).map(|e| e.path()));
        let rejected = match path {
            Some(p) => {
                let mut bytes = std::fs::read(&p).unwrap_or_default();
                if let Some(b) = bytes.last_mut() {
                    *b = b.wrapping_add(1);
                }
                std::fs::write(&p, bytes).is_ok() && {
                    let (again, status) = cache.load_or_build(&task)?;
                    status == crate::cache::CacheStatus::Rejected
                        && again.to_text() == reference.to_text()
                }
            }
            None => false,
        };
        Ok((identical, rejected))
    })();
    match outcome {
        Ok((identical, rejected)) => {
            report.lines.push(growthbound_core::verify::CheckLine {
                name: "cache round-trip".to_string(),
                ok: identical,
                detail: "load(store(g)) identical".to_string(),
            });
            report.lines.push(growthbound_core::verify::CheckLine {
                name: "cache corruption detection".to_string(),
                ok: rejected,
                detail: "flipped byte rejected by checksum".to_string(),
            });
        }
        Err(e) => report.lines.push(growthbound_core::verify::CheckLine {
            name: "cache round-trip".to_string(),
            ok: false,
            detail: format!("failed: {e}"),
        }),
    }
    let _ = std::fs::remove_dir_all(&dir);
    report
}
