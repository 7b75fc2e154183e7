use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigUint;
use numlab_core::arith::factorize;
use numlab_core::covering::{
    fcfs_extend, instantiate, minimal_covering, run_witnesses, search_complete_coverings_with, verify_run,
    Availability, CoveringState, ExtensionTrace, SearchMode, Side, EXHAUSTIVE_CAP,
};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::args::{AvailabilityArg, CoveringCmd, SideArg};
use crate::config::RunConfig;
use crate::report::{lines, CliError, CliResult, Report};

pub fn run(cmd: &CoveringCmd, cfg: &RunConfig) -> CliResult<Report> {
    match cmd {
        CoveringCmd::Search { length, exhaustive, first_found, exclude } => {
            let length = *length as usize;
            let mode = if *exhaustive || (!*first_found && length <= EXHAUSTIVE_CAP) {
                SearchMode::Exhaustive
            } else {
                SearchMode::FirstFound
            };
            let excluded: BTreeSet<u64> = exclude.iter().copied().collect();
            let found = search_complete_coverings_with(length, &excluded, mode, cfg.exec())?;
            let report = search_report(length, &excluded, mode, &found)?;
            Ok(if mode == SearchMode::FirstFound && found.is_empty() { report.failing() } else { report })
        }
        CoveringCmd::Fcfs { to, side, availability, report_available } => {
            let side = match side {
                SideArg::Right => Side::Right,
                SideArg::Left => Side::Left,
                SideArg::Alternate => Side::Alternate,
            };
            let availability = match availability {
                AvailabilityArg::TwoPearls => Availability::TwoPearls,
                AvailabilityArg::HalfLength => Availability::HalfLength,
            };
            let trace = fcfs_extend(&minimal_covering(), *to, side, availability)?;
            let report = trace_report(&trace, *report_available);
            Ok(if trace.stuck_at.is_some() { report.failing() } else { report })
        }
        CoveringCmd::Verify { start, length, exclude } => {
            let excluded: BTreeSet<u64> = exclude.iter().copied().collect();
            let report = verify_report(start, *length as usize, &excluded);
            Ok(if verify_run(start, *length as usize, &excluded) { report } else { report.failing() })
        }
        CoveringCmd::Instantiate { length, placements } => {
            let state = match placements {
                Some(p) => {
                    let length =
                        length.ok_or_else(|| CliError::Usage("--length is required with --placements".into()))?;
                    CoveringState::from_placements(length as usize, p)?
                }
                None => minimal_covering(),
            };
            let (a, m) = instantiate(&state)?;
            let text = format!("start {a}\nmodulus {m}\n");
            Ok(Report::new(text, json!({"start": a.to_string(), "modulus": m.to_string()})))
        }
    }
}

fn placements_json(state: &CoveringState) -> Value {
    Value::Array(state.placements().map(|p| json!({"prime": p.prime, "offset": p.offset})).collect())
}

fn placements_text(state: &CoveringState) -> String {
    state.placements().map(|p| format!("{}:{}", p.prime, p.offset)).collect::<Vec<_>>().join(",")
}

pub fn search_report(
    length: usize,
    excluded: &BTreeSet<u64>,
    mode: SearchMode,
    found: &[CoveringState],
) -> CliResult<Report> {
    let mut text = format!("length {length}\ncoverings {}\n", found.len());
    let mut items = Vec::new();
    for state in found {
        let (a, m) = instantiate(state)?;
        let verified = verify_run(&a, length, excluded);
        let _ = writeln!(text, "{} start={a} verified={verified}", placements_text(state));
        items.push(json!({
            "placements": placements_json(state),
            "start": a.to_string(),
            "modulus": m.to_string(),
            "verified": verified,
        }));
    }
    let mode = match mode {
        SearchMode::Exhaustive => "exhaustive",
        SearchMode::FirstFound => "first-found",
    };
    Ok(Report::new(
        text,
        json!({
            "length": length,
            "excluded": excluded.iter().collect::<Vec<_>>(),
            "mode": mode,
            "coverings": items,
        }),
    ))
}

pub fn trace_report(trace: &ExtensionTrace, report_available: bool) -> Report {
    let steps: Vec<Value> = trace.steps.iter().map(|s| json!({"box": s.box_index, "prime": s.prime})).collect();
    let mut obj = Map::new();
    obj.insert("steps".into(), Value::Array(steps));
    if report_available {
        let avail: Map<String, Value> =
            trace.available_counts.iter().map(|(b, n)| (b.to_string(), json!(n))).collect();
        obj.insert("available_at".into(), Value::Object(avail));
    }
    obj.insert("stuck_at".into(), json!(trace.stuck_at));
    obj.insert("final_length".into(), json!(trace.final_length));

    let mut text = String::new();
    for s in &trace.steps {
        if report_available {
            let n = trace.available_counts.get(&s.box_index).copied().unwrap_or(0);
            let _ = writeln!(text, "box {} prime {} available {n}", s.box_index, s.prime);
        } else {
            let _ = writeln!(text, "box {} prime {}", s.box_index, s.prime);
        }
    }
    match trace.stuck_at {
        Some(b) => {
            let _ = writeln!(text, "stuck at box {b}");
        }
        None => {
            let _ = writeln!(text, "reached length {}", trace.final_length);
        }
    }
    let csv = lines(
        std::iter::once("box,prime,available".to_string()).chain(trace.steps.iter().map(|s| {
            format!("{},{},{}", s.box_index, s.prime, trace.available_counts.get(&s.box_index).copied().unwrap_or(0))
        })),
    );
    Report::new(text, Value::Object(obj)).with_csv(csv)
}

/// Per-member witness primes and the small-prime factorisation.
pub fn verify_report(start: &BigUint, length: usize, excluded: &BTreeSet<u64>) -> Report {
    let witnesses = run_witnesses(start, length, excluded);
    let ok = verify_run(start, length, excluded);
    let mut text = String::new();
    let mut members = Vec::new();
    for (i, w) in witnesses.iter().enumerate() {
        let n = start + BigUint::from(i);
        let factors = n.to_u64().map(small_factors).unwrap_or_default();
        let _ = writeln!(
            text,
            "{n} = {} shares {}",
            if factors.is_empty() { "?".to_string() } else { factors.clone() },
            w.map_or("none".to_string(), |p| p.to_string())
        );
        members.push(json!({"n": n.to_string(), "factors": factors, "witness": w}));
    }
    let _ = writeln!(text, "{}", if ok { "covered" } else { "not covered" });
    Report::new(text, json!({"start": start.to_string(), "length": length, "covered": ok, "members": members}))
}

fn small_factors(n: u64) -> String {
    factorize(n)
        .iter()
        .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}
