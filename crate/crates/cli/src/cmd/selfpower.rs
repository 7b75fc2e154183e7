use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use numlab_core::selfpower::{
    digit_count_pow_big, is_repdigit, search_amicable_with, search_selfpower_cwn_with, sequence_gaps,
    verify_amicable, AmicableTuple, SelfPowerRecord, Sequence,
};
use serde_json::json;

use crate::args::{SelfpowerCmd, SeqArg};
use crate::config::RunConfig;
use crate::report::{lines, CliError, CliResult, Report};

pub fn run(cmd: &SelfpowerCmd, cfg: &RunConfig) -> CliResult<Report> {
    match cmd {
        SelfpowerCmd::Count { n, exp } => {
            let exp = match exp {
                Some(e) => *e,
                None => n.to_u64().ok_or_else(|| CliError::Usage(format!("exponent {n} is too large")))?,
            };
            let d = digit_count_pow_big(n, exp)?;
            let repdigit = is_repdigit(d.digits);
            let text = format!("{n}^{exp} has {} digits ({}, repdigit {repdigit})\n", d.digits, d.method.as_str());
            let csv = format!("n,digit_count,repdigit_flag,method\n{n},{},{},{}\n", d.digits, u8::from(repdigit), d.method.as_str());
            Ok(Report::new(
                text,
                json!({
                    "base": n.to_string(),
                    "exponent": exp.to_string(),
                    "digit_count": d.digits.to_string(),
                    "repdigit": repdigit,
                    "method": d.method.as_str(),
                    "precision_bits": d.precision_bits,
                }),
            )
            .with_csv(csv))
        }
        SelfpowerCmd::Search { limit, .. } => {
            let records = search_selfpower_cwn_with(*limit, cfg.exec())?;
            Ok(records_report(&records))
        }
        SelfpowerCmd::Amicable { k, bound, limit, min_digits, verify } => {
            if let Some(members) = verify {
                return match verify_amicable(members)? {
                    Some(t) => Ok(tuples_report(&[t])),
                    None => {
                        let counts = numlab_core::selfpower::cyclic_counts(members)?;
                        let t = AmicableTuple { members: members.clone(), digit_counts: counts };
                        Ok(tuples_report(&[t]).failing())
                    }
                };
            }
            let found = search_amicable_with(*k as usize, *bound, *limit as usize, *min_digits, cfg.exec())?;
            Ok(tuples_report(&found))
        }
        SelfpowerCmd::Gaps { seq, count } => {
            let which = match seq {
                SeqArg::S1 => Sequence::Repdigits,
                SeqArg::S2 => Sequence::SelfPowerLengths,
            };
            let gaps = sequence_gaps(which, *count as usize)?;
            let strings: Vec<String> = gaps.iter().map(BigUint::to_string).collect();
            Ok(Report::new(lines(&strings), json!({"gaps": strings}))
                .with_csv(lines(std::iter::once("gap".to_string()).chain(strings.iter().cloned()))))
        }
    }
}

pub fn records_report(records: &[SelfPowerRecord]) -> Report {
    let mut text = String::new();
    let mut csv = String::from("n,digit_count,repdigit_flag,method\n");
    for r in records {
        let _ = writeln!(text, "{} {} {}", r.n, r.digit_count, r.method.as_str());
        let _ = writeln!(csv, "{},{},{},{}", r.n, r.digit_count, u8::from(r.is_constant_word), r.method.as_str());
    }
    let json = json!(records
        .iter()
        .map(|r| json!({
            "n": r.n.to_string(),
            "digit_count": r.digit_count.to_string(),
            "repdigit": r.is_constant_word,
            "method": r.method.as_str(),
        }))
        .collect::<Vec<_>>());
    Report::new(text, json).with_csv(csv)
}

pub fn tuples_report(tuples: &[AmicableTuple]) -> Report {
    let fmt = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let text = lines(tuples.iter().map(|t| format!("({}) -> ({})", fmt(&t.members), fmt(&t.digit_counts))));
    let csv = lines(
        std::iter::once("members,digit_counts".to_string())
            .chain(tuples.iter().map(|t| format!("\"{}\",\"{}\"", fmt(&t.members), fmt(&t.digit_counts)))),
    );
    let json = json!(tuples
        .iter()
        .map(|t| json!({
            "members": t.members.iter().map(u64::to_string).collect::<Vec<_>>(),
            "digit_counts": t.digit_counts.iter().map(u64::to_string).collect::<Vec<_>>(),
        }))
        .collect::<Vec<_>>());
    Report::new(text, json).with_csv(csv)
}
