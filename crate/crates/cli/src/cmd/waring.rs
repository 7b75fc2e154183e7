use num_bigint::BigUint;
use numlab_core::waring::{
    distinct_positive, four_cube_reps_with, ordered_count, primitive_solutions, tower_lift, CubeQuad, Primitivity,
};
use numlab_core::Exec;
use serde_json::{json, Value};

use crate::args::WaringCmd;
use crate::config::RunConfig;
use crate::report::{lines, CliResult, Report};

pub fn run(cmd: &WaringCmd, cfg: &RunConfig) -> CliResult<Report> {
    let exec = cfg.exec();
    match *cmd {
        WaringCmd::Reps { target, positive, .. } => {
            let quads = reps(target, exec)?;
            let quads = if positive { distinct_positive(&quads) } else { quads };
            Ok(quads_report(&BigUint::from(target), &quads))
        }
        WaringCmd::Count { target } => {
            let quads = reps(target, exec)?;
            let k = ordered_count(&quads);
            let text = format!("target {target}\nquads {}\nordered_count {k}\n", quads.len());
            Ok(Report::new(
                text,
                json!({"target": target.to_string(), "quads": quads.len(), "ordered_count": k}),
            ))
        }
        WaringCmd::Lift { root, b } => {
            let lifted = tower_lift(&CubeQuad::from_components(root), b)?;
            Ok(quads_report(&lifted.target().clone(), &[lifted]))
        }
        WaringCmd::Primitive { target, limit_first, strong } => {
            let mode = if strong { Primitivity::Strong } else { Primitivity::Weak };
            let mut quads = primitive_solutions(&reps(target, exec)?, mode);
            if let Some(k) = limit_first {
                quads.truncate(k as usize);
            }
            Ok(quads_report(&BigUint::from(target), &quads))
        }
    }
}

pub fn reps(target: u64, exec: Exec) -> CliResult<Vec<CubeQuad>> {
    Ok(four_cube_reps_with(target, true, exec, exec.default_chunks())?)
}

/// One `(m,n,p,q)` per line; JSON with every integer as a string.
pub fn quads_report(target: &BigUint, quads: &[CubeQuad]) -> Report {
    let text = lines(quads.iter().map(|q| q.to_string()));
    let json_quads: Vec<Value> = quads.iter().map(|q| json!(q.to_strings())).collect();
    let csv = std::iter::once("m,n,p,q".to_string())
        .chain(quads.iter().map(|q| q.to_strings().join(",")))
        .collect::<Vec<_>>();
    Report::new(
        text,
        json!({
            "target": target.to_string(),
            "quads": json_quads,
            "ordered_count": ordered_count(quads),
        }),
    )
    .with_csv(lines(csv))
}
