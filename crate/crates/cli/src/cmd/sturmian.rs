use std::fmt::Write as _;
use std::path::Path;

use numlab_core::sturmian::{Param, PlanarPath, SturmianWord, SvgStyle, Weight};
use serde_json::json;

use crate::args::{StyleArgs, SturmianCmd, WeightArg, WordArgs};
use crate::config::RunConfig;
use crate::report::{lines, CliError, CliResult, Report};

pub fn build_word(args: &WordArgs, precision_bits: u32) -> CliResult<SturmianWord> {
    let parse = |s: &str| s.parse::<Param>().map_err(|e| CliError::Usage(e.to_string()));
    let theta = parse(&args.theta)?;
    let phi = match &args.phi {
        Some(p) => parse(p)?,
        None if theta == Param::golden_slope() => Param::golden_intercept(),
        None => parse("0.2")?,
    };
    Ok(SturmianWord::with_precision(theta, phi, precision_bits)?)
}

fn style(s: &StyleArgs) -> SvgStyle {
    SvgStyle { unit: s.unit, stroke: s.stroke.clone(), mark_color: s.mark_color.clone(), ..SvgStyle::default() }
}

pub fn run(cmd: &SturmianCmd, cfg: &RunConfig) -> CliResult<Report> {
    let exec = cfg.exec();
    let bits = cfg.precision_bits;
    match cmd {
        SturmianCmd::Prefix { word, len } => {
            let s = build_word(word, bits)?.prefix_string(*len as usize)?;
            Ok(Report::new(format!("{s}\n"), json!({"prefix": s})))
        }
        SturmianCmd::Complexity { word, max_n, sample } => {
            let c = build_word(word, bits)?.complexity(*max_n as usize, *sample as usize)?;
            let sturmian = c.iter().all(|&(n, p)| p == n + 1);
            let rows = c.iter().map(|(n, p)| format!("{n} {p}"));
            let csv = lines(std::iter::once("n,factors".to_string()).chain(c.iter().map(|(n, p)| format!("{n},{p}"))));
            let report = Report::new(
                lines(rows),
                json!({"sample": sample, "counts": c.iter().map(|(n, p)| json!({"n": n, "factors": p})).collect::<Vec<_>>()}),
            )
            .with_csv(csv);
            Ok(if sturmian { report } else { report.failing() })
        }
        SturmianCmd::Curve { word, steps, svg, style: st } => {
            let path = build_word(word, bits)?.odd_even_curve(*steps as usize)?;
            path_report(&path, svg.as_deref(), &style(st))
        }
        SturmianCmd::Walk { word, steps, svg, mirror, style: st } => {
            let path = build_word(word, bits)?.parity_walk(*steps as usize, *mirror, exec)?;
            path_report(&path, svg.as_deref(), &style(st))
        }
        SturmianCmd::Density { word, sample } => {
            let d = build_word(word, bits)?.density(*sample as usize)?;
            let value = *d.numer() as f64 / *d.denom() as f64;
            Ok(Report::new(
                format!("{}/{} = {value:.7}\n", d.numer(), d.denom()),
                json!({"sample": sample, "b_count": (d.numer() * (sample / d.denom())), "density": value,
                       "exact": format!("{}/{}", d.numer(), d.denom())}),
            ))
        }
        SturmianCmd::Slope { word, x, weight } => {
            let weight = match weight {
                WeightArg::Riesz => Weight::Riesz,
                WeightArg::Literal => Weight::Literal,
            };
            let m = build_word(word, bits)?.mollified_average(*x, weight, exec)?;
            let mut text = String::new();
            let _ = writeln!(text, "x {}", m.x);
            let _ = writeln!(text, "value {:.6}", m.value);
            if let Some(e) = &m.exact {
                let _ = writeln!(text, "exact {e}");
            }
            let _ = writeln!(text, "slope {:.6}", m.slope);
            let _ = writeln!(text, "beta {:.6}", m.beta);
            let _ = writeln!(text, "predicted {:.6}", m.predicted_slope);
            Ok(Report::new(text, serde_json::to_value(&m).expect("serializable")))
        }
    }
}

fn path_report(path: &PlanarPath, svg_out: Option<&Path>, style: &SvgStyle) -> CliResult<Report> {
    let svg = path.to_svg(style);
    let json = serde_json::to_value(path).expect("serializable");
    let Some(out) = svg_out else {
        return Ok(Report::new(svg, json));
    };
    std::fs::write(out, &svg).map_err(|e| CliError::io(out, e))?;
    let end = path.points.last().copied().unwrap_or((0, 0));
    let text = format!(
        "steps {}\nend {},{}\nmarks {}\n",
        path.points.len() - 1,
        end.0,
        end.1,
        path.marks.len()
    );
    Ok(Report::new(text, json))
}
