//! `sweep`: evaluate a one-parameter family on a grid and write CSV.

use std::path::Path;

use super::report::{SweepReport, SweepRow};
use super::{CliError, CliResult, SweepArgs, SweepFamily};
use crate::bloch::decompose;
use crate::bounds::{gd_lower_bound, isotropic_gd, min_upper_bound, werner_gd};
use crate::monogamy::{make_counterexample, monogamy_report};
use crate::oracle::{oracle_gd, OracleConfig};
use crate::states;

pub const HEADER: [&str; 6] = [
    "param",
    "gd_lower",
    "min_upper",
    "closed_form",
    "oracle_gd",
    "deficit",
];

/// Parse `start:stop:count` into `count` evenly spaced points, endpoints
/// included.
pub fn parse_grid(spec: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || CliError::Usage(format!("grid must be start:stop:count, got {spec:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    match count {
        0 => Err(CliError::Usage("grid is empty".into())),
        1 => Ok(vec![start]),
        _ => Ok((0..count)
            .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
            .collect()),
    }
}

pub(super) fn run(a: &SweepArgs, cfg: &OracleConfig) -> CliResult<SweepReport> {
    let grid = parse_grid(&a.grid)?;
    if a.oracle {
        cfg.validate()?;
    }
    let mut rows = Vec::with_capacity(grid.len());
    for &t in &grid {
        let row = match a.family {
            SweepFamily::Werner | SweepFamily::Isotropic => {
                let (s, cf) = if a.family == SweepFamily::Werner {
                    (states::werner(a.m, t)?, werner_gd(a.m, t)?)
                } else {
                    (states::isotropic(a.m, t)?, isotropic_gd(a.m, t)?)
                };
                let b = decompose(&s);
                let oracle = if a.oracle {
                    Some(oracle_gd(&s, cfg)?.best_value)
                } else {
                    None
                };
                SweepRow {
                    param: t,
                    gd_lower: Some(gd_lower_bound(&b)),
                    min_upper: Some(min_upper_bound(&b)),
                    closed_form: Some(cf),
                    oracle_gd: oracle,
                    deficit: None,
                }
            }
            SweepFamily::Counterexample => {
                let s = make_counterexample(t, a.qubits)?;
                let r = monogamy_report(&s)?;
                SweepRow {
                    param: t,
                    gd_lower: None,
                    min_upper: None,
                    closed_form: None,
                    oracle_gd: None,
                    deficit: Some(r.deficit),
                }
            }
        };
        rows.push(row);
    }
    write_csv(&a.out, &rows)?;
    Ok(SweepReport {
        family: format!("{:?}", a.family).to_lowercase(),
        out: a.out.display().to_string(),
        rows,
    })
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

fn write_csv(path: &Path, rows: &[SweepRow]) -> CliResult<()> {
    let io = |e: csv::Error| CliError::Io(format!("cannot write {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(HEADER).map_err(io)?;
    for r in rows {
        w.write_record([
            cell(Some(r.param)),
            cell(r.gd_lower),
            cell(r.min_upper),
            cell(r.closed_form),
            cell(r.oracle_gd),
            cell(r.deficit),
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
