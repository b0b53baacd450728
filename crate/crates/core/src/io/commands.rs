//! Command implementations shared by the `spacs` binary and the examples.
//!
//! Every command renders its tables in memory first; files are written only
//! once rendering succeeded (the audit is the exception, see
//! [`cmd_audit`]).

use std::f64::consts::PI;
use std::path::Path;

use crate::audit::{self, AuditGrid, AuditReport, Quantity};
use crate::error::{Error, Result};
use crate::io::grid::{GridSpec, WignerGrid};
use crate::io::manifest::{sidecar, FigSeries, Job, RunManifest};
use crate::io::table::{fmt_num, write_atomic, Cell, Table};
use crate::params::{self, ExperimentParams};
use crate::squeezing::{self, Backend, Exec, RangeSpec, SweepRow};

/// Legend of the weak-value curves in the s and r sweeps.
pub const DEFAULT_PHIS: [f64; 4] = [PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, 7.0 * PI / 9.0];

/// Coupling values of the fidelity columns.
pub const DEFAULT_FIDELITY_S: [f64; 4] = [0.5, 1.0, 2.0, 3.0];

pub const DEFAULT_S_RANGE: RangeSpec = RangeSpec {
    min: 0.0,
    max: 4.0,
    step: 0.02,
};

pub const DEFAULT_R_RANGE: RangeSpec = RangeSpec {
    min: 0.0,
    max: 3.0,
    step: 0.02,
};

/// Suffix of the audit summary written next to the row table.
pub const SUMMARY_SUFFIX: &str = ".summary.csv";

/// Optional overrides of a figure sweep.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FigOptions {
    pub phis: Option<Vec<f64>>,
    pub range: Option<RangeSpec>,
    pub s_values: Option<Vec<f64>>,
}

impl FigOptions {
    pub fn job(&self, series: FigSeries, params: &ExperimentParams) -> Job {
        let phis = match series {
            FigSeries::Fig3 => vec![params.phi],
            _ => self.phis.clone().unwrap_or_else(|| DEFAULT_PHIS.to_vec()),
        };
        let default_range = if series.sweeps_s() {
            DEFAULT_S_RANGE
        } else {
            DEFAULT_R_RANGE
        };
        let s_values = match series {
            FigSeries::Fig3 => self
                .s_values
                .clone()
                .unwrap_or_else(|| DEFAULT_FIDELITY_S.to_vec()),
            _ => Vec::new(),
        };
        Job::Fig {
            series,
            phis,
            sweep: self.range.unwrap_or(default_range),
            s_values,
        }
    }
}

/// Rendered output of one command.
struct Rendered {
    main: String,
    extras: Vec<(&'static str, String)>,
    /// text for stdout
    report: String,
    /// failure to surface after the files are written
    deferred: Option<Error>,
}

impl Rendered {
    fn table(t: &Table) -> Result<Rendered> {
        Ok(Rendered {
            main: t.to_csv_string()?,
            extras: Vec::new(),
            report: String::new(),
            deferred: None,
        })
    }
}

fn row_error(index: usize, label: String, e: &Error) -> Error {
    Error::Row {
        index,
        label,
        inner: Box::new(e.clone()),
    }
}

fn sweep_label(p: &ExperimentParams) -> String {
    format!("phi={}, r={}, s={}", fmt_num(p.phi), fmt_num(p.r), fmt_num(p.s))
}

const REPORT_COLUMNS: [&str; 9] = [
    "phi",
    "r",
    "s",
    "s_os",
    "s_ass",
    "var_x_min",
    "var_y_min",
    "n_mean",
    "fidelity",
];

fn sweep_table(rows: &[SweepRow]) -> Result<Table> {
    let mut t = Table::new(REPORT_COLUMNS);
    for (i, row) in rows.iter().enumerate() {
        let rep = row
            .result
            .as_ref()
            .map_err(|e| row_error(i, sweep_label(&row.params), e))?;
        let p = &row.params;
        t.push(vec![
            p.phi.into(),
            p.r.into(),
            p.s.into(),
            rep.s_os.into(),
            rep.s_ass.into(),
            rep.var_x_min.into(),
            rep.var_y_min.into(),
            rep.n_mean.into(),
            rep.fidelity_to_initial.into(),
        ]);
    }
    Ok(t)
}

fn fidelity_table(
    params: &ExperimentParams,
    r_range: RangeSpec,
    s_values: &[f64],
    backend: Backend,
    exec: Exec,
) -> Result<Table> {
    if backend != Backend::Oracle {
        return Err(Error::InvalidArgument(
            "fidelity needs the oracle backend".into(),
        ));
    }
    if s_values.is_empty() {
        return Err(Error::InvalidArgument("no coupling values given".into()));
    }
    let mut columns: Vec<Vec<SweepRow>> = Vec::new();
    for &s in s_values {
        let base = params.with_s(s);
        params::validate(base)?;
        columns.push(squeezing::sweep_r(&base, &[base.phi], r_range, backend, exec)?);
    }
    let mut header = vec!["r".to_owned()];
    header.extend(s_values.iter().map(|s| format!("fidelity_s{}", fmt_num(*s))));
    let mut t = Table::new(header);
    for (i, r) in r_range.points().into_iter().enumerate() {
        let mut row = vec![Cell::from(r)];
        for col in &columns {
            let sweep_row = &col[i];
            let rep = sweep_row
                .result
                .as_ref()
                .map_err(|e| row_error(i, sweep_label(&sweep_row.params), e))?;
            row.push(rep.fidelity_to_initial.into());
        }
        t.push(row);
    }
    Ok(t)
}

fn audit_tables(report: &AuditReport) -> (Table, Table) {
    let mut rows = Table::new([
        "quantity",
        "phi",
        "r",
        "s",
        "x",
        "p",
        "oracle_re",
        "oracle_im",
        "printed_re",
        "printed_im",
        "raw_residual",
        "fitted_scale",
        "scaled_residual",
        "error",
    ]);
    for r in &report.rows {
        let z = r.z;
        let num = |v: f64| if r.is_ok() { Cell::from(v) } else { Cell::Empty };
        rows.push(vec![
            Cell::from(r.quantity.name()),
            r.params.phi.into(),
            r.params.r.into(),
            r.params.s.into(),
            z.map(|z| z.re).into(),
            z.map(|z| z.im).into(),
            r.oracle.map(|o| o.re).into(),
            r.oracle.map(|o| o.im).into(),
            r.printed.map(|p| p.re).into(),
            r.printed.map(|p| p.im).into(),
            num(r.raw_residual),
            num(r.fitted_scale),
            num(r.scaled_residual),
            r.error.as_ref().map_or(Cell::Empty, |e| Cell::Text(e.to_string())),
        ]);
    }
    let mut summary = Table::new([
        "quantity",
        "subset",
        "scale",
        "max_raw_residual",
        "max_scaled_residual",
        "points",
        "failed",
    ]);
    for f in &report.fits {
        summary.push(vec![
            Cell::from(f.quantity.name()),
            Cell::from(f.subset),
            f.scale.into(),
            f.max_raw_residual.into(),
            f.max_scaled_residual.into(),
            f.points.into(),
            f.failed.into(),
        ]);
    }
    (rows, summary)
}

/// Key-value block for a single parameter point; every line reads as TOML.
pub fn point_report(params: &ExperimentParams, backend: Backend) -> Result<String> {
    let params = params.validate()?;
    let w = params.weak_value()?;
    let rep = squeezing::evaluate(&params, backend)?;
    let mut lines = vec![
        ("r", params.r),
        ("theta", params.theta),
        ("delta", params.delta),
        ("phi", params.phi),
        ("s", params.s),
        ("weak_value_re", w.value.re),
        ("weak_value_im", w.value.im),
        ("postselection_probability", params::postselection_probability(params.phi)?),
        ("s_os", rep.s_os),
        ("s_ass", rep.s_ass),
        ("var_x_min", rep.var_x_min),
        ("var_y_min", rep.var_y_min),
        ("n_mean", rep.n_mean),
    ];
    if let Some(f) = rep.fidelity_to_initial {
        lines.push(("fidelity_to_initial", f));
    }
    let mut out = format!("backend = \"{backend}\"\ntrunc = {}\n", params.trunc);
    for (k, v) in lines {
        out.push_str(&format!("{k} = {}\n", fmt_num(v)));
    }
    Ok(out)
}

fn render(job: &Job, params: &ExperimentParams, backend: Backend, exec: Exec) -> Result<Rendered> {
    match job {
        Job::Fig {
            series,
            phis,
            sweep,
            s_values,
        } => {
            let table = match series {
                FigSeries::Fig3 => fidelity_table(params, *sweep, s_values, backend, exec)?,
                s if s.sweeps_s() => sweep_table(&squeezing::sweep_s(params, phis, *sweep, backend, exec)?)?,
                _ => sweep_table(&squeezing::sweep_r(params, phis, *sweep, backend, exec)?)?,
            };
            Rendered::table(&table)
        }
        Job::Wigner { grid } => Rendered::table(&WignerGrid::evaluate(params, backend, grid, exec)?.to_table()),
        Job::Audit { quantities, grid } => {
            if quantities.is_empty() {
                return Err(Error::InvalidArgument("no audit quantities given".into()));
            }
            for p in grid.params.iter().chain(&grid.wigner_params) {
                p.validate()?;
            }
            let report = audit::compare(grid, quantities, exec);
            let (rows, summary) = audit_tables(&report);
            let summary_csv = summary.to_csv_string()?;
            let deferred = report.rows.iter().enumerate().find_map(|(i, r)| {
                let label = format!("{} at {}", r.quantity, sweep_label(&r.params));
                r.error.as_ref().map(|e| row_error(i, label, e))
            });
            Ok(Rendered {
                main: rows.to_csv_string()?,
                extras: vec![(SUMMARY_SUFFIX, summary_csv.clone())],
                report: summary_csv,
                deferred,
            })
        }
        Job::Point => {
            let block = point_report(params, backend)?;
            Ok(Rendered {
                main: block.clone(),
                extras: Vec::new(),
                report: block,
                deferred: None,
            })
        }
    }
}

/// Runs `job`, writes the output, its sidecars and manifest when `out` is
/// given, and returns the text meant for stdout.
pub fn run(
    job: Job,
    params: &ExperimentParams,
    backend: Backend,
    exec: Exec,
    out: Option<&Path>,
) -> Result<String> {
    let params = params.validate()?;
    let rendered = render(&job, &params, backend, exec)?;
    if let Some(out) = out {
        write_atomic(out, rendered.main.as_bytes())?;
        for (suffix, body) in &rendered.extras {
            write_atomic(&sidecar(out, suffix), body.as_bytes())?;
        }
        RunManifest::new(job, params, backend, out).write()?;
        log::info!("wrote {}", out.display());
    }
    match rendered.deferred {
        Some(e) => Err(e),
        None => Ok(rendered.report),
    }
}

/// Figure sweep as CSV: the report columns for fig1a/fig1b/fig2a/fig2b, or
/// `r` plus one fidelity column per coupling for fig3.
pub fn cmd_fig(
    series: FigSeries,
    opts: &FigOptions,
    params: &ExperimentParams,
    backend: Backend,
    exec: Exec,
    out: &Path,
) -> Result<()> {
    run(opts.job(series, params), params, backend, exec, Some(out)).map(drop)
}

/// Wigner grid as `x, p, W` CSV.
pub fn cmd_wigner(
    grid: GridSpec,
    params: &ExperimentParams,
    backend: Backend,
    exec: Exec,
    out: &Path,
) -> Result<()> {
    run(Job::Wigner { grid }, params, backend, exec, Some(out)).map(drop)
}

/// Printed-versus-oracle comparison.
///
/// Writes the row table to `out` and the per-quantity fits to
/// `<out>.summary.csv`, and returns the summary. Rows whose oracle
/// evaluation failed are kept in the table; the first of them is then
/// reported as an error after the files are written.
pub fn cmd_audit(quantities: &[Quantity], grid: &AuditGrid, exec: Exec, out: &Path) -> Result<String> {
    let job = Job::Audit {
        quantities: quantities.to_vec(),
        grid: grid.clone(),
    };
    run(job, &ExperimentParams::figure_preset(), Backend::Oracle, exec, Some(out))
}

/// Key-value report of one parameter point, optionally also written to
/// `out` with a manifest.
pub fn cmd_point(params: &ExperimentParams, backend: Backend, out: Option<&Path>) -> Result<String> {
    run(Job::Point, params, backend, Exec::Serial, out)
}

/// Re-runs the command recorded in a manifest. The output goes to `out`
/// when given, otherwise to the recorded path.
pub fn replay(manifest: &Path, out: Option<&Path>, exec: Exec) -> Result<String> {
    let m = RunManifest::read(manifest)?;
    let target = out.unwrap_or(&m.output);
    run(m.job, &m.params, m.backend, exec, Some(target))
}
