//! File emission: CSV, SVG, JSON, and markdown artifacts.
//!
//! Every writer renders into a `String` first and hits the filesystem
//! exactly once per file, with `\n` line endings throughout, so repeated
//! runs of the same scenario produce byte-identical artifacts.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::metrics::RunMetrics;
use super::scenario::{OutputKind, RunOutput, ScenarioConfig, SweepRow};
use crate::equilibria::EquilibriumPoint;
use crate::error::{FracError, Result};
use crate::fraccalc::solver::Trajectory;
use crate::stability::StabilityReport;

/// Default artifact directory when neither the environment nor the CLI
/// names one.
pub const DEFAULT_OUT_DIR: &str = "fraceco_out";

/// Environment variable that overrides the artifact directory.
pub const OUT_DIR_ENV: &str = "FRACECO_OUT";

/// Where artifacts go: `FRACECO_OUT` beats the CLI flag, which beats
/// `./fraceco_out`.
pub fn resolve_out_dir(cli: Option<&Path>) -> PathBuf {
    resolve_out_dir_from(std::env::var_os(OUT_DIR_ENV), cli)
}

fn resolve_out_dir_from(env: Option<std::ffi::OsString>, cli: Option<&Path>) -> PathBuf {
    match env {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => cli
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR)),
    }
}

/// Shortest decimal form that round-trips an `f64`: fixed notation for
/// moderate magnitudes, scientific otherwise, 17 significant digits
/// before trailing-zero trimming (the C `%.17g` shape).
pub fn format_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x < 0.0 { "-inf".into() } else { "inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("{:.16e} always carries an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        let fixed = format!("{x:.decimals$}");
        trim_fraction(&fixed).to_string()
    } else {
        format!("{}e{:+03}", trim_fraction(mantissa), exp)
    }
}

/// Drops trailing zeros after the decimal point, and the point itself
/// when nothing remains behind it.
fn trim_fraction(s: &str) -> &str {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.')
}

fn write_file(dir: &Path, name: &str, text: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, text).map_err(|source| FracError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

const COMPONENT_NAMES: [&str; 3] = ["x", "y", "z"];

pub(crate) fn timeseries_csv(traj: &Trajectory) -> String {
    let mut out = String::from("t");
    for name in &COMPONENT_NAMES[..traj.dim] {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for i in 0..traj.n_points() {
        out.push_str(&format_g17(traj.grid.time(i)));
        for v in traj.row(i) {
            out.push(',');
            out.push_str(&format_g17(*v));
        }
        out.push('\n');
    }
    out
}

fn phase_csv(traj: &Trajectory) -> String {
    let mut out = COMPONENT_NAMES[..traj.dim].join(",");
    out.push('\n');
    for i in 0..traj.n_points() {
        let row = traj.row(i);
        for (c, v) in row.iter().enumerate() {
            if c > 0 {
                out.push(',');
            }
            out.push_str(&format_g17(*v));
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------- SVG ----

const SVG_W: f64 = 640.0;
const SVG_H: f64 = 480.0;
const MARGIN_L: f64 = 60.0;
const MARGIN_R: f64 = 15.0;
const MARGIN_T: f64 = 15.0;
const MARGIN_B: f64 = 40.0;
const PALETTE: [&str; 3] = ["#1f77b4", "#d62728", "#2ca02c"];
/// Polylines are thinned to at most this many vertices per series.
const MAX_SVG_POINTS: usize = 2000;

struct Span {
    lo: f64,
    hi: f64,
}

impl Span {
    fn of(values: impl Iterator<Item = f64>) -> Self {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        // Degenerate or empty ranges get unit padding so the projection
        // below stays finite.
        if hi <= lo || hi.is_nan() || lo.is_nan() {
            let mid = if lo.is_finite() { lo } else { 0.0 };
            lo = mid - 1.0;
            hi = mid + 1.0;
        }
        Span { lo, hi }
    }

    fn frac(&self, v: f64) -> f64 {
        (v - self.lo) / (self.hi - self.lo)
    }
}

fn axis_label(v: f64) -> String {
    let s = format!("{v:.4}");
    trim_fraction(&s).to_string()
}

/// One line chart; each series is (legend label, points).
fn svg_plot(x_label: &str, y_label: &str, series: &[(&str, Vec<(f64, f64)>)]) -> String {
    let xs = Span::of(series.iter().flat_map(|(_, p)| p.iter().map(|q| q.0)));
    let ys = Span::of(series.iter().flat_map(|(_, p)| p.iter().map(|q| q.1)));
    let px = |x: f64| MARGIN_L + xs.frac(x) * (SVG_W - MARGIN_L - MARGIN_R);
    let py = |y: f64| SVG_H - MARGIN_B - ys.frac(y) * (SVG_H - MARGIN_T - MARGIN_B);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_W}" height="{SVG_H}" viewBox="0 0 {SVG_W} {SVG_H}">"#
    );
    let _ = writeln!(
        svg,
        r##"  <rect x="{MARGIN_L}" y="{MARGIN_T}" width="{}" height="{}" fill="none" stroke="#888888" stroke-width="1"/>"##,
        SVG_W - MARGIN_L - MARGIN_R,
        SVG_H - MARGIN_T - MARGIN_B
    );
    for (i, (label, points)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let stride = points.len().div_ceil(MAX_SVG_POINTS).max(1);
        let mut attr = String::new();
        for (j, (x, y)) in points.iter().enumerate() {
            if j % stride != 0 && j != points.len() - 1 {
                continue;
            }
            if !attr.is_empty() {
                attr.push(' ');
            }
            let _ = write!(attr, "{:.2},{:.2}", px(*x), py(*y));
        }
        let _ = writeln!(
            svg,
            r#"  <polyline fill="none" stroke="{color}" stroke-width="1.5" points="{attr}"/>"#
        );
        if series.len() > 1 {
            let _ = writeln!(
                svg,
                r#"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" fill="{color}" text-anchor="end">{label}</text>"#,
                SVG_W - MARGIN_R - 8.0,
                MARGIN_T + 18.0 + 16.0 * i as f64
            );
        }
    }
    let ticks = [
        (px(xs.lo), SVG_H - MARGIN_B + 16.0, "middle", axis_label(xs.lo)),
        (px(xs.hi), SVG_H - MARGIN_B + 16.0, "middle", axis_label(xs.hi)),
        (MARGIN_L - 6.0, SVG_H - MARGIN_B + 4.0, "end", axis_label(ys.lo)),
        (MARGIN_L - 6.0, MARGIN_T + 9.0, "end", axis_label(ys.hi)),
    ];
    for (x, y, anchor, text) in ticks {
        let _ = writeln!(
            svg,
            r##"  <text x="{x:.2}" y="{y:.2}" font-family="sans-serif" font-size="12" fill="#333333" text-anchor="{anchor}">{text}</text>"##
        );
    }
    let _ = writeln!(
        svg,
        r##"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" fill="#333333" text-anchor="middle">{x_label}</text>"##,
        (MARGIN_L + SVG_W - MARGIN_R) / 2.0,
        SVG_H - 8.0
    );
    let _ = writeln!(
        svg,
        r##"  <text x="14" y="{:.2}" font-family="sans-serif" font-size="13" fill="#333333" text-anchor="middle" transform="rotate(-90 14 {:.2})">{y_label}</text>"##,
        (MARGIN_T + SVG_H - MARGIN_B) / 2.0,
        (MARGIN_T + SVG_H - MARGIN_B) / 2.0
    );
    svg.push_str("</svg>\n");
    svg
}

fn timeseries_svg(traj: &Trajectory) -> String {
    let times: Vec<f64> = (0..traj.n_points()).map(|i| traj.grid.time(i)).collect();
    let series: Vec<(&str, Vec<(f64, f64)>)> = (0..traj.dim)
        .map(|c| {
            let pts = times.iter().copied().zip(traj.component(c)).collect();
            (COMPONENT_NAMES[c], pts)
        })
        .collect();
    svg_plot("t", "density", &series)
}

fn projection_svg(traj: &Trajectory, cx: usize, cy: usize) -> String {
    let pts: Vec<(f64, f64)> = traj.component(cx).zip(traj.component(cy)).collect();
    let series = [("orbit", pts)];
    svg_plot(COMPONENT_NAMES[cx], COMPONENT_NAMES[cy], &series)
}

// --------------------------------------------------- stability report ----

fn stability_md(reports: &[StabilityReport]) -> String {
    let mut md = String::from("# Stability summary\n");
    for r in reports {
        let _ = writeln!(
            md,
            "\n## {} — {:?} (alpha = {})\n",
            r.equilibrium.label,
            r.verdict,
            format_g17(r.order)
        );
        let coords: Vec<String> = r.equilibrium.coords.iter().map(|v| format_g17(*v)).collect();
        let _ = writeln!(md, "- point: ({})", coords.join(", "));
        let eigs: Vec<String> = r
            .eigenvalues
            .iter()
            .map(|e| format!("{} {} {}i", format_g17(e.re), if e.im < 0.0 { "-" } else { "+" }, format_g17(e.im.abs())))
            .collect();
        let _ = writeln!(md, "- eigenvalues: {}", eigs.join(", "));
        let _ = writeln!(md, "- stability margin: {}", format_g17(r.matignon_margin));
        match r.critical_alpha {
            Some(a) => {
                let _ = writeln!(md, "- critical order: {}", format_g17(a));
            }
            None => {
                let _ = writeln!(md, "- critical order: none");
            }
        }
        if !r.conditions.is_empty() {
            md.push_str("\n| condition | lhs | relation | rhs | pass |\n");
            md.push_str("|---|---|---|---|---|\n");
            for c in &r.conditions {
                let _ = writeln!(
                    md,
                    "| {} | {} | {} | {} | {} |",
                    c.name,
                    format_g17(c.lhs),
                    c.relation,
                    format_g17(c.rhs),
                    if c.pass { "✓" } else { "✗" }
                );
            }
        }
        for note in &r.notes {
            let _ = writeln!(md, "\n> {note}");
        }
    }
    md
}

fn pretty_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct MetricsDoc<'a> {
    metrics: &'a RunMetrics,
    target: &'a EquilibriumPoint,
}

/// Writes the artifacts selected by `cfg.outputs` into `dir`, creating
/// it if needed, and returns the paths written (in emission order).
///
/// # Errors
/// `Io` with the offending path on any filesystem failure.
pub fn emit_run(cfg: &ScenarioConfig, out: &RunOutput, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|source| FracError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let traj = &out.trajectory;
    let mut written = Vec::new();
    for kind in &cfg.outputs {
        match kind {
            OutputKind::Timeseries => {
                written.push(write_file(dir, "timeseries.csv", &timeseries_csv(traj))?);
                written.push(write_file(dir, "timeseries.svg", &timeseries_svg(traj))?);
            }
            OutputKind::PhasePortrait => {
                written.push(write_file(dir, "phase.csv", &phase_csv(traj))?);
                if traj.dim == 2 {
                    written.push(write_file(dir, "phase.svg", &projection_svg(traj, 0, 1))?);
                } else {
                    written.push(write_file(dir, "phase_xy.svg", &projection_svg(traj, 0, 1))?);
                    written.push(write_file(dir, "phase_xz.svg", &projection_svg(traj, 0, 2))?);
                    written.push(write_file(dir, "phase_yz.svg", &projection_svg(traj, 1, 2))?);
                }
            }
            OutputKind::StabilityReport => {
                written.push(write_file(dir, "stability.json", &pretty_json(&out.reports))?);
                written.push(write_file(dir, "stability.md", &stability_md(&out.reports))?);
            }
            OutputKind::Metrics => {
                let doc = MetricsDoc {
                    metrics: &out.metrics,
                    target: &out.target,
                };
                written.push(write_file(dir, "metrics.json", &pretty_json(&doc))?);
            }
        }
    }
    Ok(written)
}

/// Renders a sweep table as CSV: one row per axis value, with the
/// settling time (empty when the run never settles), per-component
/// late amplitudes, and the extinction flag.
pub fn sweep_csv(axis: &str, dim: usize, rows: &[SweepRow]) -> String {
    let mut out = format!("{axis},settling_time");
    for name in &COMPONENT_NAMES[..dim] {
        let _ = write!(out, ",amp_{name}");
    }
    out.push_str(",extinction\n");
    for row in rows {
        out.push_str(&format_g17(row.value));
        out.push(',');
        if let Some(s) = row.metrics.settling_time {
            out.push_str(&format_g17(s));
        }
        for a in &row.metrics.late_amplitude {
            out.push(',');
            out.push_str(&format_g17(*a));
        }
        let _ = writeln!(out, ",{}", row.metrics.extinction_flag);
    }
    out
}

/// Writes `sweep.csv` into `dir` and returns its path.
///
/// # Errors
/// `Io` with the offending path on any filesystem failure.
pub fn emit_sweep(axis: &str, dim: usize, rows: &[SweepRow], dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|source| FracError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    write_file(dir, "sweep.csv", &sweep_csv(axis, dim, rows))
}
