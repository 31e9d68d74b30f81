//! Boundary-curve tracing and emission: polyline CSV at 17 significant
//! digits and a small hand-rolled SVG overlay, enough for the stock figures.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use sgnlap::{trace_curve, BoundId, EnclosureSpec};

use crate::report::{Check, SuiteReport};

#[derive(Debug, Clone)]
pub struct Curve {
    pub label: String,
    pub spec: EnclosureSpec,
    /// Rows (θ, Re λ, Im λ): the upper half followed by its mirror image.
    pub rows: Vec<[f64; 3]>,
}

pub fn trace(label: &str, spec: EnclosureSpec, samples: usize) -> Result<Curve> {
    let rows = trace_curve(&spec, samples).with_context(|| format!("tracing {label}"))?;
    Ok(Curve {
        label: label.to_string(),
        spec,
        rows,
    })
}

/// The stock overlays: `figure1` is the q = 1 pair (the √-bound circle with
/// the cardioid-like L¹ curve); `figure2` is the nested p = 1.25 family at
/// q = 1.25^j/10, j = 1..10.
pub fn preset_curves(name: &str, samples: usize) -> Result<Vec<Curve>> {
    match name {
        "figure1" => Ok(vec![
            trace(
                "sqrt bound, q=1",
                EnclosureSpec::with_q(BoundId::Bst, 1.0),
                samples,
            )?,
            trace(
                "l1 bound, q=1",
                EnclosureSpec::with_q(BoundId::L1, 1.0),
                samples,
            )?,
        ]),
        "figure2" => (1..=10)
            .map(|j| {
                let q = 1.25f64.powi(j) / 10.0;
                trace(
                    &format!("lp bound, p=1.25, q={q:.6}"),
                    EnclosureSpec::with_pq(BoundId::Lp, 1.25, q),
                    samples,
                )
            })
            .collect(),
        other => bail!("unknown preset {other:?} (available: figure1, figure2)"),
    }
}

pub fn csv_string(rows: &[[f64; 3]]) -> String {
    let mut out = String::with_capacity(80 * rows.len() + 16);
    out.push_str("theta,re,im\n");
    for r in rows {
        // {:.16e} prints 17 significant digits, enough to round-trip an f64.
        let _ = writeln!(out, "{:.16e},{:.16e},{:.16e}", r[0], r[1], r[2]);
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<[f64; 3]>> {
    let mut lines = text.lines();
    match lines.next() {
        Some("theta,re,im") => {}
        other => bail!("bad curve CSV header {other:?}"),
    }
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut cols = line.split(',');
        let mut row = [0.0; 3];
        for slot in &mut row {
            let field = cols
                .next()
                .with_context(|| format!("row {}: missing column", k + 1))?;
            *slot = field
                .trim()
                .parse()
                .with_context(|| format!("row {}: bad float {field:?}", k + 1))?;
        }
        if cols.next().is_some() {
            bail!("row {}: too many columns", k + 1);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Minimal SVG: one closed polyline per curve over drawn axes, with a small
/// legend.  Coordinates are rounded to 0.01 px so output is reproducible.
pub fn svg_string(curves: &[Curve]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 640.0;
    const M: f64 = 48.0;
    const PALETTE: [&str; 10] = [
        "#1f6fb2", "#c23b3b", "#2e8b57", "#8053a8", "#c77f2b", "#3aa0a0", "#a84f78", "#6b8e23",
        "#555555", "#9b4dca",
    ];

    let mut lo = [0.0f64; 2];
    let mut hi = [0.0f64; 2];
    for c in curves {
        for r in &c.rows {
            for ax in 0..2 {
                lo[ax] = lo[ax].min(r[ax + 1]);
                hi[ax] = hi[ax].max(r[ax + 1]);
            }
        }
    }
    for ax in 0..2 {
        if !(hi[ax] - lo[ax] > 0.0) {
            lo[ax] -= 0.5;
            hi[ax] += 0.5;
        }
        let pad = 0.05 * (hi[ax] - lo[ax]);
        lo[ax] -= pad;
        hi[ax] += pad;
    }
    let sx = (W - 2.0 * M) / (hi[0] - lo[0]);
    let sy = (H - 2.0 * M) / (hi[1] - lo[1]);
    let map = |x: f64, y: f64| (M + (x - lo[0]) * sx, H - M - (y - lo[1]) * sy);

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">"
    );
    let _ = writeln!(s, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
    let (x0, y0) = map(lo[0], 0.0);
    let (x1, y1) = map(hi[0], 0.0);
    let _ = writeln!(
        s,
        "<line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y1:.2}\" stroke=\"#999\" stroke-width=\"1\"/>"
    );
    let (x0, y0) = map(0.0, lo[1]);
    let (x1, y1) = map(0.0, hi[1]);
    let _ = writeln!(
        s,
        "<line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y1:.2}\" stroke=\"#999\" stroke-width=\"1\"/>"
    );
    let _ = writeln!(
        s,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" fill=\"#666\">Re λ</text>",
        W - M + 4.0,
        map(0.0, 0.0).1 - 4.0
    );
    let _ = writeln!(
        s,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" fill=\"#666\">Im λ</text>",
        map(0.0, 0.0).0 + 4.0,
        M - 8.0
    );
    for (k, c) in curves.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let mut pts = String::new();
        for r in &c.rows {
            let (x, y) = map(r[1], r[2]);
            let _ = write!(pts, "{x:.2},{y:.2} ");
        }
        if let Some(first) = c.rows.first() {
            let (x, y) = map(first[1], first[2]);
            let _ = write!(pts, "{x:.2},{y:.2}");
        }
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
            pts.trim_end()
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" fill=\"{color}\">{}</text>",
            M + 6.0,
            M + 14.0 * (k as f64 + 1.0),
            escape_xml(&c.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

/// `out.csv` for a single curve, `out-1.csv`, `out-2.csv`, … for overlays.
fn numbered_path(base: &Path, k: usize, total: usize) -> PathBuf {
    if total == 1 {
        return base.to_path_buf();
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("curve");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    base.with_file_name(format!("{stem}-{}.{ext}", k + 1))
}

#[derive(Debug, Clone)]
pub struct CurveArgs {
    pub bound: Option<BoundId>,
    pub p: f64,
    pub q: f64,
    pub samples: usize,
    pub preset: Option<String>,
    pub out: PathBuf,
    pub svg: Option<PathBuf>,
}

pub fn cmd_enclosure_curve(args: &CurveArgs) -> Result<SuiteReport> {
    let curves = if let Some(preset) = &args.preset {
        preset_curves(preset, args.samples)?
    } else {
        let bound = args
            .bound
            .context("--bound is required unless --preset is given")?;
        let spec = match bound {
            BoundId::Lp => EnclosureSpec::with_pq(BoundId::Lp, args.p, args.q),
            b => EnclosureSpec::with_q(b, args.q),
        };
        vec![trace(
            &format!("{} bound, q={}", bound.as_str().to_ascii_lowercase(), args.q),
            spec,
            args.samples,
        )?]
    };

    let mut report = SuiteReport::new("enclosure-curve");
    for (k, curve) in curves.iter().enumerate() {
        let path = numbered_path(&args.out, k, curves.len());
        write_file(&path, &csv_string(&curve.rows))?;
        report.artifacts.push(path.display().to_string());
        let min_r = curve
            .rows
            .iter()
            .map(|r| r[1].hypot(r[2]))
            .fold(f64::INFINITY, f64::min);
        report.checks.push(Check::ge(
            &format!("radius_positive[{k}]"),
            "boundary radius r(θ) stays positive and finite",
            min_r,
            f64::MIN_POSITIVE,
        ));
        report.checks.push(Check::ge(
            &format!("rows_emitted[{k}]"),
            "two mirrored half-plane polylines",
            curve.rows.len() as f64,
            (2 * args.samples) as f64,
        ));
    }
    if args.preset.as_deref() == Some("figure2") {
        let mut min_gap = f64::INFINITY;
        for pair in curves.windows(2) {
            for (a, b) in pair[0].rows.iter().zip(&pair[1].rows) {
                min_gap = min_gap.min(b[1].hypot(b[2]) - a[1].hypot(a[2]));
            }
        }
        report.checks.push(Check::flag(
            "curves_nested",
            "growing q strictly nests the boundary curves",
            min_gap > 0.0,
            min_gap,
            0.0,
        ));
    }
    if let Some(svg) = &args.svg {
        write_file(svg, &svg_string(&curves))?;
        report.artifacts.push(svg.display().to_string());
    }
    Ok(report)
}
