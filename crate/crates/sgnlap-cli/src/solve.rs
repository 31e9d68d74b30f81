//! The `solve` subcommand: read a potential file, locate certified
//! eigenvalues in a rectangle, and attach every enclosure margin the
//! potential's norms can feed.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;
use sgnlap::{
    find_eigenvalues, margin, p_norm, BoundId, ContourSpec, EnclosureSpec, Method, Potential,
};

use crate::curves::write_file;
use crate::report::{Check, SuiteReport, SCHEMA_VERSION};

/// Enclosures the potential's norms support.  The p-norm families are
/// instantiated at p = 1.25 and p = 2; a delta carries only its total
/// variation, so just the p = 1 bounds apply there, and the sup-norm bound
/// needs an essentially bounded potential.
pub fn applicable_specs(v: &Potential) -> Vec<EnclosureSpec> {
    let mut specs = Vec::new();
    if let Ok(n1) = p_norm(v, 1.0) {
        if n1.norm > 0.0 {
            specs.push(EnclosureSpec::with_q(BoundId::Bst, n1.norm));
            specs.push(EnclosureSpec::with_q(BoundId::L1, n1.norm));
            specs.push(EnclosureSpec::with_q(BoundId::ImagL1, n1.norm));
        }
    }
    for &p in &[1.25, 2.0] {
        if let Ok(np) = p_norm(v, p) {
            if np.norm > 0.0 {
                specs.push(EnclosureSpec::with_pq(BoundId::Lp, p, np.norm));
                specs.push(EnclosureSpec::with_pq(BoundId::ImagLp, p, np.norm));
                if np.norm_plus > 0.0 && np.norm_minus > 0.0 {
                    specs.push(EnclosureSpec::split(p, np.norm_plus, np.norm_minus));
                }
            }
        }
    }
    if let Ok(ninf) = p_norm(v, f64::INFINITY) {
        if ninf.sup_norm.is_finite() && ninf.sup_norm > 0.0 {
            specs.push(EnclosureSpec::with_q(BoundId::Linf, ninf.sup_norm));
        }
    }
    specs
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::DeltaClosedForm => "delta_closed_form",
        Method::TransferMatrix => "transfer_matrix",
        Method::Determinant => "determinant",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MarginRow {
    pub bound: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenRow {
    pub lambda: [f64; 2],
    pub residual: f64,
    pub winding_multiplicity: u32,
    pub method: &'static str,
    pub certified: bool,
    pub margins: Vec<MarginRow>,
}

#[derive(Debug, Serialize)]
pub struct SolveOutput {
    pub schema_version: u32,
    pub potential: serde_json::Value,
    pub region: [f64; 4],
    pub eigenvalues: Vec<EigenRow>,
}

pub fn read_potential(path: &Path) -> Result<(Potential, serde_json::Value)> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    // keep the raw value so the output echoes the input verbatim; serde_json
    // reports line/column on malformed input
    let raw: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let v: Potential = serde_json::from_value(raw.clone())
        .with_context(|| format!("interpreting {}", path.display()))?;
    v.validate()?;
    Ok((v, raw))
}

pub fn parse_region(s: &str) -> Result<(f64, f64, f64, f64)> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        bail!("region must be RE0,RE1,IM0,IM1, got {s:?}");
    }
    let mut vals = [0.0f64; 4];
    for (slot, part) in vals.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .with_context(|| format!("bad region number {part:?}"))?;
    }
    Ok((vals[0], vals[1], vals[2], vals[3]))
}

#[derive(Debug, Clone)]
pub struct SolveArgs {
    pub potential: PathBuf,
    pub region: String,
    pub out: PathBuf,
}

pub fn cmd_solve(args: &SolveArgs) -> Result<SuiteReport> {
    let (v, raw) = read_potential(&args.potential)?;
    let rectangle = parse_region(&args.region)?;
    let contour = ContourSpec {
        rectangle,
        samples_per_side: 48,
        max_subdivision_depth: 30,
    };
    let found = find_eigenvalues(&v, &contour)?;
    let specs = if found.is_empty() {
        Vec::new()
    } else {
        applicable_specs(&v)
    };

    let mut min_margin = f64::INFINITY;
    let mut uncertified = 0u32;
    let mut rows = Vec::with_capacity(found.len());
    for e in &found {
        if !e.certified {
            uncertified += 1;
        }
        let margins: Vec<MarginRow> = specs
            .iter()
            .filter_map(|spec| {
                let m = margin(spec, e.lambda).ok()?;
                min_margin = min_margin.min(m.value);
                let p = matches!(
                    spec.bound_id,
                    BoundId::Lp | BoundId::ImagLp | BoundId::Split
                )
                .then_some(spec.p);
                Some(MarginRow {
                    bound: m.bound_id.as_str(),
                    p,
                    value: m.value,
                })
            })
            .collect();
        rows.push(EigenRow {
            lambda: [e.lambda.re, e.lambda.im],
            residual: e.residual,
            winding_multiplicity: e.winding_multiplicity,
            method: method_name(e.method),
            certified: e.certified,
            margins,
        });
    }

    let output = SolveOutput {
        schema_version: SCHEMA_VERSION,
        potential: raw,
        region: [rectangle.0, rectangle.1, rectangle.2, rectangle.3],
        eigenvalues: rows,
    };
    let mut text = serde_json::to_string_pretty(&output).context("serializing solve output")?;
    text.push('\n');
    write_file(&args.out, &text)?;

    let mut report = SuiteReport::new("solve");
    report.artifacts.push(args.out.display().to_string());
    report.checks.push(Check::ge(
        "eigenvalues_located",
        "zero count of the secular function in the requested rectangle",
        found.len() as f64,
        0.0,
    ));
    report.checks.push(Check::le(
        "uncertified",
        "every reported eigenvalue carries residual ≤ 1e−8 and conclusive winding",
        f64::from(uncertified),
        0.0,
    ));
    if min_margin.is_finite() {
        report.checks.push(Check::ge(
            "margin_floor",
            "eigenvalues sit inside every applicable enclosure",
            min_margin,
            -1e-6,
        ));
    }
    Ok(report)
}
