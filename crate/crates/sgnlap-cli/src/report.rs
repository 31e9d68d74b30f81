//! Check and report plumbing shared by every subcommand.  Reports are
//! serialized verbatim and compared byte-for-byte across runs, so nothing
//! time- or machine-dependent may land in them.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// One named measurement against a tolerance.  `anchor` states which claimed
/// result the check exercises, as a compact formula or construction name.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub pass: bool,
    pub measured: f64,
    pub tolerance: f64,
}

/// JSON has no NaN/∞; saturate after the comparison has been taken.
fn finite(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else if x.is_nan() {
        f64::MAX
    } else {
        f64::MAX.copysign(x)
    }
}

impl Check {
    /// Passes when `measured ≤ tolerance`.
    pub fn le(name: &str, anchor: &str, measured: f64, tolerance: f64) -> Check {
        Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            pass: measured <= tolerance,
            measured: finite(measured),
            tolerance: finite(tolerance),
        }
    }

    /// Passes when `measured ≥ tolerance` (a floor: counts, ratios, margins).
    pub fn ge(name: &str, anchor: &str, measured: f64, tolerance: f64) -> Check {
        Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            pass: measured >= tolerance,
            measured: finite(measured),
            tolerance: finite(tolerance),
        }
    }

    /// For verdicts the two comparisons cannot express (strict chains,
    /// conjunctions); `measured`/`tolerance` stay as the reported context.
    pub fn flag(name: &str, anchor: &str, pass: bool, measured: f64, tolerance: f64) -> Check {
        Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            pass,
            measured: finite(measured),
            tolerance: finite(tolerance),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite_name: String,
    pub checks: Vec<Check>,
    pub artifacts: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite_name: &str) -> SuiteReport {
        SuiteReport {
            schema_version: SCHEMA_VERSION,
            suite_name: suite_name.to_string(),
            checks: Vec::new(),
            artifacts: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is plain data");
        s.push('\n');
        s
    }

    /// One headline plus a line per failing check; deterministic, no timing.
    pub fn human_summary(&self) -> String {
        use std::fmt::Write as _;
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let mut s = format!(
            "suite {}: {passed}/{} checks pass\n",
            self.suite_name,
            self.checks.len()
        );
        for c in self.checks.iter().filter(|c| !c.pass) {
            let _ = writeln!(
                s,
                "  FAIL {} [{}]: measured {:e} vs tolerance {:e}",
                c.name, c.anchor, c.measured, c.tolerance
            );
        }
        for a in &self.artifacts {
            let _ = writeln!(s, "  wrote {a}");
        }
        s
    }
}
