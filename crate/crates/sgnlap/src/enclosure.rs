//! Spectral enclosures: signed margins, boundary curves in the λ-plane, and
//! eigenvalue-sum / counting bounds.
//!
//! Every enclosure is a region that must contain all eigenvalues, phrased as
//! `constraint(λ) ≤ strength(V)`.  The `margin` of a point is the slack
//! `strength − constraint`: positive inside the enclosure, zero on its
//! boundary, negative outside.  All margins depend on λ only through |λ|,
//! |Re λ| (signed Re λ for the half-line-split bound) and |Im λ|, so they are
//! invariant under conjugation, and all but the split bound are invariant
//! under λ → −λ.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eigensolver::EigenvalueResult;
use crate::error::{Error, Result};
use crate::potential::{exp_weighted_l1, Potential};

/// sup over the unit-strength total-variation boundary of |Im λ|, attained
/// at the angle π/3: 3√3/8.
pub const IMAG_L1_COEFFICIENT: f64 = 0.649_519_052_838_329;

/// Which enclosure a margin or radius refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundId {
    /// |λ|^{1/2} ≤ ‖V‖ (total variation / L¹ strength, Birman–Schwinger style)
    Bst,
    /// √2·|λ| ≤ (|λ| + |Re λ|)^{1/2}·‖V‖₁
    L1,
    /// |Im λ| ≤ (3√3/8)·‖V‖₁²
    ImagL1,
    /// 2^{3/(2p)−1}|λ|^{1/p}|Im λ|^{1−1/p} ≤ (|λ| + |Re λ|)^{1/(2p)}·‖V‖_p
    Lp,
    /// |Im λ| ≤ 2·(3√3/16)^{1/(2p−1)}·‖V‖_p^{2p/(2p−1)}
    ImagLp,
    /// half-line-split Schur bound with separate norms on each side
    Split,
    /// |Im λ| ≤ 2‖V‖_∞
    Linf,
}

impl BoundId {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundId::Bst => "BST",
            BoundId::L1 => "L1",
            BoundId::ImagL1 => "IMAG_L1",
            BoundId::Lp => "LP",
            BoundId::ImagLp => "IMAG_LP",
            BoundId::Split => "SPLIT",
            BoundId::Linf => "LINF",
        }
    }
}

impl std::fmt::Display for BoundId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bst" => Ok(BoundId::Bst),
            "l1" => Ok(BoundId::L1),
            "imag_l1" => Ok(BoundId::ImagL1),
            "lp" => Ok(BoundId::Lp),
            "imag_lp" => Ok(BoundId::ImagLp),
            "split" => Ok(BoundId::Split),
            "linf" => Ok(BoundId::Linf),
            other => Err(Error::domain(format!("unknown bound id {other:?}"))),
        }
    }
}

/// An enclosure instance: the bound family plus the potential-strength data
/// it consumes.  `p` matters only for the p-norm families, `q_plus`/`q_minus`
/// only for the split bound (which ignores `q`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnclosureSpec {
    pub bound_id: BoundId,
    pub p: f64,
    pub q: f64,
    pub q_plus: f64,
    pub q_minus: f64,
}

impl EnclosureSpec {
    /// Enclosure driven by a single norm value (every family except split).
    pub fn with_q(bound_id: BoundId, q: f64) -> Self {
        EnclosureSpec {
            bound_id,
            p: 0.0,
            q,
            q_plus: 0.0,
            q_minus: 0.0,
        }
    }

    /// p-norm enclosure (`Lp` or `ImagLp`).
    pub fn with_pq(bound_id: BoundId, p: f64, q: f64) -> Self {
        EnclosureSpec {
            bound_id,
            p,
            q,
            q_plus: 0.0,
            q_minus: 0.0,
        }
    }

    /// Half-line-split enclosure with one p-norm per half line.
    pub fn split(p: f64, q_plus: f64, q_minus: f64) -> Self {
        EnclosureSpec {
            bound_id: BoundId::Split,
            p,
            q: 0.0,
            q_plus,
            q_minus,
        }
    }

    fn validate(&self) -> Result<()> {
        let needs_p = matches!(
            self.bound_id,
            BoundId::Lp | BoundId::ImagLp | BoundId::Split
        );
        if needs_p && !(self.p.is_finite() && self.p > 1.0) {
            return Err(Error::domain(format!(
                "{} needs a finite exponent p > 1, got {}",
                self.bound_id, self.p
            )));
        }
        if self.bound_id == BoundId::Split {
            if !(self.q_plus.is_finite() && self.q_plus >= 0.0)
                || !(self.q_minus.is_finite() && self.q_minus >= 0.0)
            {
                return Err(Error::domain("split norms must be finite and ≥ 0"));
            }
        } else if !(self.q.is_finite() && self.q >= 0.0) {
            return Err(Error::domain(format!(
                "potential strength must be finite and ≥ 0, got {}",
                self.q
            )));
        }
        Ok(())
    }
}

/// Signed slack of an enclosure at one spectral point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Margin {
    pub value: f64,
    pub bound_id: BoundId,
}

/// Slack of the enclosure at λ: positive strictly inside, zero on the
/// boundary, negative outside.  Eigenvalues always sit at margin ≥ 0.
pub fn margin(spec: &EnclosureSpec, lambda: Complex64) -> Result<Margin> {
    spec.validate()?;
    if !lambda.is_finite() {
        return Err(Error::domain("λ must be finite"));
    }
    let r = lambda.norm();
    let re_abs = lambda.re.abs();
    let im_abs = lambda.im.abs();
    let q = spec.q;
    let value = match spec.bound_id {
        BoundId::Bst => q - r.sqrt(),
        BoundId::L1 => (r + re_abs).sqrt() * q - std::f64::consts::SQRT_2 * r,
        BoundId::ImagL1 => IMAG_L1_COEFFICIENT * q * q - im_abs,
        BoundId::Lp => {
            let p = spec.p;
            (r + re_abs).powf(1.0 / (2.0 * p)) * q
                - 2f64.powf(3.0 / (2.0 * p) - 1.0) * r.powf(1.0 / p) * im_abs.powf(1.0 - 1.0 / p)
        }
        BoundId::ImagLp => {
            let p = spec.p;
            let coeff = (3.0 * 3f64.sqrt() / 16.0).powf(1.0 / (2.0 * p - 1.0));
            2.0 * coeff * q.powf(2.0 * p / (2.0 * p - 1.0)) - im_abs
        }
        BoundId::Split => {
            if lambda.im == 0.0 {
                return Err(Error::domain(
                    "the split bound degenerates on the real axis (a half-line weight blows up)",
                ));
            }
            let p = spec.p;
            let dual = p / (p - 1.0);
            let t = 1.0 / dual;
            let a = (0.5 * (r + lambda.re)).sqrt();
            let b = (0.5 * (r - lambda.re)).sqrt();
            let (qm, qp) = (spec.q_minus, spec.q_plus);
            let e1 = qm / a.powf(t) + std::f64::consts::SQRT_2 * qp / b.powf(t);
            let e2 = std::f64::consts::SQRT_2 * qm / a.powf(t) + qp / b.powf(t);
            e1.max(e2) - std::f64::consts::SQRT_2 * dual.powf(t) * r.sqrt()
        }
        BoundId::Linf => 2.0 * q - im_abs,
    };
    Ok(Margin {
        value,
        bound_id: spec.bound_id,
    })
}

/// Radius of the enclosure boundary along the ray λ = r·e^{iθ}.  Supported
/// for the radially solvable families (`Bst`, `L1`, `Lp`); for `Lp` on the
/// real axis (θ ≡ 0 mod π) the boundary is unbounded and +∞ is returned.
pub fn boundary_radius(spec: &EnclosureSpec, theta: f64) -> Result<f64> {
    spec.validate()?;
    if !theta.is_finite() {
        return Err(Error::domain("angle must be finite"));
    }
    let q = spec.q;
    match spec.bound_id {
        BoundId::Bst => Ok(q * q),
        BoundId::L1 => Ok(0.5 * (1.0 + theta.cos().abs()) * q * q),
        BoundId::Lp => {
            let sin_abs = theta.sin().abs();
            if theta.rem_euclid(std::f64::consts::PI) == 0.0 || sin_abs == 0.0 {
                return Ok(f64::INFINITY);
            }
            if q == 0.0 {
                return Ok(0.0);
            }
            let p = spec.p;
            // margin(r·e^{iθ}) = 0 in log-radius form; the log of the
            // constraint-to-strength ratio is strictly monotone in ln r with
            // slope 1 − 1/(2p) > 0, so bisection cannot miss.
            let cos_abs = theta.cos().abs();
            let g = |ln_r: f64| -> f64 {
                (1.0 - 1.0 / (2.0 * p)) * ln_r
                    + (3.0 / (2.0 * p) - 1.0) * std::f64::consts::LN_2
                    + (1.0 - 1.0 / p) * sin_abs.ln()
                    - (1.0 / (2.0 * p)) * (1.0 + cos_abs).ln()
                    - q.ln()
            };
            let center = 2.0 * q.ln();
            let mut lo = center + (-300f64) * std::f64::consts::LN_10;
            let mut hi = center + 300f64 * std::f64::consts::LN_10;
            if g(lo) >= 0.0 || g(hi) <= 0.0 {
                return Err(Error::domain(
                    "boundary radius out of representable range",
                ));
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if g(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok((0.5 * (lo + hi)).exp())
        }
        other => Err(Error::domain(format!(
            "{other} has no radial boundary parameterization"
        ))),
    }
}

/// Sampled enclosure boundary, one closed sweep: angles πk/(samples+1) for
/// k = 1..samples in the upper half-plane, then their conjugate mirror in
/// reverse, as rows (θ, Re λ, Im λ).
pub fn trace_curve(spec: &EnclosureSpec, samples: usize) -> Result<Vec<[f64; 3]>> {
    if samples < 16 {
        return Err(Error::domain("need at least 16 samples per half-plane"));
    }
    let mut upper = Vec::with_capacity(samples);
    for k in 1..=samples {
        let theta = std::f64::consts::PI * k as f64 / (samples + 1) as f64;
        let r = boundary_radius(spec, theta)?;
        if !r.is_finite() {
            return Err(Error::domain(format!(
                "boundary unbounded at sampled angle {theta}"
            )));
        }
        upper.push([theta, r * theta.cos(), r * theta.sin()]);
    }
    let mut rows = upper.clone();
    for row in upper.iter().rev() {
        rows.push([-row[0], row[1], -row[2]]);
    }
    Ok(rows)
}

/// Eigenvalue-sum statistic Σ mult·|Im λ| over located eigenvalues, and its
/// ratio to ‖V‖₁².  The single-eigenvalue extremum of the ratio is
/// 3√3/8 ≈ 0.6495, attained on the L¹ boundary at angle π/3.
pub fn lieb_thirring_sum(results: &[EigenvalueResult], q1: f64) -> Result<(f64, f64)> {
    if !(q1.is_finite() && q1 > 0.0) {
        return Err(Error::domain("‖V‖₁ must be positive"));
    }
    let sum: f64 = results
        .iter()
        .map(|r| r.winding_multiplicity as f64 * r.lambda.im.abs())
        .sum();
    Ok((sum, sum / (q1 * q1)))
}

/// Upper bound on the number of eigenvalues (with multiplicity):
/// ε⁻²·(∫ e^{ε|x|} |V(x)| dx)².
pub fn count_bound(v: &Potential, eps: f64) -> Result<f64> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::domain("eps must be positive"));
    }
    let weighted = exp_weighted_l1(v, eps)?;
    Ok((weighted / eps).powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    #[test]
    fn l1_margin_vanishes_on_its_boundary() {
        let spec = EnclosureSpec::with_q(BoundId::L1, 1.0);
        for theta in [FRAC_PI_3, FRAC_PI_2, 2.3, 0.4] {
            let r = boundary_radius(&spec, theta).unwrap();
            let lam = r * Complex64::new(theta.cos(), theta.sin());
            let m = margin(&spec, lam).unwrap();
            assert!(m.value.abs() < 1e-14, "θ={theta}: margin {}", m.value);
            assert_eq!(m.bound_id, BoundId::L1);
            let inside = margin(&spec, 0.9 * lam).unwrap();
            let outside = margin(&spec, 1.1 * lam).unwrap();
            assert!(inside.value > 0.0 && outside.value < 0.0);
        }
    }

    #[test]
    fn imag_l1_extremal_point_sits_on_both_boundaries() {
        let l1 = EnclosureSpec::with_q(BoundId::L1, 1.0);
        let il1 = EnclosureSpec::with_q(BoundId::ImagL1, 1.0);
        let r = boundary_radius(&l1, FRAC_PI_3).unwrap();
        assert!((r - 0.75).abs() < 1e-15);
        let lam = r * Complex64::new(FRAC_PI_3.cos(), FRAC_PI_3.sin());
        assert!((lam.im - IMAG_L1_COEFFICIENT).abs() < 1e-15);
        assert!(margin(&il1, lam).unwrap().value.abs() < 1e-14);
    }

    #[test]
    fn far_point_is_outside_everything() {
        let lam = Complex64::new(0.0, 10.0);
        for spec in [
            EnclosureSpec::with_q(BoundId::Bst, 1.0),
            EnclosureSpec::with_q(BoundId::L1, 1.0),
            EnclosureSpec::with_q(BoundId::ImagL1, 1.0),
            EnclosureSpec::with_pq(BoundId::Lp, 1.5, 1.0),
            EnclosureSpec::with_pq(BoundId::ImagLp, 1.5, 1.0),
            EnclosureSpec::split(1.5, 1.0, 1.0),
            EnclosureSpec::with_q(BoundId::Linf, 1.0),
        ] {
            assert!(
                margin(&spec, lam).unwrap().value < 0.0,
                "{} admits 10i at unit strength",
                spec.bound_id
            );
        }
    }

    #[test]
    fn radius_examples() {
        let bst = EnclosureSpec::with_q(BoundId::Bst, 1.3);
        assert!((boundary_radius(&bst, 0.7).unwrap() - 1.69).abs() < 1e-15);
        let l1 = EnclosureSpec::with_q(BoundId::L1, 1.0);
        assert!((boundary_radius(&l1, FRAC_PI_2).unwrap() - 0.5).abs() < 1e-15);
        assert!((boundary_radius(&l1, 0.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lp_radius_matches_closed_form() {
        for (p, q, theta) in [
            (1.25, 0.7, 2.1),
            (3.0, 1.0, FRAC_PI_3),
            (2.0, 1.4, 0.3),
            (7.0, 0.2, 2.9),
        ] {
            let spec = EnclosureSpec::with_pq(BoundId::Lp, p, q);
            let r = boundary_radius(&spec, theta).unwrap();
            // solve the boundary equation for r^{2p−1} directly
            let closed = (2f64.powf(2.0 * p - 3.0) * (1.0 + theta.cos().abs())
                * q.powf(2.0 * p)
                / theta.sin().abs().powf(2.0 * p - 2.0))
            .powf(1.0 / (2.0 * p - 1.0));
            assert!(
                (r - closed).abs() < 1e-10 * closed,
                "p={p} θ={theta}: {r} vs {closed}"
            );
            let lam = r * Complex64::new(theta.cos(), theta.sin());
            assert!(margin(&spec, lam).unwrap().value.abs() < 1e-12 * q);
        }
    }

    #[test]
    fn lp_radius_degenerates_towards_l1() {
        let l1 = EnclosureSpec::with_q(BoundId::L1, 0.9);
        let lp = EnclosureSpec::with_pq(BoundId::Lp, 1.0 + 1e-6, 0.9);
        for theta in [0.4, FRAC_PI_2, 2.8] {
            let a = boundary_radius(&l1, theta).unwrap();
            let b = boundary_radius(&lp, theta).unwrap();
            assert!((a - b).abs() < 1e-4 * a, "θ={theta}: {a} vs {b}");
        }
    }

    #[test]
    fn lp_radius_unbounded_on_the_real_axis() {
        let spec = EnclosureSpec::with_pq(BoundId::Lp, 1.5, 1.0);
        assert!(boundary_radius(&spec, 0.0).unwrap().is_infinite());
        assert!(boundary_radius(&spec, PI).unwrap().is_infinite());
    }

    #[test]
    fn split_margin_swaps_with_reflection() {
        let lam = Complex64::new(0.37, 0.21);
        let ab = EnclosureSpec::split(1.7, 0.8, 0.3);
        let ba = EnclosureSpec::split(1.7, 0.3, 0.8);
        let m1 = margin(&ab, lam).unwrap().value;
        let m2 = margin(&ba, -lam).unwrap().value;
        assert_eq!(m1, m2);
        assert!(margin(&ab, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn trace_curve_is_a_conjugate_symmetric_sweep() {
        let spec = EnclosureSpec::with_q(BoundId::L1, 1.0);
        let rows = trace_curve(&spec, 16).unwrap();
        assert_eq!(rows.len(), 32);
        for k in 0..16 {
            let up = rows[k];
            let down = rows[31 - k];
            assert_eq!(up[0], -down[0]);
            assert_eq!(up[1], down[1]);
            assert_eq!(up[2], -down[2]);
            assert!(up[2] > 0.0);
        }
        for k in 1..16 {
            assert!(rows[k][0] > rows[k - 1][0]);
        }
        assert!(trace_curve(&spec, 8).is_err());
    }

    #[test]
    fn counting_bound_closed_form() {
        let v = Potential::Piecewise {
            breakpoints: vec![-1.0, 1.0],
            values: vec![Complex64::new(1.0, 0.0)],
        };
        let n = count_bound(&v, 1.0).unwrap();
        let exact = 4.0 * (std::f64::consts::E - 1.0).powi(2);
        assert!((n - exact).abs() < 1e-12, "{n} vs {exact}");
    }

    #[test]
    fn eigenvalue_sum_statistic() {
        use crate::eigensolver::Method;
        let mk = |im: f64, mult: u32| EigenvalueResult {
            lambda: Complex64::new(0.1, im),
            residual: 0.0,
            winding_multiplicity: mult,
            method: Method::TransferMatrix,
            certified: true,
        };
        let (sum, ratio) = lieb_thirring_sum(&[mk(0.2, 1), mk(-0.3, 2)], 2.0).unwrap();
        assert!((sum - 0.8).abs() < 1e-15);
        assert!((ratio - 0.2).abs() < 1e-15);
        let (s0, r0) = lieb_thirring_sum(&[], 1.0).unwrap();
        assert_eq!((s0, r0), (0.0, 0.0));
        assert!(lieb_thirring_sum(&[], 0.0).is_err());
    }

    #[test]
    fn bound_ids_round_trip_through_names() {
        for id in [
            BoundId::Bst,
            BoundId::L1,
            BoundId::ImagL1,
            BoundId::Lp,
            BoundId::ImagLp,
            BoundId::Split,
            BoundId::Linf,
        ] {
            let parsed: BoundId = id.as_str().parse().unwrap();
            assert_eq!(parsed, id);
        }
        assert!("galois".parse::<BoundId>().is_err());
    }
}
