//! The thin square well that parks an eigenvalue at a prescribed point near
//! the positive half-axis.
//!
//! The unit design (target λ = (1+iε)²) puts the constant value V₀ = 4iε on
//! [0, R] with R = |ln ε|/(2ε) + θ.  Inside the well the solution oscillates
//! with wavenumber k = −1+iε; matching the decaying branches on both sides
//! forces e^{−2ikR} ≈ −A/B, and since A/B → i the offset θ is pinned by
//! e^{−2iR} = −1, i.e. R ≡ π/2 (mod π).  Other targets come from the exact
//! rescaling (V, λ) → (ρ²V(ρ·), ρ²λ) with ρ = √μ.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareWellDesign {
    pub eps: f64,
    pub mu: f64,
    /// Interior wavenumber of the unit design: −1 + iε.
    pub k: Complex64,
    /// Unit-design support length: |ln ε|/(2ε) + θ.
    pub r: f64,
    /// Phase offset in [0, π) aligning the well length with the matching
    /// condition.
    pub theta: f64,
    /// Unit-design well value: exactly 4iε.
    pub v0: Complex64,
    /// Coefficients of e^{±ikx} inside the well after matching at 0.
    pub a_coef: Complex64,
    pub b_coef: Complex64,
    /// Predicted eigenvalue μ(1+iε)².
    pub lambda_pred: Complex64,
}

/// Builds the design.  `eps` is kept within [1e−4, 0.1]: larger values leave
/// the asymptotic regime, smaller ones make the well length |ln ε|/(2ε)
/// numerically unwieldy.
pub fn square_well(eps: f64, mu: f64) -> Result<SquareWellDesign> {
    if !eps.is_finite() || !(1e-4..=0.1).contains(&eps) {
        return Err(Error::domain("eps must lie in [1e-4, 0.1]"));
    }
    if !mu.is_finite() || mu <= 0.0 {
        return Err(Error::domain("mu must be positive and finite"));
    }
    let s = Complex64::new(1.0, eps); // √λ of the unit target
    let k = Complex64::new(-1.0, eps);
    let v0 = Complex64::new(0.0, 4.0 * eps); // (1+iε)² − (−1+iε)²
    let half = Complex64::new(0.5, 0.0);
    let ik = Complex64::new(0.0, 1.0) * k;
    let a_coef = half + s / (2.0 * ik);
    let b_coef = half - s / (2.0 * ik);

    let l = (eps.ln().abs()) / (2.0 * eps);
    let theta = (std::f64::consts::FRAC_PI_2 - l).rem_euclid(std::f64::consts::PI);
    let r = l + theta;

    let s_mu = Complex64::new(1.0, eps);
    let lambda_pred = mu * s_mu * s_mu;
    Ok(SquareWellDesign {
        eps,
        mu,
        k,
        r,
        theta,
        v0,
        a_coef,
        b_coef,
        lambda_pred,
    })
}

impl SquareWellDesign {
    /// Support length after the √μ rescaling.
    pub fn support_len(&self) -> f64 {
        self.r / self.mu.sqrt()
    }

    /// Well value after the √μ rescaling.
    pub fn scaled_value(&self) -> Complex64 {
        self.mu * self.v0
    }

    /// How exactly the length R realizes e^{−2iR} = −1; at machine precision
    /// this is limited only by argument reduction of the long phase 2R.
    pub fn phase_residual(&self) -> f64 {
        ((Complex64::new(0.0, -2.0 * self.r)).exp() + 1.0).norm()
    }
}
