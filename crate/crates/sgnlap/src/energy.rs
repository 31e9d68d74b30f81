use num_complex::Complex64;

use crate::error::{Error, Result};

/// A spectral point λ together with its branch-consistent square root.
///
/// The branch cut is placed along `[0, ∞)` with arguments taken in `(0, 2π)`,
/// so half-arguments lie in `(0, π)`: on the closed upper half-plane both
/// `Re √λ` and `Im √λ` are non-negative, and real λ is evaluated as the limit
/// from above. No separate `+i0` offset is ever needed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexEnergy {
    pub lambda: Complex64,
    pub sqrt_lambda: Complex64,
    /// Re √λ
    pub a: f64,
    /// Im √λ
    pub b: f64,
}

impl ComplexEnergy {
    pub fn new(lambda: Complex64) -> Result<Self> {
        sqrt_upper(lambda)
    }

    /// The root of −λ with positive imaginary part. For λ in the upper
    /// half-plane this is `i·√λ`.
    pub fn sqrt_neg_lambda(&self) -> Complex64 {
        branch_sqrt(-self.lambda)
    }
}

/// Square root on the branch with cut `[0, ∞)`, arguments in `(0, 2π)`.
fn branch_sqrt(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        // limit from above: +0 treated as approach through the upper half-plane
        if z.re >= 0.0 {
            return Complex64::new(z.re.sqrt(), 0.0);
        }
        return Complex64::new(0.0, (-z.re).sqrt());
    }
    let mut theta = z.im.atan2(z.re);
    if theta < 0.0 {
        theta += std::f64::consts::TAU;
    }
    Complex64::from_polar(z.norm().sqrt(), 0.5 * theta)
}

/// The branch-consistent square root of a nonzero spectral parameter.
///
/// Continuous on the closed upper half-plane minus the origin; for λ in the
/// open upper half-plane both components of √λ are strictly positive.
pub fn sqrt_upper(lambda: Complex64) -> Result<ComplexEnergy> {
    if lambda.re == 0.0 && lambda.im == 0.0 {
        return Err(Error::domain("λ = 0 is excluded"));
    }
    if !lambda.re.is_finite() || !lambda.im.is_finite() {
        return Err(Error::domain(format!("λ = {lambda} is not finite")));
    }
    let s = branch_sqrt(lambda);
    Ok(ComplexEnergy {
        lambda,
        sqrt_lambda: s,
        a: s.re,
        b: s.im,
    })
}
