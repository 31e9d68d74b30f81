use num_complex::Complex64;
use rayon::prelude::*;

use crate::energy::ComplexEnergy;
use crate::error::{Error, Result};
use crate::quadrature::QuadratureScheme;

/// α = (1−i)/2, the constant weighting the four-case kernel formula.
pub const ALPHA: Complex64 = Complex64::new(0.5, -0.5);

/// Evaluation data for the free Green's function G_λ(x, y).
#[derive(Debug, Clone, Copy)]
pub struct GreenParams {
    pub alpha: Complex64,
    pub energy: ComplexEnergy,
}

impl GreenParams {
    /// Requires λ in the closed upper half-plane (real λ is evaluated as the
    /// limit from above through the branch of [`crate::sqrt_upper`]).
    pub fn new(energy: ComplexEnergy) -> Result<Self> {
        if energy.lambda.im < 0.0 {
            return Err(Error::domain(format!(
                "λ = {} lies below the real axis; reduce with reflect_problem first",
                energy.lambda
            )));
        }
        Ok(GreenParams {
            alpha: ALPHA,
            energy,
        })
    }
}

/// The Green's function of the free operator at energy λ, by the four-case
/// closed form. Continuous in each variable; satisfies the sign relation
/// `sgn(x) G(x,y) = sgn(y) G(y,x)`.
pub fn green_eval(params: &GreenParams, x: f64, y: f64) -> Complex64 {
    let s = params.energy.sqrt_lambda;
    let al = params.alpha;
    let alc = al.conj();
    let pref = 1.0 / (2.0 * al * s);
    let i = Complex64::I;
    if x >= 0.0 && y >= 0.0 {
        pref * (al * (i * s * (x + y)).exp() + alc * (i * s * (x - y).abs()).exp())
    } else if x >= 0.0 {
        // x on the positive, y on the negative half-line
        -pref * (s * (i * x + y)).exp()
    } else if y >= 0.0 {
        pref * (s * (x + i * y)).exp()
    } else {
        -pref * (alc * (s * (x + y)).exp() + al * (-s * (x - y).abs()).exp())
    }
}

/// Sharp pointwise bound: `|G_λ(x,y)| ≤ √(1/(2|λ|) + |Re λ|/(2|λ|²))` for all
/// x, y and λ in the closed upper half-plane minus the origin.
pub fn green_bound(energy: &ComplexEnergy) -> f64 {
    let r = energy.lambda.norm();
    (0.5 / r + 0.5 * energy.lambda.re.abs() / (r * r)).sqrt()
}

/// The diagonal point `x₀ = ±arccos(2ab/(a²+b²)) / (2·max(a,b))` at which the
/// diagonal supremum of |G| is attained (a = Re √λ, b = Im √λ): on the
/// positive half-line for Re λ ≥ 0, mirrored to the negative half-line for
/// Re λ < 0. The supremum reaches the bound exactly when λ sits on one of
/// the real or imaginary axes and stays strictly below it otherwise; see the
/// sharpness analysis in the delta construction.
pub fn saturation_point(energy: &ComplexEnergy) -> Result<f64> {
    let (a, b) = (energy.a, energy.b);
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::domain(format!(
            "saturation point needs Re √λ > 0 and Im √λ > 0 (got a = {a}, b = {b})"
        )));
    }
    let mut arg = 2.0 * a * b / (a * a + b * b);
    // 2ab/(a²+b²) ≤ 1 analytically; clip rounding overshoot
    if arg > 1.0 {
        debug_assert!(arg <= 1.0 + 1e-12);
        arg = 1.0;
    }
    Ok(if a >= b {
        arg.acos() / (2.0 * a)
    } else {
        -arg.acos() / (2.0 * b)
    })
}

/// Rank-one data of the Krein-type splitting of the free resolvent.
#[derive(Debug, Clone, Copy)]
pub struct KreinComponents {
    /// The unique eigenvalue μ(λ) of the rank-one correction term.
    pub mu: Complex64,
    /// √(−λ) on the branch with positive imaginary part.
    pub sqrt_neg_lambda: Complex64,
    /// 2/|Im λ|, an upper bound for the free resolvent norm.
    pub resolvent_norm_bound: f64,
}

/// μ(λ) = [2i(√λ + √−λ)]⁻¹ (1/Im √λ − 1/Im √−λ), both roots with positive
/// imaginary part. Satisfies |μ| ≤ 1/|Im λ|.
pub fn krein_mu(energy: &ComplexEnergy) -> Result<KreinComponents> {
    if energy.lambda.im <= 0.0 {
        return Err(Error::domain(format!(
            "Krein components need Im λ > 0 (got λ = {})",
            energy.lambda
        )));
    }
    let s = energy.sqrt_lambda;
    let sn = energy.sqrt_neg_lambda();
    let mu = (1.0 / s.im - 1.0 / sn.im) / (2.0 * Complex64::I * (s + sn));
    Ok(KreinComponents {
        mu,
        sqrt_neg_lambda: sn,
        resolvent_norm_bound: 2.0 / energy.lambda.im.abs(),
    })
}

/// Quadrature approximation of `(u)(x_i) = ∫ G_λ(x_i, y) f(y) dy` for f
/// sampled on the scheme's nodes; output on the same grid.
pub fn apply_free_resolvent(
    energy: &ComplexEnergy,
    f: &[Complex64],
    scheme: &QuadratureScheme,
) -> Result<Vec<Complex64>> {
    if scheme.nodes.is_empty() {
        return Err(Error::domain("empty quadrature grid"));
    }
    if f.len() != scheme.nodes.len() {
        return Err(Error::domain(format!(
            "sample count {} does not match node count {}",
            f.len(),
            scheme.nodes.len()
        )));
    }
    if energy.lambda.im <= 0.0 {
        return Err(Error::domain(
            "free resolvent application needs Im λ > 0".to_string(),
        ));
    }
    let params = GreenParams::new(*energy)?;
    Ok((0..scheme.nodes.len())
        .into_par_iter()
        .map(|i| {
            let xi = scheme.nodes[i];
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &yj) in scheme.nodes.iter().enumerate() {
                acc += scheme.weights[j] * green_eval(&params, xi, yj) * f[j];
            }
            acc
        })
        .collect())
}
