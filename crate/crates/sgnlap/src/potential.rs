//! Potential families and the exact transformations used throughout:
//! p-norms split by half-line, signed moments, dilation, reflection, and the
//! exponentially weighted integral behind the counting bound.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::well;
use crate::wigner;

/// Serialize a complex number as the two-element array `[re, im]`.
mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// Same pairing for a list of values.
mod complex_pair_vec {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|z| [z.re, z.im])
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(pairs
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect())
    }
}

/// The potential classes the toolkit works with.
///
/// `Piecewise` holds `values[i]` on `[breakpoints[i], breakpoints[i+1])`;
/// `Wvn` is the slowly decaying oscillatory generator with an embedded
/// eigenvalue at `lambda0`; `SquareWell` is the designed thin well whose
/// eigenvalue sits near `mu·(1+i·eps)²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum Potential {
    Delta {
        #[serde(with = "complex_pair")]
        amplitude: Complex64,
        location: f64,
    },
    Piecewise {
        breakpoints: Vec<f64>,
        #[serde(with = "complex_pair_vec")]
        values: Vec<Complex64>,
    },
    Wvn {
        lambda0: f64,
        n: u32,
    },
    SquareWell {
        eps: f64,
        mu: f64,
    },
}

/// p-norm of a potential, split by half-line.  For finite p the parts
/// recombine as `norm^p = norm_plus^p + norm_minus^p`; for p = ∞ the norm is
/// the larger part.  `sup_norm` is always the essential supremum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormReport {
    pub p: f64,
    pub norm: f64,
    pub norm_plus: f64,
    pub norm_minus: f64,
    pub sup_norm: f64,
}

/// Signed moments: `v_plus = ∫_{x>0} V`, `v_minus = ∫_{x<0} V`, and
/// `v_sgn = v_plus − v_minus = ∫ sgn(x) V(x) dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentReport {
    pub v_plus: Complex64,
    pub v_minus: Complex64,
    pub v_sgn: Complex64,
}

impl Potential {
    /// Checks the structural requirements of each variant.
    pub fn validate(&self) -> Result<()> {
        match self {
            Potential::Delta {
                amplitude,
                location,
            } => {
                if !location.is_finite() || *location == 0.0 {
                    return Err(Error::domain(
                        "delta location must be finite and nonzero (the operator's sign weight is ambiguous at 0)",
                    ));
                }
                if !amplitude.is_finite() {
                    return Err(Error::domain("delta amplitude must be finite"));
                }
                Ok(())
            }
            Potential::Piecewise {
                breakpoints,
                values,
            } => {
                if breakpoints.is_empty() || values.len() + 1 != breakpoints.len() {
                    return Err(Error::domain(
                        "piecewise potential needs one more breakpoint than values",
                    ));
                }
                if breakpoints.iter().any(|b| !b.is_finite()) {
                    return Err(Error::domain("breakpoints must be finite"));
                }
                if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::domain("breakpoints must be strictly ascending"));
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::domain("piecewise values must be finite"));
                }
                Ok(())
            }
            Potential::Wvn { lambda0, n } => {
                if !lambda0.is_finite() || *lambda0 <= 0.0 {
                    return Err(Error::domain("wvn requires lambda0 > 0"));
                }
                if *n == 0 {
                    return Err(Error::domain("wvn requires n >= 1"));
                }
                Ok(())
            }
            Potential::SquareWell { eps, mu } => well::square_well(*eps, *mu).map(|_| ()),
        }
    }

    /// Support interval (hull).  The oscillatory generator is not compactly
    /// supported and reports the whole line.
    pub fn support(&self) -> (f64, f64) {
        match self {
            Potential::Delta { location, .. } => (*location, *location),
            Potential::Piecewise { breakpoints, .. } => {
                (breakpoints[0], *breakpoints.last().unwrap())
            }
            Potential::Wvn { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            Potential::SquareWell { eps, mu } => {
                let r = well::square_well(*eps, *mu)
                    .map(|d| d.support_len())
                    .unwrap_or(f64::NAN);
                (0.0, r)
            }
        }
    }

    /// Pointwise value of the absolutely continuous part.  A delta carries no
    /// such part, so it evaluates to zero everywhere.
    pub fn value(&self, x: f64) -> Complex64 {
        match self {
            Potential::Delta { .. } => Complex64::new(0.0, 0.0),
            Potential::Piecewise {
                breakpoints,
                values,
            } => {
                if x < breakpoints[0] || x >= *breakpoints.last().unwrap() {
                    return Complex64::new(0.0, 0.0);
                }
                let idx = breakpoints.partition_point(|b| *b <= x) - 1;
                values[idx.min(values.len() - 1)]
            }
            Potential::Wvn { lambda0, n } => {
                Complex64::new(wigner::v_value(*lambda0, *n, x), 0.0)
            }
            Potential::SquareWell { eps, mu } => match well::square_well(*eps, *mu) {
                Ok(d) if x >= 0.0 && x < d.support_len() => d.scaled_value(),
                _ => Complex64::new(0.0, 0.0),
            },
        }
    }

    /// Piecewise-constant representation: breakpoints plus one value per
    /// segment.  Errors for the variants that have none.
    pub fn pieces(&self) -> Result<(Vec<f64>, Vec<Complex64>)> {
        match self {
            Potential::Piecewise {
                breakpoints,
                values,
            } => Ok((breakpoints.clone(), values.clone())),
            Potential::SquareWell { eps, mu } => {
                let d = well::square_well(*eps, *mu)?;
                Ok((vec![0.0, d.support_len()], vec![d.scaled_value()]))
            }
            Potential::Delta { .. } => Err(Error::domain(
                "a delta is not piecewise constant; use the scalar closed form",
            )),
            Potential::Wvn { .. } => Err(Error::domain(
                "the oscillatory generator is not compactly supported",
            )),
        }
    }
}

/// Lengths of `[lo,hi] ∩ (−∞,0)` and `[lo,hi] ∩ (0,∞)`.
fn side_lengths(lo: f64, hi: f64) -> (f64, f64) {
    let neg_len = (hi.min(0.0) - lo.min(0.0)).max(0.0);
    let pos_len = (hi.max(0.0) - lo.max(0.0)).max(0.0);
    (neg_len, pos_len)
}

/// p-norm with half-line decomposition.  `p` may be `f64::INFINITY`.
/// A delta only carries the total-variation (p = 1) convention.
pub fn p_norm(v: &Potential, p: f64) -> Result<NormReport> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::domain("p must lie in [1, ∞]"));
    }
    v.validate()?;
    match v {
        Potential::Delta {
            amplitude,
            location,
        } => {
            if p != 1.0 {
                return Err(Error::domain(
                    "a delta has finite norm only in the p = 1 (total variation) convention",
                ));
            }
            let a = amplitude.norm();
            let (plus, minus) = if *location > 0.0 { (a, 0.0) } else { (0.0, a) };
            Ok(NormReport {
                p,
                norm: a,
                norm_plus: plus,
                norm_minus: minus,
                sup_norm: f64::INFINITY,
            })
        }
        Potential::Piecewise { .. } | Potential::SquareWell { .. } => {
            let (breaks, values) = v.pieces()?;
            let mut sup = 0.0f64;
            if p.is_infinite() {
                let (mut sup_plus, mut sup_minus) = (0.0f64, 0.0f64);
                for (seg, val) in breaks.windows(2).zip(&values) {
                    let (ln, lp) = side_lengths(seg[0], seg[1]);
                    let a = val.norm();
                    sup = sup.max(a);
                    if lp > 0.0 {
                        sup_plus = sup_plus.max(a);
                    }
                    if ln > 0.0 {
                        sup_minus = sup_minus.max(a);
                    }
                }
                return Ok(NormReport {
                    p,
                    norm: sup,
                    norm_plus: sup_plus,
                    norm_minus: sup_minus,
                    sup_norm: sup,
                });
            }
            let (mut plus_pow, mut minus_pow) = (0.0f64, 0.0f64);
            for (seg, val) in breaks.windows(2).zip(&values) {
                let (ln, lp) = side_lengths(seg[0], seg[1]);
                let a = val.norm();
                sup = sup.max(a);
                plus_pow += a.powf(p) * lp;
                minus_pow += a.powf(p) * ln;
            }
            Ok(NormReport {
                p,
                norm: (plus_pow + minus_pow).powf(1.0 / p),
                norm_plus: plus_pow.powf(1.0 / p),
                norm_minus: minus_pow.powf(1.0 / p),
                sup_norm: sup,
            })
        }
        Potential::Wvn { lambda0, n } => wigner::p_norm_report(*lambda0, *n, p),
    }
}

/// Signed moments.  Requires absolute convergence, which rules out the
/// oscillatory generator (its envelope decays like 1/|x|).
pub fn moments(v: &Potential) -> Result<MomentReport> {
    v.validate()?;
    match v {
        Potential::Delta {
            amplitude,
            location,
        } => {
            let zero = Complex64::new(0.0, 0.0);
            let (v_plus, v_minus) = if *location > 0.0 {
                (*amplitude, zero)
            } else {
                (zero, *amplitude)
            };
            Ok(MomentReport {
                v_plus,
                v_minus,
                v_sgn: v_plus - v_minus,
            })
        }
        Potential::Piecewise { .. } | Potential::SquareWell { .. } => {
            let (breaks, values) = v.pieces()?;
            let mut v_plus = Complex64::new(0.0, 0.0);
            let mut v_minus = Complex64::new(0.0, 0.0);
            for (seg, val) in breaks.windows(2).zip(&values) {
                let (ln, lp) = side_lengths(seg[0], seg[1]);
                v_plus += val * lp;
                v_minus += val * ln;
            }
            Ok(MomentReport {
                v_plus,
                v_minus,
                v_sgn: v_plus - v_minus,
            })
        }
        Potential::Wvn { .. } => Err(Error::Divergent(
            "the generator's moments are not absolutely convergent (envelope ~ 1/|x|)".into(),
        )),
    }
}

/// Dilation `V_ρ(x) = ρ²·V(ρx)`, the transformation that sends eigenvalues
/// λ to ρ²λ.  The oscillatory family is not closed under it.
pub fn scale(v: &Potential, rho: f64) -> Result<Potential> {
    if !rho.is_finite() || rho <= 0.0 {
        return Err(Error::domain("scale factor must be positive and finite"));
    }
    v.validate()?;
    match v {
        Potential::Delta {
            amplitude,
            location,
        } => Ok(Potential::Delta {
            amplitude: amplitude * rho,
            location: location / rho,
        }),
        Potential::Piecewise {
            breakpoints,
            values,
        } => Ok(Potential::Piecewise {
            breakpoints: breakpoints.iter().map(|b| b / rho).collect(),
            values: values.iter().map(|z| z * rho * rho).collect(),
        }),
        Potential::Wvn { .. } => Err(Error::domain(
            "the oscillatory family is not closed under dilation; rebuild with a scaled lambda0 instead",
        )),
        Potential::SquareWell { eps, mu } => Ok(Potential::SquareWell {
            eps: *eps,
            mu: mu * rho * rho,
        }),
    }
}

/// Maps a lower-half-plane spectral problem to an equivalent upper-half-plane
/// one: λ is an eigenvalue for V exactly when −λ is one for V(−·).
pub fn reflect_problem(lambda: Complex64, v: &Potential) -> Result<(Complex64, Potential)> {
    if !(lambda.im < 0.0) {
        return Err(Error::domain(
            "reflection applies to lower-half-plane λ; the problem is already in standard position",
        ));
    }
    v.validate()?;
    let reflected = match v {
        Potential::Delta {
            amplitude,
            location,
        } => Potential::Delta {
            amplitude: *amplitude,
            location: -location,
        },
        Potential::Piecewise {
            breakpoints,
            values,
        } => Potential::Piecewise {
            breakpoints: breakpoints.iter().rev().map(|b| -b).collect(),
            values: values.iter().rev().cloned().collect(),
        },
        Potential::SquareWell { .. } => {
            let (breaks, vals) = v.pieces()?;
            Potential::Piecewise {
                breakpoints: breaks.iter().rev().map(|b| -b).collect(),
                values: vals.iter().rev().cloned().collect(),
            }
        }
        Potential::Wvn { .. } => {
            return Err(Error::domain(
                "the generator is not mirror symmetric and its reflection leaves the family",
            ))
        }
    };
    Ok((-lambda, reflected))
}

/// `∫ e^{eps·|x|} |V(x)| dx`, the ingredient of the eigenvalue-counting
/// bound.  Divergent for the oscillatory generator.
pub fn exp_weighted_l1(v: &Potential, eps: f64) -> Result<f64> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::domain("weight rate eps must be positive"));
    }
    v.validate()?;
    match v {
        Potential::Delta {
            amplitude,
            location,
        } => Ok(amplitude.norm() * (eps * location.abs()).exp()),
        Potential::Piecewise { .. } | Potential::SquareWell { .. } => {
            let (breaks, values) = v.pieces()?;
            let mut total = 0.0;
            for (seg, val) in breaks.windows(2).zip(&values) {
                let a = val.norm();
                // split at the origin so each part has a single weight branch
                let (lo, hi) = (seg[0], seg[1]);
                let (nl, nh) = (lo.min(0.0), hi.min(0.0));
                if nh > nl {
                    total += a * ((-eps * nl).exp() - (-eps * nh).exp()) / eps;
                }
                let (pl, ph) = (lo.max(0.0), hi.max(0.0));
                if ph > pl {
                    total += a * ((eps * ph).exp() - (eps * pl).exp()) / eps;
                }
            }
            Ok(total)
        }
        Potential::Wvn { .. } => Err(Error::Divergent(
            "e^{eps|x|}|V| is not integrable: the weight outgrows the 1/|x| envelope".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_panel() -> Potential {
        Potential::Piecewise {
            breakpoints: vec![-1.0, 0.0, 2.0],
            values: vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, -2.0)],
        }
    }

    #[test]
    fn json_round_trips() {
        let cases = vec![
            Potential::Delta {
                amplitude: Complex64::new(0.0, 3.0),
                location: 1.0,
            },
            two_panel(),
            Potential::Wvn {
                lambda0: 1.0,
                n: 3,
            },
            Potential::SquareWell { eps: 0.02, mu: 1.0 },
        ];
        for v in cases {
            let text = serde_json::to_string(&v).unwrap();
            let back: Potential = serde_json::from_str(&text).unwrap();
            assert_eq!(v, back);
        }
        let tagged: Potential = serde_json::from_str(
            r#"{"variant":"delta","amplitude":[0.0,3.0],"location":1.0}"#,
        )
        .unwrap();
        assert!(matches!(tagged, Potential::Delta { .. }));
    }

    #[test]
    fn delta_norm_convention() {
        let v = Potential::Delta {
            amplitude: Complex64::new(0.0, 3.0),
            location: 1.0,
        };
        let r = p_norm(&v, 1.0).unwrap();
        assert_eq!(r.norm, 3.0);
        assert_eq!(r.norm_plus, 3.0);
        assert_eq!(r.norm_minus, 0.0);
        assert!(r.sup_norm.is_infinite());
        assert!(p_norm(&v, 2.0).is_err());
    }

    #[test]
    fn piecewise_norms_decompose() {
        let v = two_panel();
        let r = p_norm(&v, 2.0).unwrap();
        assert!((r.norm - 3.0).abs() < 1e-14);
        assert!((r.norm_minus - 1.0).abs() < 1e-14);
        assert!((r.norm_plus - 8.0f64.sqrt()).abs() < 1e-14);
        let recombined = (r.norm_plus.powi(2) + r.norm_minus.powi(2)).sqrt();
        assert!((recombined - r.norm).abs() < 1e-12);
        assert_eq!(r.sup_norm, 2.0);

        let rinf = p_norm(&v, f64::INFINITY).unwrap();
        assert_eq!(rinf.norm, 2.0);
        assert_eq!(rinf.norm_minus, 1.0);
        assert_eq!(rinf.norm_plus, 2.0);
    }

    #[test]
    fn moments_split_by_sign() {
        let m = moments(&two_panel()).unwrap();
        assert!((m.v_minus - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((m.v_plus - Complex64::new(0.0, -4.0)).norm() < 1e-14);
        assert!((m.v_sgn - (m.v_plus - m.v_minus)).norm() == 0.0);
    }

    #[test]
    fn scaling_covariance() {
        let v = two_panel();
        let rho = 2.0;
        let vs = scale(&v, rho).unwrap();
        for p in [1.0, 2.0, 4.0] {
            let before = p_norm(&v, p).unwrap().norm;
            let after = p_norm(&vs, p).unwrap().norm;
            let predicted = rho.powf(2.0 - 1.0 / p) * before;
            assert!(
                (after - predicted).abs() < 1e-12 * predicted,
                "p={p}: {after} vs {predicted}"
            );
        }
        // round trip is exact for a power-of-two factor
        assert_eq!(scale(&vs, 1.0 / rho).unwrap(), v);
    }

    #[test]
    fn reflection_flips_support() {
        let lam = Complex64::new(0.3, -0.7);
        let (lr, vr) = reflect_problem(lam, &two_panel()).unwrap();
        assert_eq!(lr, -lam);
        match &vr {
            Potential::Piecewise {
                breakpoints,
                values,
            } => {
                assert_eq!(breakpoints, &vec![-2.0, 0.0, 1.0]);
                assert_eq!(values[0], Complex64::new(0.0, -2.0));
                assert_eq!(values[1], Complex64::new(1.0, 0.0));
            }
            _ => panic!("expected piecewise"),
        }
        assert!(reflect_problem(Complex64::new(0.0, 0.5), &two_panel()).is_err());
    }

    #[test]
    fn exp_weight_closed_form() {
        let v = Potential::Piecewise {
            breakpoints: vec![-1.0, 1.0],
            values: vec![Complex64::new(1.0, 0.0)],
        };
        let got = exp_weighted_l1(&v, 1.0).unwrap();
        let exact = 2.0 * (1.0f64.exp() - 1.0);
        assert!((got - exact).abs() < 1e-13);
    }

    #[test]
    fn value_lookup() {
        let v = two_panel();
        assert_eq!(v.value(-0.5), Complex64::new(1.0, 0.0));
        assert_eq!(v.value(0.0), Complex64::new(0.0, -2.0));
        assert_eq!(v.value(1.999), Complex64::new(0.0, -2.0));
        assert_eq!(v.value(2.0), Complex64::new(0.0, 0.0));
        assert_eq!(v.value(-1.5), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn invalid_shapes_rejected() {
        let bad = Potential::Piecewise {
            breakpoints: vec![0.0, 1.0],
            values: vec![],
        };
        assert!(bad.validate().is_err());
        let unordered = Potential::Piecewise {
            breakpoints: vec![1.0, 0.0],
            values: vec![Complex64::new(1.0, 0.0)],
        };
        assert!(unordered.validate().is_err());
        let at_origin = Potential::Delta {
            amplitude: Complex64::new(1.0, 0.0),
            location: 0.0,
        };
        assert!(at_origin.validate().is_err());
    }

    #[test]
    fn wvn_has_no_integrable_envelope() {
        let v = Potential::Wvn { lambda0: 1.0, n: 2 };
        assert!(matches!(p_norm(&v, 1.0), Err(Error::Divergent(_))));
        assert!(matches!(moments(&v), Err(Error::Divergent(_))));
        assert!(matches!(exp_weighted_l1(&v, 0.5), Err(Error::Divergent(_))));
        assert!(scale(&v, 2.0).is_err());
    }
}
