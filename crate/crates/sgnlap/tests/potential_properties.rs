//! Structural invariants of the potential classes: norm decompositions,
//! scaling covariance, reflection bookkeeping, and serialization.

use num_complex::Complex64;
use proptest::prelude::*;
use sgnlap::{exp_weighted_l1, moments, p_norm, reflect_problem, scale, Potential};

fn arb_piecewise() -> impl Strategy<Value = Potential> {
    (
        proptest::collection::vec(-3.0f64..3.0, 2..7),
        proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 6),
    )
        .prop_map(|(mut breaks, raw)| {
            breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
            breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
            if breaks.len() < 2 {
                breaks = vec![-1.0, 1.0];
            }
            let values = raw
                .iter()
                .take(breaks.len() - 1)
                .map(|&(re, im)| Complex64::new(re, im))
                .collect();
            Potential::Piecewise {
                breakpoints: breaks,
                values,
            }
        })
}

proptest! {
    #[test]
    fn p_norm_decomposes_by_half_line(v in arb_piecewise(), p in 1.0f64..6.0) {
        let r = p_norm(&v, p).unwrap();
        let recombined = (r.norm_plus.powf(p) + r.norm_minus.powf(p)).powf(1.0 / p);
        prop_assert!((recombined - r.norm).abs() <= 1e-10 * (1.0 + r.norm));
        // L¹ never exceeds sup-norm times the support length
        if (p - 1.0).abs() < 1e-12 {
            let (lo, hi) = v.support();
            prop_assert!(r.norm <= r.sup_norm * (hi - lo) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn scaling_covariance(v in arb_piecewise(), rho in 0.2f64..5.0, p in 1.0f64..6.0) {
        let vs = scale(&v, rho).unwrap();
        let before = p_norm(&v, p).unwrap().norm;
        let after = p_norm(&vs, p).unwrap().norm;
        let predicted = rho.powf(2.0 - 1.0 / p) * before;
        prop_assert!(
            (after - predicted).abs() <= 1e-10 * (1.0 + predicted),
            "ρ={rho}, p={p}: {after} vs {predicted}"
        );
        // first moments scale linearly
        let m = moments(&v).unwrap();
        let ms = moments(&vs).unwrap();
        prop_assert!((ms.v_sgn - rho * m.v_sgn).norm() <= 1e-10 * (1.0 + m.v_sgn.norm()));
    }

    #[test]
    fn reflection_swaps_half_lines(v in arb_piecewise(), im in -3.0f64..-1e-3) {
        let lam = Complex64::new(0.4, im);
        let (lam_r, vr) = reflect_problem(lam, &v).unwrap();
        prop_assert_eq!(lam_r, -lam);
        let m = moments(&v).unwrap();
        let mr = moments(&vr).unwrap();
        prop_assert!((mr.v_plus - m.v_minus).norm() <= 1e-12 * (1.0 + m.v_minus.norm()));
        prop_assert!((mr.v_minus - m.v_plus).norm() <= 1e-12 * (1.0 + m.v_plus.norm()));
        prop_assert!((mr.v_sgn + m.v_sgn).norm() <= 1e-12 * (1.0 + m.v_sgn.norm()));
        let n = p_norm(&v, 2.0).unwrap();
        let nr = p_norm(&vr, 2.0).unwrap();
        prop_assert!((n.norm - nr.norm).abs() <= 1e-12 * (1.0 + n.norm));
        prop_assert!((n.norm_plus - nr.norm_minus).abs() <= 1e-12 * (1.0 + n.norm));
    }

    #[test]
    fn exponential_weight_dominates_l1(v in arb_piecewise(), eps in 1e-3f64..2.0) {
        let w = exp_weighted_l1(&v, eps).unwrap();
        let l1 = p_norm(&v, 1.0).unwrap().norm;
        prop_assert!(w >= l1 * (1.0 - 1e-12));
        let w_smaller = exp_weighted_l1(&v, eps * 0.5).unwrap();
        prop_assert!(w_smaller <= w * (1.0 + 1e-12));
    }

    #[test]
    fn values_match_pieces(v in arb_piecewise()) {
        let (breaks, vals) = v.pieces().unwrap();
        for (k, val) in vals.iter().enumerate() {
            let mid = 0.5 * (breaks[k] + breaks[k + 1]);
            prop_assert_eq!(v.value(mid), *val);
        }
        let (lo, hi) = v.support();
        prop_assert_eq!(v.value(lo - 1.0), Complex64::new(0.0, 0.0));
        prop_assert_eq!(v.value(hi + 1.0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn json_round_trip(v in arb_piecewise()) {
        let text = serde_json::to_string(&v).unwrap();
        let back: Potential = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, v);
    }
}

#[test]
fn delta_round_trip_and_scaling() {
    let v = Potential::Delta {
        amplitude: Complex64::new(0.3, -1.2),
        location: 0.7,
    };
    let text = serde_json::to_string(&v).unwrap();
    assert_eq!(v, serde_json::from_str::<Potential>(&text).unwrap());
    let vs = scale(&v, 2.0).unwrap();
    match vs {
        Potential::Delta {
            amplitude,
            location,
        } => {
            assert_eq!(amplitude, Complex64::new(0.6, -2.4));
            assert_eq!(location, 0.35);
        }
        other => panic!("scaling changed the class: {other:?}"),
    }
    // the delta's strength is its total variation; p > 1 norms do not exist
    assert_eq!(p_norm(&v, 1.0).unwrap().norm, v_amp(&v));
    assert!(p_norm(&v, 2.0).is_err());
}

fn v_amp(v: &Potential) -> f64 {
    match v {
        Potential::Delta { amplitude, .. } => amplitude.norm(),
        _ => unreachable!(),
    }
}

#[test]
fn generator_families_report_their_limits() {
    let wvn = Potential::Wvn { lambda0: 1.0, n: 1 };
    assert!(p_norm(&wvn, 1.0).is_err(), "the L¹ integral diverges");
    assert!(p_norm(&wvn, 1.5).is_ok());
    assert!(moments(&wvn).is_err());
    assert!(exp_weighted_l1(&wvn, 0.5).is_err());
    assert!(scale(&wvn, 2.0).is_err(), "scaling leaves the family");

    let well = Potential::SquareWell { eps: 0.02, mu: 1.0 };
    let (lo, hi) = well.support();
    assert_eq!(lo, 0.0);
    assert!(hi > 0.0);
    let r = p_norm(&well, 3.0).unwrap();
    let direct = well.value(0.5 * hi).norm() * hi.powf(1.0 / 3.0);
    assert!((r.norm - direct).abs() < 1e-12 * direct);
}
