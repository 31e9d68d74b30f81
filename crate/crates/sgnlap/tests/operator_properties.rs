//! Discretized Birman–Schwinger operator: norm inequalities, the sign-flip
//! unitary equivalence, Schur-test domination, and agreement between the
//! Fredholm-determinant and transfer-matrix roots.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sgnlap::{
    assemble, find_eigenvalues, green_bound, hs_norm, log_det, op_norm, p_norm, schur_bound,
    sqrt_upper, ContourSpec, Potential, QuadratureScheme,
};

fn random_well(rng: &mut ChaCha8Rng) -> Potential {
    let wm = rng.gen_range(0.6..1.6);
    let wp = rng.gen_range(0.6..1.6);
    let mut val = || {
        let m = rng.gen_range(2.0..6.0);
        let phi = rng.gen_range(0.0..std::f64::consts::TAU);
        m * Complex64::new(phi.cos(), phi.sin())
    };
    Potential::Piecewise {
        breakpoints: vec![-wm, 0.0, wp],
        values: vec![val(), val()],
    }
}

fn scheme_for(v: &Potential, panels: usize) -> QuadratureScheme {
    let (breaks, _) = v.pieces().unwrap();
    QuadratureScheme::composite(&breaks, panels).unwrap()
}

#[test]
fn norm_chain_and_sign_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for _ in 0..6 {
        let v = random_well(&mut rng);
        let q1 = p_norm(&v, 1.0).unwrap().norm;
        let lam = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.05..0.7)) * q1 * q1;
        let e = sqrt_upper(lam).unwrap();
        let scheme = scheme_for(&v, 32);
        let unsigned = assemble(&v, &e, &scheme, false).unwrap();
        let signed = assemble(&v, &e, &scheme, true).unwrap();

        // flipping the column signs is a diagonal unitary: same singular data
        let hs_u = hs_norm(&unsigned);
        let hs_s = hs_norm(&signed);
        assert_eq!(hs_u, hs_s);
        let op_u = op_norm(&unsigned, 1e-8).unwrap();
        let op_s = op_norm(&signed, 1e-8).unwrap();
        assert!((op_u - op_s).abs() <= 1e-6 * op_u);

        // operator ≤ Hilbert–Schmidt ≤ kernel bound × total variation
        assert!(op_u <= hs_u * (1.0 + 1e-10));
        assert!(
            hs_u <= green_bound(&e) * q1 * (1.0 + 1e-12),
            "λ={lam}: hs={hs_u} vs {}",
            green_bound(&e) * q1
        );
    }
}

#[test]
fn schur_test_dominates_the_operator_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE);
    let mut checked = 0;
    while checked < 50 {
        let v = random_well(&mut rng);
        let q1 = p_norm(&v, 1.0).unwrap().norm;
        let lam = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.05..0.7)) * q1 * q1;
        let p = rng.gen_range(1.1..4.0);
        let e = sqrt_upper(lam).unwrap();
        let schur = schur_bound(&v, &e, p).unwrap();
        let op = op_norm(&assemble(&v, &e, &scheme_for(&v, 24), false).unwrap(), 1e-7).unwrap();
        assert!(
            op <= schur * (1.0 + 1e-2),
            "λ={lam}, p={p}: op {op} > schur {schur}"
        );
        checked += 1;
    }
}

fn certified_upper_eigenvalues(v: &Potential) -> Vec<Complex64> {
    let q1 = p_norm(v, 1.0).unwrap().norm;
    let r = q1 * q1;
    let region = ContourSpec {
        rectangle: (-1.05 * r, 1.05 * r, 5e-4 * r, 1.05 * r),
        samples_per_side: 48,
        max_subdivision_depth: 30,
    };
    find_eigenvalues(v, &region)
        .map(|found| {
            found
                .into_iter()
                .filter(|e| e.certified && e.lambda.im > 1e-2 * r)
                .map(|e| e.lambda)
                .collect()
        })
        .unwrap_or_default()
}

fn det_extrapolated(v: &Potential, lambda: Complex64, coarse: usize) -> Complex64 {
    let e = sqrt_upper(lambda).unwrap();
    let eval = |panels: usize| {
        let op = assemble(v, &e, &scheme_for(v, panels), true).unwrap();
        log_det(&op).unwrap().exp()
    };
    // the Nyström determinant converges at O(h²); one Richardson step
    (4.0 * eval(2 * coarse) - eval(coarse)) / 3.0
}

#[test]
fn determinant_root_matches_transfer_matrix_root() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD0_0D);
    let mut cross_checked = 0;
    for _ in 0..12 {
        if cross_checked >= 2 {
            break;
        }
        let v = random_well(&mut rng);
        let Some(&target) = certified_upper_eigenvalues(&v).first() else {
            continue;
        };
        // Newton on the extrapolated determinant, warm-started at the
        // transfer-matrix root (which is exact up to its 1e−10 polish)
        let mut z = target;
        for _ in 0..8 {
            let f0 = det_extrapolated(&v, z, 16);
            let h = 1e-6 * (z.norm() + 0.1);
            let fp = (det_extrapolated(&v, z + h, 16) - det_extrapolated(&v, z - h, 16))
                / (2.0 * h);
            let step = f0 / fp;
            z -= step;
            if step.norm() <= 1e-11 * (1.0 + z.norm()) {
                break;
            }
        }
        let gap = (z - target).norm() / (1.0 + target.norm());
        assert!(
            gap <= 1e-7,
            "methods disagree at {target}: determinant gives {z} (gap {gap:.3e})"
        );
        cross_checked += 1;
    }
    assert!(
        cross_checked >= 2,
        "random search produced too few certified eigenvalues"
    );
}

#[test]
fn determinant_vanishes_at_an_eigenvalue() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD0_0D);
    for _ in 0..12 {
        let v = random_well(&mut rng);
        let Some(&lam) = certified_upper_eigenvalues(&v).first() else {
            continue;
        };
        let e = sqrt_upper(lam).unwrap();
        let det_at = |panels: usize| {
            log_det(&assemble(&v, &e, &scheme_for(&v, panels), true).unwrap())
                .unwrap()
                .exp()
                .norm()
        };
        let d64 = det_at(64);
        let d128 = det_at(128);
        assert!(d64 < 1e-2, "|det| = {d64} at a certified eigenvalue");
        assert!(
            d128 < 0.6 * d64,
            "no second-order decay towards the root: {d64} → {d128}"
        );
        return;
    }
    panic!("random search produced no certified eigenvalue");
}
