//! Composite Gauss-Legendre quadrature on segmented intervals.
//!
//! Every panel lies entirely on one side of the origin: the kernel routines
//! branch on the sign of the coordinate, so a panel straddling zero would
//! integrate across a discontinuity.  `composite` inserts a cut at zero
//! automatically whenever the range covers it.

use crate::error::{Error, Result};

/// Positive abscissae of the 10-point Gauss-Legendre rule on [-1, 1].
const GL10_NODES: [f64; 5] = [
    0.148_874_338_981_631_22,
    0.433_395_394_129_247_2,
    0.679_409_568_299_024_4,
    0.865_063_366_688_984_5,
    0.973_906_528_517_171_7,
];

/// Weights paired with `GL10_NODES`.
const GL10_WEIGHTS: [f64; 5] = [
    0.295_524_224_714_753,
    0.269_266_719_309_996_5,
    0.219_086_362_515_982_04,
    0.149_451_349_150_580_62,
    0.066_671_344_308_688_14,
];

/// Nodes and weights for integration over a union of panels.
///
/// `nodes` are strictly ascending and never coincide with a segment cut, so
/// in particular no node sits exactly at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureScheme {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Whether the origin is a panel boundary (true whenever the covered
    /// range includes points of both signs).
    pub split_at_zero: bool,
}

impl QuadratureScheme {
    /// Builds a composite rule with `panels_per_segment` equal panels on each
    /// segment `[cuts[i], cuts[i+1]]`.  Cuts must be finite and strictly
    /// ascending; a cut at zero is inserted when the range straddles it.
    pub fn composite(cuts: &[f64], panels_per_segment: usize) -> Result<QuadratureScheme> {
        if cuts.len() < 2 {
            return Err(Error::domain("need at least two cuts to form a segment"));
        }
        if panels_per_segment == 0 {
            return Err(Error::domain("panels_per_segment must be positive"));
        }
        if cuts.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain("cuts must be finite"));
        }
        if cuts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("cuts must be strictly ascending"));
        }

        let mut all_cuts: Vec<f64> = cuts.to_vec();
        if cuts[0] < 0.0 && *cuts.last().unwrap() > 0.0 && !cuts.contains(&0.0) {
            all_cuts.push(0.0);
            all_cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        }
        let split_at_zero = cuts[0] < 0.0 && *cuts.last().unwrap() > 0.0;

        let n = (all_cuts.len() - 1) * panels_per_segment * 10;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for seg in all_cuts.windows(2) {
            let (lo, hi) = (seg[0], seg[1]);
            let step = (hi - lo) / panels_per_segment as f64;
            for k in 0..panels_per_segment {
                let mid = lo + step * (k as f64 + 0.5);
                let half = step * 0.5;
                // descending then ascending half keeps nodes sorted per panel
                for i in (0..5).rev() {
                    nodes.push(mid - half * GL10_NODES[i]);
                    weights.push(half * GL10_WEIGHTS[i]);
                }
                for i in 0..5 {
                    nodes.push(mid + half * GL10_NODES[i]);
                    weights.push(half * GL10_WEIGHTS[i]);
                }
            }
        }
        Ok(QuadratureScheme {
            nodes,
            weights,
            split_at_zero,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Sum of all weights; equals the total covered length up to rounding.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_cover_length() {
        let q = QuadratureScheme::composite(&[-1.0, 0.5, 2.0], 3).unwrap();
        assert!((q.total_weight() - 3.0).abs() < 1e-13);
    }

    #[test]
    fn exact_for_degree_nineteen() {
        // single panel, so the rule's full algebraic order is in play
        let q = QuadratureScheme::composite(&[0.0, 1.0], 1).unwrap();
        let integral: f64 = q
            .nodes
            .iter()
            .zip(&q.weights)
            .map(|(x, w)| w * x.powi(19))
            .sum();
        assert!((integral - 0.05).abs() < 1e-15);
    }

    #[test]
    fn origin_becomes_a_cut() {
        let q = QuadratureScheme::composite(&[-1.0, 2.0], 3).unwrap();
        assert!(q.split_at_zero);
        assert_eq!(q.len(), 2 * 3 * 10);
        assert!(q.nodes.iter().all(|&x| x != 0.0));
        let negatives = q.nodes.iter().filter(|&&x| x < 0.0).count();
        assert_eq!(negatives, 30);
    }

    #[test]
    fn nodes_strictly_ascending() {
        let q = QuadratureScheme::composite(&[-2.0, -1.0, 3.0], 4).unwrap();
        assert!(q.nodes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(QuadratureScheme::composite(&[1.0], 2).is_err());
        assert!(QuadratureScheme::composite(&[1.0, 1.0], 2).is_err());
        assert!(QuadratureScheme::composite(&[2.0, 1.0], 2).is_err());
        assert!(QuadratureScheme::composite(&[0.0, 1.0], 0).is_err());
        assert!(QuadratureScheme::composite(&[0.0, f64::NAN], 2).is_err());
    }

    #[test]
    fn smooth_integral_converges() {
        let exact = 1.0 - (-2.0_f64).exp(); // integral of e^{-x} over [0, 2]
        for panels in [1, 2] {
            let q = QuadratureScheme::composite(&[0.0, 2.0], panels).unwrap();
            let got: f64 = q
                .nodes
                .iter()
                .zip(&q.weights)
                .map(|(x, w)| w * (-x).exp())
                .sum();
            assert!((got - exact).abs() < 1e-13);
        }
    }
}
