//! Spectral toolkit for the indefinite operator `sgn(x)(-d²/dx² + V)` on L²(ℝ)
//! with complex potentials V.
//!
//! The operator is self-adjoint only in the Krein inner product `(sgn·, ·)`,
//! so its eigenvalues are genuinely complex. This crate provides:
//!
//! * the explicit Green's function of the free resolvent, its sharp pointwise
//!   bound and the Krein rank-one data ([`green`]);
//! * concrete potential classes (delta, piecewise-constant, and two generator
//!   families: an oscillatory slowly-decaying family with a prescribed
//!   embedded eigenvalue, and a long shallow well with a designed complex
//!   eigenvalue), their norms, moments and the scaling map ([`potential`],
//!   [`wigner`], [`well`]);
//! * Nyström discretization of the Birman–Schwinger kernel with
//!   Hilbert–Schmidt/operator norms and a signed log-determinant
//!   ([`birman_schwinger`]);
//! * eigenvalue location by argument-principle contour counting plus Newton
//!   refinement, closed-form and transfer-matrix secular functions, weak
//!   coupling predictions, and grid residual certification ([`eigensolver`]);
//! * every spectral-enclosure inequality as a signed margin, boundary-curve
//!   tracing, and the eigenvalue-sum and counting checks ([`enclosure`]).

pub mod birman_schwinger;
pub mod eigensolver;
pub mod enclosure;
pub mod energy;
pub mod error;
pub mod green;
mod linalg;
pub mod potential;
pub mod quadrature;
pub mod well;
pub mod wigner;

pub use birman_schwinger::{assemble, hs_norm, log_det, op_norm, schur_bound, DiscretizedOperator};
pub use eigensolver::{
    find_eigenvalues, residual_certify, secular_delta, secular_piecewise, weak_coupling_predict,
    winding_number, ContourSpec, EigenvalueResult, Method,
};
pub use enclosure::{
    boundary_radius, count_bound, lieb_thirring_sum, margin, trace_curve, BoundId, EnclosureSpec,
    Margin,
};
pub use energy::{sqrt_upper, ComplexEnergy};
pub use error::{Error, Result};
pub use green::{
    apply_free_resolvent, green_bound, green_eval, krein_mu, saturation_point, GreenParams,
    KreinComponents,
};
pub use potential::{
    exp_weighted_l1, moments, p_norm, reflect_problem, scale, MomentReport, NormReport, Potential,
};
pub use quadrature::QuadratureScheme;
pub use well::{square_well, SquareWellDesign};
pub use wigner::{wigner_von_neumann, WvNGenerator};
