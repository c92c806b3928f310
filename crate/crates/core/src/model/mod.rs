//! Pointwise geometry of a hypersurface built from its principal curvatures
//! through the Gauss equation `R = (ε/2) H∧H + c G`.
//!
//! In the principal frame the metric is `g = diag(σᵢ)` and the second
//! fundamental tensor is lowered, `H = diag(σᵢ λᵢ)`, so that the shape
//! operator `g⁻¹H` is `diag(λᵢ)` for any signature.

pub mod invariants;
mod point;
mod spectrum;

pub use invariants::{
    beta_coeffs, cubic_coefficients, cubic_scale, rho_coeffs, ricci_eigenvalues,
    scalar_curvature, tau, tau_one_n1_n2, tau_product_formula, tau_with_tol,
    two_curvature_data, BetaCoefficients, CubicCoefficients, RicciEigenvalues, TauData,
    TwoCurvatureData,
};
pub use point::{build_point, build_point_with, Membership, PointGeometry};
pub use spectrum::{Curvature, PrincipalSpectrum};
