//! Scalar invariants of a principal-curvature spectrum.
//!
//! Everything here is a closed-form function of the spectrum; the tensor
//! side of the crate is used only to fit the cubic relation when it is not
//! determined by exactly three distinct curvatures.

use super::spectrum::{Curvature, PrincipalSpectrum};
use crate::error::{Error, Result};
use crate::tensor::{fit_in_span, SymTensor2};
use crate::DEFAULT_TOL;
use serde::{Deserialize, Serialize};

/// Coefficients of `H³ = φH² + ψH + ρg`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubicCoefficients {
    pub phi: f64,
    pub psi: f64,
    pub rho: f64,
    /// Relative residual of the cubic relation; zero when it holds exactly.
    pub residual: f64,
    /// Set when fewer than three curvatures are distinct, so the triple is a
    /// minimum-norm choice among infinitely many.
    pub underdetermined: bool,
}

impl CubicCoefficients {
    pub fn holds(&self, tol: f64) -> bool {
        self.residual <= tol
    }
}

/// `φ, ψ, ρ` for the spectrum. Exactly three distinct curvatures give the
/// elementary symmetric functions; otherwise `H³` is fitted in
/// `span{H², H, g}` and the fit residual is reported.
pub fn cubic_coefficients(spec: &PrincipalSpectrum) -> CubicCoefficients {
    let d = spec.distinct();
    if d.len() == 3 {
        let (l0, l1, l2) = (d[0].value, d[1].value, d[2].value);
        return CubicCoefficients {
            phi: l0 + l1 + l2,
            psi: -l0 * (l1 + l2) - l1 * l2,
            rho: l0 * l1 * l2,
            residual: 0.0,
            underdetermined: false,
        };
    }
    let sig = spec.signature();
    let lam = spec.expanded();
    let diag = |p: i32| {
        let v: Vec<f64> = sig.iter().zip(&lam).map(|(s, l)| s * l.powi(p)).collect();
        SymTensor2::diagonal(&v)
    };
    let (g, h, h2, h3) = (diag(0), diag(1), diag(2), diag(3));
    let fit = fit_in_span(&h3, &[("H2", &h2), ("H", &h), ("g", &g)])
        .expect("three equally-sized basis tensors");
    CubicCoefficients {
        phi: fit.coefficients[0],
        psi: fit.coefficients[1],
        rho: fit.coefficients[2],
        residual: fit.residual,
        underdetermined: d.len() < 3,
    }
}

/// `κ = n(n−1)c + ε((trH)² − tr(H²))`.
pub fn scalar_curvature(spec: &PrincipalSpectrum) -> f64 {
    let n = spec.dim() as f64;
    let t = spec.trace_h();
    n * (n - 1.0) * spec.ambient_curvature() + spec.epsilon() * (t * t - spec.trace_h2())
}

/// The quantities built from the cubic coefficients: `τ`, `ρ₀`, `ρ₁`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TauData {
    pub tau: f64,
    pub rho0: f64,
    pub rho1: f64,
}

impl TauData {
    pub fn from_cubic(spec: &PrincipalSpectrum, cubic: &CubicCoefficients) -> Self {
        let CubicCoefficients { phi, psi, rho, .. } = *cubic;
        let t = spec.trace_h();
        let eps = spec.epsilon();
        let k = (spec.dim() as f64 - 1.0) * spec.ambient_curvature();
        let d = phi - t;
        let p = psi + d * d;
        Self {
            tau: rho + d * (psi + t * d),
            rho0: -k * k + eps * k * p + rho * (phi - 2.0 * t),
            rho1: 2.0 * k - eps * p,
        }
    }
}

fn checked_tau_data(spec: &PrincipalSpectrum, tol: f64) -> Result<TauData> {
    let cubic = cubic_coefficients(spec);
    if !cubic.holds(tol) {
        return Err(Error::CubicRelationFails {
            residual: cubic.residual,
        });
    }
    Ok(TauData::from_cubic(spec, &cubic))
}

/// `τ = ρ + (φ − trH)(ψ + trH(φ − trH))`.
pub fn tau(spec: &PrincipalSpectrum) -> Result<f64> {
    tau_with_tol(spec, DEFAULT_TOL)
}

pub fn tau_with_tol(spec: &PrincipalSpectrum, tol: f64) -> Result<f64> {
    checked_tau_data(spec, tol).map(|d| d.tau)
}

/// `(ρ₀, ρ₁)` such that `S² − ρ₁S − ρ₀g = τH`.
pub fn rho_coeffs(spec: &PrincipalSpectrum) -> Result<(f64, f64)> {
    checked_tau_data(spec, DEFAULT_TOL).map(|d| (d.rho0, d.rho1))
}

/// Degree-matched magnitude for deciding whether `τ` vanishes:
/// `(|trH| + r)³ + |ρ| + |ψ trH|` with `r` the spectral radius.
pub fn cubic_scale(spec: &PrincipalSpectrum, cubic: &CubicCoefficients) -> f64 {
    let t = spec.trace_h().abs();
    let r = spec.spectral_radius();
    (t + r).powi(3) + cubic.rho.abs() + (cubic.psi * t).abs()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaCoefficients {
    /// `β₁ … β₆`.
    pub beta: [f64; 6],
    pub mu: f64,
}

impl BetaCoefficients {
    pub fn from_cubic(spec: &PrincipalSpectrum, cubic: &CubicCoefficients) -> Result<Self> {
        let n = spec.dim();
        if n < 4 {
            return Err(Error::DimensionTooSmall {
                what: "beta coefficients",
                required: 4,
                found: n,
            });
        }
        let nf = n as f64;
        let eps = spec.epsilon();
        let c = spec.ambient_curvature();
        let t = spec.trace_h();
        let kappa = scalar_curvature(spec);
        let kt = spec.ambient_scalar();
        let CubicCoefficients { phi, psi, rho, .. } = *cubic;

        let mu = (kappa / (nf - 1.0) - kt / (nf + 1.0)) / (nf - 2.0);
        let b1 = eps * (phi - t);
        let b2 = mu + eps * (b1 * b1 + psi) / (nf - 2.0);
        let b3 = eps * mu * t + (psi * (2.0 * t - phi) + (nf - 3.0) * rho) / (nf - 2.0);
        let b4 = b3 - eps * b2 * t + (nf - 1.0) * c * b1;
        let b5 = kappa / (nf - 1.0) + eps * psi - (nf * nf - 3.0 * nf + 3.0) * c + b1 * t;
        let b6 = b2 - (nf - 3.0) * c;
        Ok(Self {
            beta: [b1, b2, b3, b4, b5, b6],
            mu,
        })
    }
}

/// `β₁ … β₆` and `μ`; requires `n ≥ 4`.
pub fn beta_coeffs(spec: &PrincipalSpectrum) -> Result<BetaCoefficients> {
    BetaCoefficients::from_cubic(spec, &cubic_coefficients(spec))
}

/// Ricci eigenvalues attached to the distinct principal curvatures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RicciEigenvalues {
    pub curvatures: Vec<Curvature>,
    /// `κᵢ = ε(trH λᵢ − λᵢ²) + (n−1)c`, aligned with `curvatures`.
    pub kappas: Vec<f64>,
}

impl RicciEigenvalues {
    pub fn kappa(&self, i: usize) -> Option<f64> {
        self.kappas.get(i).copied()
    }
}

/// Requires at most three distinct curvatures.
pub fn ricci_eigenvalues(spec: &PrincipalSpectrum) -> Result<RicciEigenvalues> {
    let d = spec.distinct();
    if d.len() > 3 {
        return Err(Error::DistinctCount {
            expected: 3,
            found: d.len(),
        });
    }
    let t = spec.trace_h();
    let k = (spec.dim() as f64 - 1.0) * spec.ambient_curvature();
    let eps = spec.epsilon();
    let kappas = d
        .iter()
        .map(|c| eps * (t * c.value - c.value * c.value) + k)
        .collect();
    Ok(RicciEigenvalues {
        curvatures: d,
        kappas,
    })
}

/// `τ` through the Ricci/principal difference products,
/// `ε (κ₀−κ₁)(κ₀−κ₂)(κ₁−κ₂) / ((λ₀−λ₁)(λ₀−λ₂)(λ₁−λ₂))`.
pub fn tau_product_formula(spec: &PrincipalSpectrum) -> Result<f64> {
    let d = spec.distinct();
    if d.len() != 3 {
        return Err(Error::DistinctCount {
            expected: 3,
            found: d.len(),
        });
    }
    let k = ricci_eigenvalues(spec)?.kappas;
    let l: Vec<f64> = d.iter().map(|c| c.value).collect();
    let num = (k[0] - k[1]) * (k[0] - k[2]) * (k[1] - k[2]);
    let den = (l[0] - l[1]) * (l[0] - l[2]) * (l[1] - l[2]);
    Ok(spec.epsilon() * num / den)
}

/// `τ` for three distinct curvatures with multiplicities `(1, n₁, n₂)`:
/// `(λ₀ + (n₁−1)λ₁ + (n₂−1)λ₂)(λ₁λ₂ + (n₁λ₁ + n₂λ₂)((n₁−1)λ₁ + (n₂−1)λ₂))`.
pub fn tau_one_n1_n2(l0: f64, l1: f64, l2: f64, n1: usize, n2: usize) -> f64 {
    let (a, b) = (n1 as f64, n2 as f64);
    let w = (a - 1.0) * l1 + (b - 1.0) * l2;
    (l0 + w) * (l1 * l2 + (a * l1 + b * l2) * w)
}

/// `H² = αH + βg` data for exactly two distinct curvatures `λ₁ (×p)`,
/// `λ₂ (×(n−p))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoCurvatureData {
    pub lambda1: f64,
    pub lambda2: f64,
    pub p: usize,
    pub alpha: f64,
    pub beta: f64,
    /// `tr(H) − α = (p−1)λ₁ + (n−p−1)λ₂`.
    pub trh_minus_alpha: f64,
}

pub fn two_curvature_data(spec: &PrincipalSpectrum) -> Result<TwoCurvatureData> {
    let d = spec.distinct();
    if d.len() != 2 {
        return Err(Error::DistinctCount {
            expected: 2,
            found: d.len(),
        });
    }
    let (l1, l2, p) = (d[0].value, d[1].value, d[0].multiplicity);
    let n = spec.dim();
    Ok(TwoCurvatureData {
        lambda1: l1,
        lambda2: l2,
        p,
        alpha: l1 + l2,
        beta: -l1 * l2,
        trh_minus_alpha: (p as f64 - 1.0) * l1 + (n - p) as f64 * l2 - l2,
    })
}
