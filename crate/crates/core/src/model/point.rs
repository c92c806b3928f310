use super::invariants::{
    cubic_coefficients, cubic_scale, BetaCoefficients, CubicCoefficients, TauData,
};
use super::spectrum::PrincipalSpectrum;
use crate::error::Result;
use crate::tensor::{
    fit_in_span, gauss_tensor, kn_product, mat_power, trace, weyl, Combination, Congruence,
    CurvTensor4, DenseTensor, Frame, SymTensor2,
};
use crate::DEFAULT_TOL;
use nalgebra::DMatrix;

/// Residuals behind the `U_H`, `U_S`, `U_C` membership flags.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Membership {
    /// Relative residual of `H²` fitted in `span{H, g}`.
    pub u_h_residual: f64,
    /// `‖S − (κ/n)g‖ / ‖S‖`.
    pub u_s_residual: f64,
    /// `‖C‖ / ‖R‖`; `None` for `n = 3`, where `C` vanishes identically.
    pub u_c_residual: Option<f64>,
}

impl Membership {
    pub fn in_u_h(&self, tol: f64) -> bool {
        self.u_h_residual > tol
    }

    pub fn in_u_s(&self, tol: f64) -> bool {
        self.u_s_residual > tol
    }

    pub fn in_u_c(&self, tol: f64) -> bool {
        self.u_c_residual.is_some_and(|r| r > tol)
    }
}

/// Every curvature object of a hypersurface at one point, expressed in one
/// frame.
#[derive(Clone, Debug)]
pub struct PointGeometry {
    pub spectrum: PrincipalSpectrum,
    pub frame: Frame,
    /// Columns are the principal directions in the working frame.
    pub principal_directions: DMatrix<f64>,
    pub h: SymTensor2,
    pub h2: SymTensor2,
    pub h3: SymTensor2,
    pub h4: SymTensor2,
    pub r: CurvTensor4,
    /// `G = ½ g∧g`.
    pub gauss: CurvTensor4,
    /// Weyl tensor; absent for `n = 3`.
    pub weyl: Option<CurvTensor4>,
    pub s: SymTensor2,
    pub s2: SymTensor2,
    pub s3: SymTensor2,
    /// `A = S² − ρ₁S − ρ₀g`.
    pub a: SymTensor2,
    pub tr_h: f64,
    pub tr_h2: f64,
    pub kappa: f64,
    pub tr_s2: f64,
    pub cubic: CubicCoefficients,
    pub tau: f64,
    pub rho0: f64,
    pub rho1: f64,
    /// `β₁…β₆, μ`; absent for `n = 3`.
    pub beta: Option<BetaCoefficients>,
    pub membership: Membership,
    /// Tolerance the default flags below were evaluated with.
    pub tol: f64,
    pub in_u_h: bool,
    pub in_u_s: bool,
    pub in_u_c: bool,
}

/// Builds the point in the principal frame `g = diag(signature)` with the
/// default tolerance.
pub fn build_point(spec: &PrincipalSpectrum) -> Result<PointGeometry> {
    build_point_with(spec, DEFAULT_TOL, None)
}

/// Builds the point, optionally after the change of basis `L`: the metric
/// and second fundamental tensor are transformed first and every other
/// tensor is then computed in the new frame.
pub fn build_point_with(
    spec: &PrincipalSpectrum,
    tol: f64,
    congruence: Option<&Congruence>,
) -> Result<PointGeometry> {
    let n = spec.dim();
    let sig = spec.signature();
    let lam = spec.expanded();
    let base = Frame::diagonal(sig)?;
    let h_diag: Vec<f64> = sig.iter().zip(&lam).map(|(s, l)| s * l).collect();
    let h0 = SymTensor2::diagonal(&h_diag);
    let (frame, h, principal_directions) = match congruence {
        Some(l) => {
            let dirs = l
                .matrix()
                .clone()
                .try_inverse()
                .ok_or(crate::Error::SingularMetric)?;
            (base.congruence(l)?, h0.congruence(l)?, dirs)
        }
        None => (base, h0, DMatrix::identity(n, n)),
    };
    build_from_tensors(spec.clone(), frame, h, principal_directions, tol)
}

fn build_from_tensors(
    spectrum: PrincipalSpectrum,
    frame: Frame,
    h: SymTensor2,
    principal_directions: DMatrix<f64>,
    tol: f64,
) -> Result<PointGeometry> {
    let n = spectrum.dim();
    let nf = n as f64;
    let eps = spectrum.epsilon();
    let c = spectrum.ambient_curvature();
    let g = frame.metric().clone();

    let h2 = mat_power(&h, 2, &frame)?;
    let h3 = mat_power(&h, 3, &frame)?;
    let h4 = mat_power(&h, 4, &frame)?;
    let gauss = gauss_tensor(&frame);
    let hh = kn_product(&h, &h)?;
    let r = Combination::zeros(n)
        .plus(0.5 * eps, &hh)
        .plus(c, &gauss)
        .into_sum();
    let s = r.ricci_contraction(&frame)?;
    let kappa = trace(&s, &frame);
    let s2 = mat_power(&s, 2, &frame)?;
    let s3 = mat_power(&s, 3, &frame)?;
    let weyl_t = if n >= 4 {
        Some(weyl(&r, &s, kappa, &frame)?)
    } else {
        None
    };

    let cubic = cubic_coefficients(&spectrum);
    let td = TauData::from_cubic(&spectrum, &cubic);
    let beta = if n >= 4 {
        Some(BetaCoefficients::from_cubic(&spectrum, &cubic)?)
    } else {
        None
    };
    let a = Combination::of(&s2)
        .plus(-td.rho1, &s)
        .plus(-td.rho0, &g)
        .into_sum();

    let u_h_residual = fit_in_span(&h2, &[("H", &h), ("g", &g)])?.residual;
    let traceless = Combination::of(&s).plus(-kappa / nf, &g).into_sum();
    let u_s_residual = ratio(traceless.norm(), s.norm());
    let u_c_residual = weyl_t.as_ref().map(|w| ratio(w.norm(), r.norm()));
    let membership = Membership {
        u_h_residual,
        u_s_residual,
        u_c_residual,
    };

    Ok(PointGeometry {
        tr_h: trace(&h, &frame),
        tr_h2: trace(&h2, &frame),
        tr_s2: trace(&s2, &frame),
        in_u_h: membership.in_u_h(tol),
        in_u_s: membership.in_u_s(tol),
        in_u_c: membership.in_u_c(tol),
        spectrum,
        frame,
        principal_directions,
        h,
        h2,
        h3,
        h4,
        r,
        gauss,
        weyl: weyl_t,
        s,
        s2,
        s3,
        a,
        kappa,
        cubic,
        tau: td.tau,
        rho0: td.rho0,
        rho1: td.rho1,
        beta,
        membership,
        tol,
    })
}

fn ratio(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num / den.max(crate::tensor::fit::RESIDUAL_FLOOR)
    }
}

impl PointGeometry {
    pub fn dim(&self) -> usize {
        self.spectrum.dim()
    }

    pub fn epsilon(&self) -> f64 {
        self.spectrum.epsilon()
    }

    /// Ambient sectional curvature `c`.
    pub fn c(&self) -> f64 {
        self.spectrum.ambient_curvature()
    }

    pub fn g(&self) -> &SymTensor2 {
        self.frame.metric()
    }

    /// `g`-normalised value `B(v, v)/g(v, v)` along the `i`-th principal
    /// direction.
    pub fn along_principal(&self, b: &SymTensor2, i: usize) -> f64 {
        let v = self.principal_directions.column(i);
        let bm = b.to_matrix();
        let gm = self.g().to_matrix();
        (v.transpose() * &bm * v)[(0, 0)] / (v.transpose() * &gm * v)[(0, 0)]
    }

    /// Whether the cubic relation holds and the point lies in `U_H`, i.e. the
    /// setting of the `τ`-identities.
    pub fn in_cubic_block(&self, tol: f64) -> bool {
        self.membership.in_u_h(tol) && self.cubic.holds(tol)
    }

    pub fn tau_scale(&self) -> f64 {
        cubic_scale(&self.spectrum, &self.cubic)
    }

    /// `|τ| ≤ tol · scale`.
    pub fn tau_vanishes(&self, tol: f64) -> bool {
        self.tau.abs() <= tol * self.tau_scale()
    }

    /// The Weyl tensor, or an error for `n = 3`.
    pub fn weyl_tensor(&self) -> Result<&CurvTensor4> {
        self.weyl.as_ref().ok_or(crate::Error::DimensionTooSmall {
            what: "Weyl tensor",
            required: 4,
            found: self.dim(),
        })
    }

    pub fn beta_coefficients(&self) -> Result<&BetaCoefficients> {
        self.beta.as_ref().ok_or(crate::Error::DimensionTooSmall {
            what: "beta coefficients",
            required: 4,
            found: self.dim(),
        })
    }
}
