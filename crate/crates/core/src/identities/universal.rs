//! Identities that hold on every hypersurface (and, for the first two, on
//! every semi-Riemannian manifold of dimension at least four).

use super::IdentityReport;
use crate::derived::Derived;
use crate::error::Result;
use crate::tensor::{kn_product, tachibana2, tachibana4, Combination, SymTensor2, Term, Tensor6};

/// `S² − κ/(n−1) S`.
fn s2_shift(d: &Derived<'_>) -> SymTensor2 {
    let p = d.point;
    let n = p.dim() as f64;
    Combination::of(d.s2())
        .plus(-p.kappa / (n - 1.0), d.s())
        .into_sum()
}

/// `Q(g, g∧(S² − κ/(n−1) S))`.
fn q_g_wedge_shift(d: &Derived<'_>) -> Result<Tensor6> {
    let g = d.point.g();
    tachibana4(g, &kn_product(g, &s2_shift(d))?)
}

/// Natural magnitude of `S² − κ/(n−1) S`.
fn shift_scale(d: &Derived<'_>) -> f64 {
    let n = d.point.dim() as f64;
    d.mag.s2 + d.point.kappa.abs() / (n - 1.0) * d.mag.s
}

fn require_weyl(d: &Derived<'_>) -> Result<()> {
    d.point.weyl_tensor().map(|_| ())
}

/// `C·R + R·C = C·C + R·R − (n−2)⁻² Q(g, g∧(S² − κ/(n−1) S))`.
pub fn check_universal_crrc(d: &Derived<'_>, tol: f64) -> Result<IdentityReport> {
    require_weyl(d)?;
    let n = d.point.dim() as f64;
    let q = q_g_wedge_shift(d)?;
    let lhs = Combination::of(d.cr()?).plus(1.0, d.rc()?);
    let rhs = Combination::of(d.cc()?)
        .plus(1.0, d.rr())
        .plus(-1.0 / ((n - 2.0) * (n - 2.0)), Term::new(&q, d.mag.g * d.mag.g * shift_scale(d)));
    Ok(IdentityReport::relation("eq_2_14_crrc", &lhs, &rhs, tol))
}

/// `C·S = R·S − (n−2)⁻¹ Q(g, S² − κ/(n−1) S)`.
pub fn check_universal_cs(d: &Derived<'_>, tol: f64) -> Result<IdentityReport> {
    require_weyl(d)?;
    let n = d.point.dim() as f64;
    let q = tachibana2(d.point.g(), &s2_shift(d))?;
    let lhs = Combination::of(d.cs()?);
    let rhs = Combination::of(d.rs()).plus(-1.0 / (n - 2.0), Term::new(&q, d.mag.g * shift_scale(d)));
    Ok(IdentityReport::relation("eq_2_15_cs", &lhs, &rhs, tol))
}

/// `R·R = Q(S,R) − (n−2)c Q(g,C)`.
pub fn check_hypersurface_rr(d: &Derived<'_>, tol: f64) -> Result<IdentityReport> {
    require_weyl(d)?;
    let n = d.point.dim() as f64;
    let c = d.point.c();
    let lhs = Combination::of(d.rr());
    let rhs = Combination::of(d.q_s_r()).plus(-(n - 2.0) * c, d.q_g_c()?);
    Ok(IdentityReport::relation("eq_2_17_rr", &lhs, &rhs, tol))
}

/// Five-term hypersurface form of the `C·R + R·C` identity.
pub fn check_hypersurface_crrc(d: &Derived<'_>, tol: f64) -> Result<IdentityReport> {
    require_weyl(d)?;
    let n = d.point.dim() as f64;
    let c = d.point.c();
    let q = q_g_wedge_shift(d)?;
    let lhs = Combination::of(d.cr()?).plus(1.0, d.rc()?);
    let rhs = Combination::of(d.cc()?)
        .plus(1.0, d.q_s_r())
        .plus(-(n - 2.0) * c, d.q_g_c()?)
        .plus(-1.0 / ((n - 2.0) * (n - 2.0)), Term::new(&q, d.mag.g * d.mag.g * shift_scale(d)));
    Ok(IdentityReport::relation("eq_2_18_crrc", &lhs, &rhs, tol))
}

/// Ricci tensor, scalar curvature and quartic relation of the Gauss
/// equation, and `Q(H,S) + εQ(H,H²) = −(n−1)c Q(g,H)`. Valid for all
/// `n ≥ 3`.
pub fn check_hypersurface_basics(d: &Derived<'_>, tol: f64) -> Vec<IdentityReport> {
    let p = d.point;
    let n = p.dim() as f64;
    let eps = p.epsilon();
    let c = p.c();
    let k = (n - 1.0) * c;
    let g = p.g();
    let t = p.tr_h;

    let ricci = IdentityReport::relation(
        "eq_3_1_ricci",
        &Combination::of(d.s()),
        &Combination::zeros(p.dim())
            .plus(eps * t, &p.h)
            .plus(-eps, &p.h2)
            .plus(k, g),
        tol,
    );
    let scalar = IdentityReport::scalar(
        "eq_3_2_scalar",
        p.kappa - n * (n - 1.0) * c,
        eps * (t * t - p.tr_h2),
        (t * t).max(p.tr_h2).max(n * (n - 1.0) * c.abs()),
        tol,
    );
    let quartic = IdentityReport::relation(
        "eq_3_3_quartic",
        &Combination::of(d.s2()).plus(-2.0 * k, d.s()).plus(k * k, g),
        &Combination::of(&p.h4)
            .plus(-2.0 * t, &p.h3)
            .plus(t * t, &p.h2),
        tol,
    );
    let qhs = IdentityReport::relation(
        "eq_4_23_QHS",
        &Combination::of(d.q_h_s()).plus(eps, d.q_h_h2()),
        &Combination::zeros(p.dim()).plus(-k, d.q_g_h()),
        tol,
    );
    vec![ricci, scalar, quartic, qhs]
}
