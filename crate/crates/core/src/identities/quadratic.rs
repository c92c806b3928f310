//! Quadratic Ricci expressions: quasi-Einstein and Roter points, and
//! hypersurfaces with at most two principal curvatures (`H² ∈ span{H, g}`).

use super::IdentityReport;
use crate::classify::{is_quasi_einstein, roter_fit};
use crate::derived::Derived;
use crate::error::{Error, Result};
use crate::model::PointGeometry;
use crate::tensor::{
    fit_in_span, kn_product, mat_power, trace, Combination, CurvTensor4, DenseTensor, Frame,
    SymTensor2, Term,
};

/// `g∧S² + (n−2)/2 S∧S − κ g∧S + (κ² − tr S²)/(2(n−1)) g∧g` for an
/// arbitrary symmetric `S`, with `κ = tr S`. Vanishes whenever `S` has the
/// quasi-Einstein form `αg + βw⊗w`.
pub fn lemma21_expression(s: &SymTensor2, frame: &Frame) -> Result<CurvTensor4> {
    Ok(lemma21_terms(s, frame)?.into_sum())
}

fn lemma21_terms(s: &SymTensor2, frame: &Frame) -> Result<Combination<CurvTensor4>> {
    frame.check_dim(s.dim())?;
    let n = frame.dim() as f64;
    let g = frame.metric();
    let s2 = mat_power(s, 2, frame)?;
    let kappa = trace(s, frame);
    let tr_s2 = trace(&s2, frame);
    Ok(Combination::of(&kn_product(g, &s2)?)
        .plus(0.5 * (n - 2.0), &kn_product(s, s)?)
        .plus(-kappa, &kn_product(g, s)?)
        .plus(
            (kappa * kappa - tr_s2) / (2.0 * (n - 1.0)),
            &kn_product(g, g)?,
        ))
}

/// Lemma-2.1 expression of the point's Ricci tensor, on quasi-Einstein
/// points off the conformally flat set.
pub fn check_lemma21(d: &Derived<'_>, tol: f64) -> Result<IdentityReport> {
    let p = d.point;
    p.weyl_tensor()?;
    const ID: &str = "eq_2_19_lemma21";
    if !(is_quasi_einstein(p, tol) && p.membership.in_u_c(tol)) {
        return Ok(IdentityReport::inapplicable(
            ID,
            "requires a quasi-Einstein point with non-vanishing Weyl tensor",
        ));
    }
    let e = lemma21_terms(&p.s, &p.frame)?;
    let zero = Combination::zeros(p.dim());
    Ok(IdentityReport::relation(ID, &e, &zero, tol))
}

/// On Roter points `C = φ/(n−2) E` with `E` the Lemma-2.1 expression and `φ`
/// the Roter coefficient; on Roter and quasi-Einstein points `τ̃ C = E` for
/// the fitted `τ̃` (`= (n−2)/φ` on Roter points, `0` on quasi-Einstein ones).
pub fn check_lemma22_prop23(d: &Derived<'_>, tol: f64) -> Result<Vec<IdentityReport>> {
    let p = d.point;
    let c = p.weyl_tensor()?;
    let n = p.dim() as f64;
    const L22: &str = "eq_2_22_lemma22";
    const P23: &str = "eq_2_26_prop23";
    let in_s = p.membership.in_u_s(tol);
    let in_c = p.membership.in_u_c(tol);
    let quasi = is_quasi_einstein(p, tol);
    let rf = roter_fit(p, d);
    let roter = rf.residual <= tol && in_s && in_c && !quasi;
    if !in_c || !(roter || quasi) {
        let why = "requires a Roter or quasi-Einstein point with non-vanishing Weyl tensor";
        return Ok(vec![
            IdentityReport::inapplicable(L22, why),
            IdentityReport::inapplicable(P23, why),
        ]);
    }
    let e_terms = lemma21_terms(&p.s, &p.frame)?;
    let e = e_terms.sum().clone();

    let lemma22 = if roter {
        let phi = rf.coefficients[0];
        let rhs = Combination::zeros(p.dim()).plus(phi / (n - 2.0), &e);
        IdentityReport::relation(L22, &Combination::of(d.weyl()?), &rhs, tol)
            .with_note(format!("phi = {phi}"))
    } else {
        IdentityReport::inapplicable(L22, "quasi-Einstein point is not Roter")
    };

    let fit = fit_in_span(&e, &[("tau", c)])?;
    let tau_t = fit.coefficients[0];
    let mut prop23 = IdentityReport::relation(
        P23,
        &Combination::zeros(p.dim()).plus(tau_t, d.weyl()?),
        &e_terms,
        tol,
    );
    if roter {
        let expected = (n - 2.0) / rf.coefficients[0];
        prop23 = prop23.with_note(format!("(n-2)/phi = {expected}"));
    }
    Ok(vec![lemma22, prop23.with_fit(fit)])
}

/// `α, β` with `H² = αH + βg`, when the point lies in `U_S` but not in
/// `U_H`.
fn alpha_beta(p: &PointGeometry, tol: f64) -> Option<(f64, f64)> {
    if !p.membership.in_u_s(tol) || p.membership.in_u_h(tol) {
        return None;
    }
    let fit = fit_in_span(&p.h2, &[("alpha", &p.h), ("beta", p.g())]).ok()?;
    Some((fit.coefficients[0], fit.coefficients[1]))
}

/// Index into the expanded spectrum of the first direction carrying the
/// `j`-th distinct curvature.
pub fn direction_of(p: &PointGeometry, j: usize) -> usize {
    let d = p.spectrum.distinct();
    let target = d[j].value;
    let lam = p.spectrum.expanded();
    let scale = p.spectrum.spectral_radius().max(f64::MIN_POSITIVE);
    lam.iter()
        .position(|l| (l - target).abs() <= 1e-12 * scale)
        .unwrap_or(0)
}

const PROP31_IDS: [&str; 5] = [
    "eq_3_4_S",
    "eq_3_5_S2",
    "eq_3_6_trH_alpha",
    "eq_3_7_H",
    "eq_3_9_kappa_diff",
];

/// Expansions of `S`, `S²` and `H` on `U_S \ U_H`, together with
/// `trH − α ≠ 0` and the Ricci eigenvalue gap.
pub fn check_prop31(d: &Derived<'_>, tol: f64) -> Vec<IdentityReport> {
    let p = d.point;
    let Some((alpha, beta)) = alpha_beta(p, tol) else {
        return PROP31_IDS
            .iter()
            .map(|id| IdentityReport::inapplicable(id, "requires a point of U_S outside U_H"))
            .collect();
    };
    let n = p.dim() as f64;
    let eps = p.epsilon();
    let g = p.g();
    let t = p.tr_h;
    let ta = t - alpha;
    let kp = (n - 1.0) * p.c() - eps * beta;

    let s_rel = IdentityReport::relation(
        PROP31_IDS[0],
        &Combination::of(d.s()),
        &Combination::zeros(p.dim())
            .plus(eps * ta, &p.h)
            .plus(kp, g),
        tol,
    );
    let s2_rel = IdentityReport::relation(
        PROP31_IDS[1],
        &Combination::of(d.s2()),
        &Combination::zeros(p.dim())
            .plus(ta * (alpha * ta + 2.0 * eps * kp), &p.h)
            .plus(beta * ta * ta + kp * kp, g),
        tol,
    );
    let nonzero = IdentityReport::non_vanishing(
        PROP31_IDS[2],
        ta,
        t.abs().max(alpha.abs()).max(p.spectrum.spectral_radius()),
        tol,
    );
    let h_rel = IdentityReport::relation(
        PROP31_IDS[3],
        &Combination::of(&p.h),
        &Combination::zeros(p.dim())
            .plus(eps / ta, d.s())
            .plus(-eps * kp / ta, g),
        tol,
    );
    let dist = p.spectrum.distinct();
    let kappa_diff = if dist.len() == 2 {
        let (i, j) = (direction_of(p, 0), direction_of(p, 1));
        let (k1, k2) = (p.along_principal(&p.s, i), p.along_principal(&p.s, j));
        let (l1, l2) = (dist[0].value, dist[1].value);
        let rhs = eps * (l1 - l2) * ta;
        IdentityReport::scalar(
            PROP31_IDS[4],
            k1 - k2,
            rhs,
            k1.abs().max(k2.abs()).max(((l1 - l2) * ta).abs()),
            tol,
        )
    } else {
        IdentityReport::inapplicable(PROP31_IDS[4], "requires two distinct curvatures")
    };
    vec![s_rel, s2_rel, nonzero, h_rel, kappa_diff]
}

/// `R = ε/(2(trH−α)²) (S − k′g)∧(S − k′g) + cG` with `k′ = (n−1)c − εβ`.
pub fn check_prop32_roter(d: &Derived<'_>, tol: f64) -> Result<IdentityReport> {
    let p = d.point;
    const ID: &str = "eq_3_10_roter";
    let Some((alpha, beta)) = alpha_beta(p, tol) else {
        return Ok(IdentityReport::inapplicable(
            ID,
            "requires a point of U_S outside U_H",
        ));
    };
    let n = p.dim() as f64;
    let eps = p.epsilon();
    let ta = p.tr_h - alpha;
    if ta == 0.0 {
        return Err(Error::InvalidParameter("trH = alpha on U_S".into()));
    }
    let kp = (n - 1.0) * p.c() - eps * beta;
    let shifted = Combination::of(d.s()).plus(-kp, p.g()).into_sum();
    let ww = kn_product(&shifted, &shifted)?;
    let ww_scale = (d.mag.s + kp.abs() * d.mag.g).powi(2);
    let rhs = Combination::zeros(p.dim())
        .plus(eps / (2.0 * ta * ta), Term::new(&ww, ww_scale))
        .plus(p.c(), &p.gauss);
    Ok(IdentityReport::relation(ID, &Combination::of(d.r()), &rhs, tol))
}
