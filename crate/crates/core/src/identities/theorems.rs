//! The `τ = 0` / `τ ≠ 0` dichotomy and the three-curvature product formula.

use super::quadratic::direction_of;
use super::IdentityReport;
use crate::derived::Derived;
use crate::tensor::{fit_in_span, kn_product, Combination, Term};

const THM51_IDS: [&str; 2] = ["thm_5_1_tau_zero", "thm_5_1_S2"];

/// Partially Einstein points of `U_H` have `τ = 0` and `S² = ρ₁S + ρ₀g`.
pub fn check_theorem51(d: &Derived<'_>, tol: f64) -> Vec<IdentityReport> {
    let p = d.point;
    let g = p.g();
    let fit = fit_in_span(&p.s2, &[("rho1", &p.s), ("rho0", g)]).expect("non-empty basis");
    let partially = p.membership.in_u_s(tol) && fit.residual <= tol;
    if !(partially && p.in_cubic_block(tol)) {
        return THM51_IDS
            .iter()
            .map(|id| {
                IdentityReport::inapplicable(id, "requires a partially Einstein point of U_H")
            })
            .collect();
    }
    let tau_zero = IdentityReport::scalar(THM51_IDS[0], p.tau, 0.0, p.tau_scale(), tol);
    let s2 = IdentityReport::relation(
        THM51_IDS[1],
        &Combination::of(d.s2()),
        &Combination::zeros(p.dim())
            .plus(p.rho1, d.s())
            .plus(p.rho0, g),
        tol,
    )
    .with_fit(fit);
    vec![tau_zero, s2]
}

const THM52_IDS: [&str; 6] = [
    "thm_5_2_tau_product",
    "eq_5_3_k01",
    "eq_5_3_k02",
    "eq_5_3_k12",
    "eq_5_4_cubic_product",
    "eq_5_5_product",
];

/// On points with exactly three distinct principal curvatures, `τ` equals
/// `ε Π(κᵢ−κⱼ) / Π(λᵢ−λⱼ)` with the Ricci eigenvalues read off the tensor
/// `S` along the principal directions.
pub fn check_theorem52(d: &Derived<'_>, tol: f64) -> Vec<IdentityReport> {
    let p = d.point;
    let dist = p.spectrum.distinct();
    if dist.len() != 3 {
        return THM52_IDS
            .iter()
            .map(|id| IdentityReport::inapplicable(id, "requires three distinct curvatures"))
            .collect();
    }
    let eps = p.epsilon();
    let lam = [dist[0].value, dist[1].value, dist[2].value];
    let kap: Vec<f64> = (0..3)
        .map(|j| p.along_principal(&p.s, direction_of(p, j)))
        .collect();
    let shift = p.cubic.phi - p.tr_h;
    let dl = [lam[0] - lam[1], lam[0] - lam[2], lam[1] - lam[2]];
    let dk = [kap[0] - kap[1], kap[0] - kap[2], kap[1] - kap[2]];
    let dl_prod = dl[0] * dl[1] * dl[2];
    let dk_prod = dk[0] * dk[1] * dk[2];
    let tau = p.tau;

    let mut out = vec![IdentityReport::scalar(
        THM52_IDS[0],
        tau,
        eps * dk_prod / dl_prod,
        p.tau_scale(),
        tol,
    )];
    for (m, (i, j, k)) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)].into_iter().enumerate() {
        let rhs = eps * (lam[i] - lam[j]) * (lam[k] - shift);
        let scale = kap[i].abs().max(kap[j].abs()).max(rhs.abs());
        out.push(IdentityReport::scalar(THM52_IDS[1 + m], dk[m], rhs, scale, tol));
    }
    let cubic_prod = lam.iter().map(|l| l - shift).product::<f64>();
    out.push(IdentityReport::scalar(
        THM52_IDS[4],
        cubic_prod,
        tau,
        p.tau_scale(),
        tol,
    ));
    let rhs = eps * dl_prod * tau;
    out.push(IdentityReport::scalar(
        THM52_IDS[5],
        dk_prod,
        rhs,
        (dl_prod * p.tau_scale()).abs(),
        tol,
    ));
    out
}

const THM61_IDS: [&str; 6] = [
    "eq_6_1_H",
    "eq_6_2_groter",
    "eq_6_3_RS",
    "eq_6_4_CS",
    "eq_6_5_H2",
    "thm_6_1_S3_span",
];

/// When `τ ≠ 0`, `H` is a quadratic polynomial in `S`, `R` is generalized
/// Roter, and `S³` lies in `span{S², S, g}`.
pub fn check_theorem61(d: &Derived<'_>, tol: f64) -> Vec<IdentityReport> {
    let p = d.point;
    if !p.in_cubic_block(tol) || p.tau_vanishes(tol) {
        let why = if p.in_cubic_block(tol) {
            "tau vanishes"
        } else {
            "requires a point of U_H satisfying the cubic relation"
        };
        return THM61_IDS
            .iter()
            .map(|id| IdentityReport::inapplicable(id, why))
            .collect();
    }
    let dim = p.dim();
    let n = dim as f64;
    let eps = p.epsilon();
    let c = p.c();
    let k = (n - 1.0) * c;
    let g = p.g();
    let t = p.tr_h;
    let (tau, rho0, rho1, rho) = (p.tau, p.rho0, p.rho1, p.cubic.rho);
    let beta1 = eps * (p.cubic.phi - t);
    let inv = 1.0 / tau;
    let mut out = Vec::new();

    out.push(IdentityReport::relation(
        THM61_IDS[0],
        &Combination::of(&p.h),
        &Combination::zeros(dim).plus(inv, d.a()),
        tol,
    ));
    let aa = kn_product(&p.a, &p.a).expect("same frame");
    out.push(IdentityReport::relation(
        THM61_IDS[1],
        &Combination::of(d.r()),
        &Combination::zeros(dim).plus(0.5 * eps * inv * inv, Term::new(&aa, d.mag.a * d.mag.a)).plus(c, &p.gauss),
        tol,
    ));
    out.push(IdentityReport::relation(
        THM61_IDS[2],
        &Combination::of(d.rs()),
        &Combination::zeros(dim).plus(-inv * beta1, d.q_s_s2())
            .plus(inv * (rho + k * beta1), d.q_g_s2())
            .plus(
                c - inv * rho * rho1 - inv * beta1 * (rho0 + k * rho1),
                d.q_g_s(),
            ),
        tol,
    ));
    out.push(match (p.beta_coefficients(), d.cs()) {
        (Ok(b), Ok(cs)) => {
            let b = b.beta;
            IdentityReport::relation(
                THM61_IDS[3],
                &Combination::of(cs),
                &Combination::zeros(dim).plus(-inv * b[0], d.q_s_s2())
                    .plus(inv * b[3], d.q_g_s2())
                    .plus(b[1] - inv * (b[0] * rho0 + b[3] * rho1), d.q_g_s()),
                tol,
            )
        }
        (Err(e), _) | (_, Err(e)) => IdentityReport::inapplicable(THM61_IDS[3], e.to_string()),
    });
    out.push(IdentityReport::relation(
        THM61_IDS[4],
        &Combination::of(&p.h2),
        &Combination::zeros(dim).plus(inv * t, d.s2())
            .plus(-inv * (t * rho1 + eps * tau), d.s())
            .plus(inv * (eps * k * tau - rho0 * t), g),
        tol,
    ));
    let fit = fit_in_span(&p.s3, &[("tau2", &p.s2), ("tau1", &p.s), ("tau0", g)])
        .expect("non-empty basis");
    let cf = &fit.coefficients;
    let fitted = Combination::zeros(dim).plus(cf[0], d.s2()).plus(cf[1], d.s()).plus(cf[2], g);
    out.push(
        IdentityReport::relation(THM61_IDS[5], &Combination::of(d.s3()), &fitted, tol)
            .with_fit(fit.clone()),
    );
    out
}
