//! Consequences of the cubic relation `H³ = φH² + ψH + ρg` on `U_H`.

use super::IdentityReport;
use crate::derived::Derived;
use crate::error::Result;
use crate::tensor::{kn_wedge4, tachibana4, Combination, SymTensor2, Term};

const IDS: [&str; 18] = [
    "eq_4_3_H4",
    "eq_4_4_A",
    "eq_4_9_tau2R",
    "eq_4_10_rho0",
    "eq_4_10_S2",
    "eq_4_11_QgS2",
    "eq_4_12_QHS",
    "eq_4_13_QgH",
    "eq_4_13_QHH2",
    "eq_4_16_S3_mixed",
    "eq_4_16_S3",
    "eq_4_17_RS",
    "eq_4_18_CS",
    "eq_4_19_RC",
    "eq_4_20_CR",
    "eq_4_21_CC",
    "eq_4_24_tauRS",
    "eq_4_25_tauCS",
];

/// Every identity of the `τ`-ledger. Applicable on points of `U_H` whose
/// principal spectrum satisfies the cubic relation; the Weyl-dependent
/// entries additionally need `n ≥ 4`.
pub fn check_prop41_block(d: &Derived<'_>, tol: f64) -> Vec<IdentityReport> {
    let p = d.point;
    if !p.in_cubic_block(tol) {
        let why = if p.membership.in_u_h(tol) {
            "cubic relation does not hold"
        } else {
            "requires a point of U_H"
        };
        return IDS
            .iter()
            .map(|id| IdentityReport::inapplicable(id, why))
            .collect();
    }
    let mut out = scalar_block(d, tol);
    for (id, r) in IDS[12..16].iter().zip(weyl_block(d, tol)) {
        out.push(match r {
            Ok(rep) => rep,
            Err(e) => IdentityReport::inapplicable(id, e.to_string()),
        });
    }
    out.extend(tau_block(d, tol));
    out
}

fn scalar_block(d: &Derived<'_>, tol: f64) -> Vec<IdentityReport> {
    let p = d.point;
    let dim = p.dim();
    let n = dim as f64;
    let eps = p.epsilon();
    let c = p.c();
    let k = (n - 1.0) * c;
    let g = p.g();
    let t = p.tr_h;
    let (phi, psi, rho) = (p.cubic.phi, p.cubic.psi, p.cubic.rho);
    let (tau, rho0, rho1) = (p.tau, p.rho0, p.rho1);
    let beta1 = eps * (phi - t);
    let mut out = Vec::new();

    out.push(IdentityReport::relation(
        IDS[0],
        &Combination::of(&p.h4),
        &Combination::zeros(dim).plus(phi * phi + psi, &p.h2)
            .plus(phi * psi + rho, &p.h)
            .plus(phi * rho, g),
        tol,
    ));
    out.push(IdentityReport::relation(
        IDS[1],
        &Combination::of(d.s2()).plus(-rho1, d.s()).plus(-rho0, g),
        &Combination::zeros(dim).plus(tau, &p.h),
        tol,
    ));
    let aa = crate::tensor::kn_product(&p.a, &p.a).expect("same frame");
    out.push(IdentityReport::relation(
        IDS[2],
        &Combination::zeros(dim).plus(tau * tau, d.r()),
        &Combination::zeros(dim).plus(0.5 * eps, Term::new(&aa, d.mag.a * d.mag.a)).plus(tau * tau * c, &p.gauss),
        tol,
    ));
    let rho0_rhs = (p.tr_s2 - rho1 * p.kappa - tau * t) / n;
    out.push(IdentityReport::scalar(
        IDS[3],
        rho0,
        rho0_rhs,
        (p.tr_s2.abs() + (rho1 * p.kappa).abs() + (tau * t).abs()) / n,
        tol,
    ));
    out.push(IdentityReport::relation(
        IDS[4],
        &Combination::of(d.s2()),
        &Combination::zeros(dim).plus(rho1, d.s()).plus(rho0, g).plus(tau, &p.h),
        tol,
    ));
    out.push(IdentityReport::relation(
        IDS[5],
        &Combination::of(d.q_g_s2()),
        &Combination::zeros(dim).plus(rho1, d.q_g_s()).plus(tau, d.q_g_h()),
        tol,
    ));
    out.push(IdentityReport::relation(
        IDS[6],
        &Combination::zeros(dim).plus(tau, d.q_h_s()),
        &Combination::zeros(dim).plus(-1.0, d.q_s_s2()).plus(-rho0, d.q_g_s()),
        tol,
    ));
    out.push(IdentityReport::relation(
        IDS[7],
        &Combination::zeros(dim).plus(tau, d.q_g_h()),
        &Combination::of(d.q_g_s2()).plus(-rho1, d.q_g_s()),
        tol,
    ));
    out.push(IdentityReport::relation(
        IDS[8],
        &Combination::zeros(dim).plus(tau, d.q_h_h2()),
        &Combination::zeros(dim).plus(eps, d.q_s_s2())
            .plus(eps * (rho0 + k * rho1), d.q_g_s())
            .plus(-eps * k, d.q_g_s2()),
        tol,
    ));
    // H g⁻¹ S is symmetric because H and S share eigenvectors.
    let hs = p.h.compose(&p.s, &p.frame).expect("same frame");
    let hs = SymTensor2::from_fn(dim, |i, j| 0.5 * (hs.get(i, j) + hs.get(j, i)));
    out.push(IdentityReport::relation(
        IDS[9],
        &Combination::of(d.s3()),
        &Combination::zeros(dim).plus(rho1, d.s2()).plus(rho0, d.s()).plus(tau, Term::new(&hs, d.mag.h * d.mag.s * d.mag.g_inv)),
        tol,
    ));
    out.push(IdentityReport::relation(
        IDS[10],
        &Combination::of(d.s3()),
        &Combination::zeros(dim).plus(rho1, d.s2())
            .plus(rho0, d.s())
            .plus(eps * tau * (t - phi), &p.h2)
            .plus(eps * tau * (eps * k - psi), &p.h)
            .plus(-eps * tau * rho, g),
        tol,
    ));
    out.push(IdentityReport::relation(
        IDS[11],
        &Combination::of(d.rs()),
        &Combination::zeros(dim).plus(c, d.q_g_s())
            .plus(rho, d.q_g_h())
            .plus(-eps * beta1, d.q_h_h2()),
        tol,
    ));
    out
}

fn weyl_block(d: &Derived<'_>, tol: f64) -> [Result<IdentityReport>; 4] {
    let p = d.point;
    let dim = p.dim();
    let n = dim as f64;
    let eps = p.epsilon();
    let c = p.c();
    let beta = p.beta_coefficients();

    let cs = || -> Result<IdentityReport> {
        let b = beta.as_ref().map_err(Clone::clone)?.beta;
        Ok(IdentityReport::relation(
            IDS[12],
            &Combination::of(d.cs()?),
            &Combination::zeros(dim).plus(b[0], d.q_h_s())
                .plus(b[1], d.q_g_s())
                .plus(b[3], d.q_g_h()),
            tol,
        ))
    };
    let rc = || -> Result<IdentityReport> {
        let b = beta.as_ref().map_err(Clone::clone)?.beta;
        let g_qhh2 = kn_wedge4(p.g(), &d.q_h_h2())?;
        Ok(IdentityReport::relation(
            IDS[13],
            &Combination::zeros(dim).plus(n - 2.0, d.rc()?),
            &Combination::zeros(dim).plus(n - 2.0, d.q_s_r())
                .plus(-(n - 2.0) * (n - 2.0) * c, d.q_g_r())
                .plus(-(n - 3.0) * c, d.q_s_g4())
                .plus(p.cubic.rho, d.q_h_g4())
                .plus(eps * b[0], Term::new(&g_qhh2, d.mag.g * d.mag.h * d.mag.h2)),
            tol,
        ))
    };
    let cr = || -> Result<IdentityReport> {
        let b = beta.as_ref().map_err(Clone::clone)?.beta;
        let h_qgh2 = kn_wedge4(&p.h, &crate::tensor::tachibana2(p.g(), &p.h2)?)?;
        let coef = p.kappa / (n - 1.0) + eps * p.cubic.psi - (n * n - 3.0 * n + 3.0) * c;
        Ok(IdentityReport::relation(
            IDS[14],
            &Combination::zeros(dim).plus(n - 2.0, d.cr()?),
            &Combination::zeros(dim).plus(n - 3.0, d.q_s_r())
                .plus(eps * b[0], Term::new(&h_qgh2, d.mag.g * d.mag.h * d.mag.h2))
                .plus(-(n - 3.0) * c, d.q_s_g4())
                .plus(coef, d.q_g_r()),
            tol,
        ))
    };
    let cc = || -> Result<IdentityReport> {
        let b = beta.as_ref().map_err(Clone::clone)?.beta;
        let q_s_gh = tachibana4(&p.s, &d.g_wedge_h())?;
        Ok(IdentityReport::relation(
            IDS[15],
            &Combination::zeros(dim).plus(n - 2.0, d.cc()?),
            &Combination::zeros(dim).plus(n - 3.0, d.q_s_r())
                .plus(b[4], d.q_g_r())
                .plus(b[5], d.q_s_g4())
                .plus(b[0], Term::new(&q_s_gh, d.mag.g * d.mag.h * d.mag.s))
                .plus(b[3], d.q_h_g4()),
            tol,
        ))
    };
    [cs(), rc(), cr(), cc()]
}

fn tau_block(d: &Derived<'_>, tol: f64) -> Vec<IdentityReport> {
    let p = d.point;
    let dim = p.dim();
    let n = dim as f64;
    let eps = p.epsilon();
    let c = p.c();
    let k = (n - 1.0) * c;
    let (tau, rho0, rho1, rho) = (p.tau, p.rho0, p.rho1, p.cubic.rho);
    let beta1 = eps * (p.cubic.phi - p.tr_h);

    let rs = IdentityReport::relation(
        "eq_4_24_tauRS",
        &Combination::zeros(dim).plus(tau, d.rs()),
        &Combination::zeros(dim).plus(-beta1, d.q_s_s2())
            .plus(rho + k * beta1, d.q_g_s2())
            .plus(tau * c - rho * rho1 - beta1 * (rho0 + k * rho1), d.q_g_s()),
        tol,
    );
    let cs = match (p.beta_coefficients(), d.cs()) {
        (Ok(b), Ok(cs)) => {
            let b = b.beta;
            IdentityReport::relation(
                "eq_4_25_tauCS",
                &Combination::zeros(dim).plus(tau, cs),
                &Combination::zeros(dim).plus(-b[0], d.q_s_s2())
                    .plus(b[3], d.q_g_s2())
                    .plus(b[1] * tau - b[0] * rho0 - b[3] * rho1, d.q_g_s()),
                tol,
            )
        }
        (Err(e), _) | (_, Err(e)) => IdentityReport::inapplicable("eq_4_25_tauCS", e.to_string()),
    };
    vec![rs, cs]
}
