//! Residual checks of the tensor identities satisfied by hypersurfaces.
//!
//! Every check compares two linear combinations of tensors. The residual is
//!
//! ```text
//! ‖lhs − rhs‖ / max(‖lhs‖, ‖rhs‖, max_i |c_i| ‖T_i‖, floor)
//! ```
//!
//! where the `c_i T_i` are the individual terms on either side. Including the
//! term scale keeps relations whose sides both cancel to zero from reporting
//! a spurious relative residual of order one.
//!
//! Identity ids are frozen strings (`eq_2_14_crrc`, `eq_4_17_RS`,
//! `thm_5_2_tau_product`, …); see [`IDENTITY_IDS`].

mod cubic;
mod quadratic;
mod theorems;
mod universal;

pub use quadratic::{direction_of as direction_index, lemma21_expression};

use crate::derived::Derived;
use crate::error::{Error, Result};
use crate::model::PointGeometry;
use crate::tensor::{diff_norm, Combination, DenseTensor, FitResult};
use serde::{Deserialize, Serialize};

/// How a report's residual is to be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `lhs = rhs`; passes when the residual is at most the tolerance.
    Relation,
    /// A quantity must be non-zero; the residual is its magnitude relative
    /// to its natural scale and passes when it exceeds the tolerance.
    NonVanishing,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub kind: CheckKind,
    pub lhs_norm: f64,
    pub rhs_norm: f64,
    pub residual: f64,
    pub applicable: bool,
    /// `None` exactly when the identity is not applicable.
    pub passed: Option<bool>,
    pub fitted: Option<FitResult>,
    pub note: Option<String>,
}

impl IdentityReport {
    pub fn inapplicable(id: &str, reason: impl Into<String>) -> Self {
        Self {
            identity_id: id.to_string(),
            kind: CheckKind::Relation,
            lhs_norm: 0.0,
            rhs_norm: 0.0,
            residual: 0.0,
            applicable: false,
            passed: None,
            fitted: None,
            note: Some(reason.into()),
        }
    }

    /// Tensor relation `lhs = rhs`.
    pub fn relation<T: DenseTensor>(
        id: &str,
        lhs: &Combination<T>,
        rhs: &Combination<T>,
        tol: f64,
    ) -> Self {
        let (l, r) = (lhs.sum(), rhs.sum());
        let (ln, rn) = (l.norm(), r.norm());
        let num = diff_norm(l.as_slice(), r.as_slice());
        let den = ln.max(rn).max(lhs.term_scale()).max(rhs.term_scale());
        Self::from_parts(id, CheckKind::Relation, ln, rn, relative(num, den), tol)
    }

    /// Scalar relation `lhs = rhs`, with `scale` an additional natural
    /// magnitude for the denominator.
    pub fn scalar(id: &str, lhs: f64, rhs: f64, scale: f64, tol: f64) -> Self {
        let den = lhs.abs().max(rhs.abs()).max(scale);
        Self::from_parts(
            id,
            CheckKind::Relation,
            lhs.abs(),
            rhs.abs(),
            relative((lhs - rhs).abs(), den),
            tol,
        )
    }

    /// `value ≠ 0`, measured against `scale`.
    pub fn non_vanishing(id: &str, value: f64, scale: f64, tol: f64) -> Self {
        let r = relative(value.abs(), scale);
        Self::from_parts(id, CheckKind::NonVanishing, value.abs(), 0.0, r, tol)
    }

    fn from_parts(id: &str, kind: CheckKind, ln: f64, rn: f64, residual: f64, tol: f64) -> Self {
        let passed = match kind {
            CheckKind::Relation => residual <= tol,
            CheckKind::NonVanishing => residual > tol,
        };
        Self {
            identity_id: id.to_string(),
            kind,
            lhs_norm: ln,
            rhs_norm: rn,
            residual,
            applicable: true,
            passed: Some(passed),
            fitted: None,
            note: None,
        }
    }

    pub fn with_fit(mut self, fit: FitResult) -> Self {
        self.fitted = Some(fit);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Re-evaluates `passed` against another tolerance.
    pub fn passes(&self, tol: f64) -> Option<bool> {
        if !self.applicable {
            return None;
        }
        Some(match self.kind {
            CheckKind::Relation => self.residual <= tol,
            CheckKind::NonVanishing => self.residual > tol,
        })
    }
}

fn relative(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num / den.max(crate::tensor::fit::RESIDUAL_FLOOR)
    }
}

/// Scalar summary of the point a suite was run on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSummary {
    pub dimension: usize,
    pub ambient_curvature: f64,
    pub epsilon: f64,
    pub trace_h: f64,
    pub kappa: f64,
    pub phi: f64,
    pub psi: f64,
    pub rho: f64,
    pub cubic_residual: f64,
    pub tau: f64,
    pub rho0: f64,
    pub rho1: f64,
    pub mu: Option<f64>,
    pub beta: Option<[f64; 6]>,
    pub in_u_h: bool,
    pub in_u_s: bool,
    pub in_u_c: bool,
}

impl PointSummary {
    pub fn of(p: &PointGeometry, tol: f64) -> Self {
        Self {
            dimension: p.dim(),
            ambient_curvature: p.c(),
            epsilon: p.epsilon(),
            trace_h: p.tr_h,
            kappa: p.kappa,
            phi: p.cubic.phi,
            psi: p.cubic.psi,
            rho: p.cubic.rho,
            cubic_residual: p.cubic.residual,
            tau: p.tau,
            rho0: p.rho0,
            rho1: p.rho1,
            mu: p.beta.map(|b| b.mu),
            beta: p.beta.map(|b| b.beta),
            in_u_h: p.membership.in_u_h(tol),
            in_u_s: p.membership.in_u_s(tol),
            in_u_c: p.membership.in_u_c(tol),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub reports: Vec<IdentityReport>,
    pub point: PointSummary,
    pub tol: f64,
    /// Every applicable identity passed.
    pub passed: bool,
}

impl SuiteReport {
    pub fn get(&self, id: &str) -> Option<&IdentityReport> {
        self.reports.iter().find(|r| r.identity_id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityReport> {
        self.reports.iter().filter(|r| r.passed == Some(false))
    }
}

/// Every identity id the suite can emit, in report order.
pub const IDENTITY_IDS: &[&str] = &[
    "eq_2_14_crrc",
    "eq_2_15_cs",
    "eq_2_17_rr",
    "eq_2_18_crrc",
    "eq_3_1_ricci",
    "eq_3_2_scalar",
    "eq_3_3_quartic",
    "eq_4_23_QHS",
    "eq_2_19_lemma21",
    "eq_2_22_lemma22",
    "eq_2_26_prop23",
    "eq_3_4_S",
    "eq_3_5_S2",
    "eq_3_6_trH_alpha",
    "eq_3_7_H",
    "eq_3_9_kappa_diff",
    "eq_3_10_roter",
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
    "thm_5_1_tau_zero",
    "thm_5_1_S2",
    "thm_5_2_tau_product",
    "eq_5_3_k01",
    "eq_5_3_k02",
    "eq_5_3_k12",
    "eq_5_4_cubic_product",
    "eq_5_5_product",
    "eq_6_1_H",
    "eq_6_2_groter",
    "eq_6_3_RS",
    "eq_6_4_CS",
    "eq_6_5_H2",
    "thm_6_1_S3_span",
];

/// Converts a too-small-dimension error into inapplicable reports for the
/// given ids.
fn or_inapplicable(ids: &[&str], r: Result<Vec<IdentityReport>>) -> Vec<IdentityReport> {
    match r {
        Ok(v) => v,
        Err(Error::DimensionTooSmall {
            what,
            required,
            found,
        }) => ids
            .iter()
            .map(|id| {
                IdentityReport::inapplicable(
                    id,
                    format!("{what} requires n >= {required}, have n = {found}"),
                )
            })
            .collect(),
        Err(e) => ids
            .iter()
            .map(|id| IdentityReport::inapplicable(id, e.to_string()))
            .collect(),
    }
}

pub use cubic::check_prop41_block;
pub use quadratic::{check_lemma21, check_lemma22_prop23, check_prop31, check_prop32_roter};
pub use theorems::{check_theorem51, check_theorem52, check_theorem61};
pub use universal::{
    check_hypersurface_basics, check_hypersurface_crrc, check_hypersurface_rr,
    check_universal_crrc, check_universal_cs,
};

/// Runs every check on the point.
pub fn run_suite(point: &PointGeometry, tol: f64) -> SuiteReport {
    let d = Derived::new(point);
    run_suite_with(&d, tol)
}

pub fn run_suite_with(d: &Derived<'_>, tol: f64) -> SuiteReport {
    let point = d.point;
    let mut reports = Vec::new();
    reports.extend(or_inapplicable(
        &["eq_2_14_crrc"],
        check_universal_crrc(d, tol).map(|r| vec![r]),
    ));
    reports.extend(or_inapplicable(
        &["eq_2_15_cs"],
        check_universal_cs(d, tol).map(|r| vec![r]),
    ));
    reports.extend(or_inapplicable(
        &["eq_2_17_rr"],
        check_hypersurface_rr(d, tol).map(|r| vec![r]),
    ));
    reports.extend(or_inapplicable(
        &["eq_2_18_crrc"],
        check_hypersurface_crrc(d, tol).map(|r| vec![r]),
    ));
    reports.extend(check_hypersurface_basics(d, tol));
    reports.extend(or_inapplicable(
        &["eq_2_19_lemma21"],
        check_lemma21(d, tol).map(|r| vec![r]),
    ));
    reports.extend(or_inapplicable(
        &["eq_2_22_lemma22", "eq_2_26_prop23"],
        check_lemma22_prop23(d, tol),
    ));
    reports.extend(check_prop31(d, tol));
    reports.extend(or_inapplicable(
        &["eq_3_10_roter"],
        check_prop32_roter(d, tol).map(|r| vec![r]),
    ));
    reports.extend(check_prop41_block(d, tol));
    reports.extend(check_theorem51(d, tol));
    reports.extend(check_theorem52(d, tol));
    reports.extend(check_theorem61(d, tol));
    debug_assert!(reports
        .iter()
        .all(|r| IDENTITY_IDS.contains(&r.identity_id.as_str())));
    let passed = reports.iter().all(|r| r.passed != Some(false));
    SuiteReport {
        reports,
        point: PointSummary::of(point, tol),
        tol,
        passed,
    }
}
