//! Curvature taxonomy of a hypersurface point.

use crate::derived::Derived;
use crate::error::Result;
use crate::model::PointGeometry;
use crate::tensor::{fit_in_span, kn_product, singular_values, DenseTensor, FitResult, SymTensor2, Term};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Threshold for a generalized-Roter coefficient to count as present,
/// relative to `‖R‖`.
pub const SIGNIFICANT_TERM: f64 = 1e-8;

/// A class decision together with the residual it was based on.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Flag {
    pub value: bool,
    /// `None` when the class is not defined at this dimension.
    pub residual: Option<f64>,
}

impl Flag {
    fn new(value: bool, residual: f64) -> Self {
        Self {
            value,
            residual: Some(residual),
        }
    }

    fn undefined() -> Self {
        Self {
            value: false,
            residual: None,
        }
    }
}

/// Result of minimising `rank(A − αg)` over candidate values `α`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftedRank {
    pub alpha: f64,
    pub rank: usize,
    /// Ratio of the first discarded singular value to the cutoff scale.
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub tol: f64,
    pub einstein: Flag,
    pub quasi_einstein: Flag,
    pub two_quasi_einstein: Flag,
    /// Minimising shift of `S − αg` and its rank.
    pub ricci_shift: Option<ShiftedRank>,
    pub partially_einstein: Flag,
    /// `S² = λS + μg`, labels `lambda`, `mu`.
    pub partial_fit: FitResult,
    pub roter: Flag,
    /// `R = φ/2 S∧S + μ g∧S + η/2 g∧g`, labels `phi`, `mu`, `eta`.
    pub roter_fit: FitResult,
    pub generalized_roter: Flag,
    /// Six-term expansion, labels `phi2`, `phi1`, `phi`, `mu1`, `mu`, `eta`.
    pub groter_fit: FitResult,
    pub pseudosymmetric: Flag,
    pub l_r: Option<f64>,
    pub semisymmetric: Flag,
    pub ricci_pseudosymmetric: Flag,
    pub l_s: Option<f64>,
    pub conformally_flat: Flag,
    pub quasi_umbilical: Flag,
    pub two_quasi_umbilical: Flag,
    /// Minimising shift of `H − αg` and its rank.
    pub umbilicity: ShiftedRank,
}

/// Stable class names, in report order.
pub const CLASS_NAMES: [&str; 12] = [
    "einstein",
    "quasi_einstein",
    "two_quasi_einstein",
    "partially_einstein",
    "roter",
    "generalized_roter",
    "pseudosymmetric",
    "ricci_pseudosymmetric",
    "semisymmetric",
    "conformally_flat",
    "quasi_umbilical",
    "two_quasi_umbilical",
];

impl ClassificationReport {
    pub fn flag(&self, name: &str) -> Option<Flag> {
        Some(match name {
            "einstein" => self.einstein,
            "quasi_einstein" => self.quasi_einstein,
            "two_quasi_einstein" => self.two_quasi_einstein,
            "partially_einstein" => self.partially_einstein,
            "roter" => self.roter,
            "generalized_roter" => self.generalized_roter,
            "pseudosymmetric" => self.pseudosymmetric,
            "ricci_pseudosymmetric" => self.ricci_pseudosymmetric,
            "semisymmetric" => self.semisymmetric,
            "conformally_flat" => self.conformally_flat,
            "quasi_umbilical" => self.quasi_umbilical,
            "two_quasi_umbilical" => self.two_quasi_umbilical,
            _ => return None,
        })
    }

    pub fn flags(&self) -> Vec<(&'static str, Flag)> {
        CLASS_NAMES
            .iter()
            .map(|n| (*n, self.flag(n).expect("known class")))
            .collect()
    }

    /// `(φ, μ, η)` of the Roter equation, if the point is Roter.
    pub fn roter_coeffs(&self) -> Result<(f64, f64, f64)> {
        if !self.roter.value {
            return Err(crate::Error::NotRoter {
                residual: self.roter_fit.residual,
            });
        }
        let c = &self.roter_fit.coefficients;
        Ok((c[0], c[1], c[2]))
    }
}

/// Minimum of `rank(A − αg)` over the candidate shifts, with singular values
/// below `tol · max(σ_max(A), |α| σ_max(g))` treated as zero.
pub fn shifted_rank(
    a: &SymTensor2,
    g: &SymTensor2,
    candidates: &[f64],
    tol: f64,
) -> Option<ShiftedRank> {
    let am = a.to_matrix();
    let gm = g.to_matrix();
    let largest = |m: &DMatrix<f64>| singular_values(m).ok().map(|v| v.into_iter().fold(0.0, f64::max));
    let sa = largest(&am)?;
    let sg = largest(&gm)?;
    let mut best: Option<ShiftedRank> = None;
    for &alpha in candidates {
        let m: DMatrix<f64> = &am - &gm * alpha;
        let Ok(mut sorted) = singular_values(&m) else {
            continue;
        };
        sorted.sort_by(|x, y| y.total_cmp(x));
        let scale = sa.max(alpha.abs() * sg);
        let cutoff = tol * scale;
        let rank = sorted.iter().filter(|s| **s > cutoff).count();
        let gap = if scale > 0.0 {
            sorted.get(rank).map_or(0.0, |s| s / scale)
        } else {
            0.0
        };
        if best.is_none_or(|b| rank < b.rank) {
            best = Some(ShiftedRank { alpha, rank, gap });
        }
    }
    best
}

/// Eigenvalues of the endomorphism `g⁻¹A`, de-duplicated, for `A` diagonal
/// in the principal frame (any polynomial in `H`, such as `S` or `S²`).
///
/// They are read off along the principal directions rather than from a
/// general eigen-solver: the operator need not be `g`-self-adjoint in a
/// Euclidean sense when `g` is indefinite, and iterative Schur reduction can
/// stall on the repeated eigenvalues that are the norm here.
pub fn operator_eigenvalues(point: &PointGeometry, a: &SymTensor2) -> Vec<f64> {
    let vals: Vec<f64> = (0..point.dim()).map(|i| point.along_principal(a, i)).collect();
    let scale = vals.iter().fold(0.0f64, |s, x| s.max(x.abs())).max(f64::MIN_POSITIVE);
    let mut out: Vec<f64> = Vec::new();
    for v in vals {
        if !out.iter().any(|w: &f64| (w - v).abs() <= 1e-10 * scale) {
            out.push(v);
        }
    }
    out
}

/// Ricci shift-rank test used by the quasi-Einstein conditions.
pub fn ricci_shift_rank(point: &PointGeometry, tol: f64) -> Option<ShiftedRank> {
    let cand = operator_eigenvalues(point, &point.s);
    shifted_rank(&point.s, point.g(), &cand, tol)
}

pub fn is_quasi_einstein(point: &PointGeometry, tol: f64) -> bool {
    point.membership.in_u_s(tol) && ricci_shift_rank(point, tol).is_some_and(|r| r.rank == 1)
}

/// Least-squares Roter fit `R ∈ span{½S∧S, g∧S, ½g∧g}`.
pub fn roter_fit(point: &PointGeometry, d: &Derived<'_>) -> FitResult {
    let ss = d.s_wedge_s().scaled(0.5);
    let gg = point.gauss.clone();
    fit_in_span(&point.r, &[("phi", &ss), ("mu", &*d.g_wedge_s()), ("eta", &gg)])
        .expect("non-empty basis")
}

/// Least-squares fit of `R` in the six-term basis
/// `½S²∧S², S∧S², ½S∧S, g∧S², g∧S, ½g∧g`.
pub fn generalized_roter_fit(point: &PointGeometry, d: &Derived<'_>) -> FitResult {
    let (g, s, s2) = (point.g(), &point.s, &point.s2);
    let kn = |a: &SymTensor2, b: &SymTensor2| kn_product(a, b).expect("same frame");
    let b_s2s2 = kn(s2, s2).scaled(0.5);
    let b_ss2 = kn(s, s2);
    let b_ss = d.s_wedge_s().scaled(0.5);
    let b_gs2 = kn(g, s2);
    fit_in_span(
        &point.r,
        &[
            ("phi2", &b_s2s2),
            ("phi1", &b_ss2),
            ("phi", &b_ss),
            ("mu1", &b_gs2),
            ("mu", &*d.g_wedge_s()),
            ("eta", &point.gauss),
        ],
    )
    .expect("non-empty basis")
}

fn relative(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num / den.max(crate::tensor::fit::RESIDUAL_FLOOR)
    }
}

/// Best `L` with `target ≈ L·basis`, and the residual measured against the
/// natural magnitudes of both tensors. `L` is `None` when the basis tensor
/// itself vanishes to within `tol`, since any value then fits.
fn proportionality<T: DenseTensor>(target: Term<'_, T>, basis: Term<'_, T>, tol: f64) -> (f64, Option<f64>) {
    let bn = basis.norm();
    let degenerate = bn <= tol * basis.natural;
    let l = if degenerate || bn == 0.0 {
        0.0
    } else {
        let dot: f64 = target
            .as_slice()
            .iter()
            .zip(basis.as_slice())
            .map(|(x, y)| x * y)
            .sum();
        dot / (bn * bn)
    };
    let diff = crate::tensor::diff_norm(
        target.as_slice(),
        basis.scaled(l).as_slice(),
    );
    let den = target
        .norm()
        .max(target.natural)
        .max(l.abs() * bn.max(basis.natural));
    (relative(diff, den), (!degenerate).then_some(l))
}

pub fn classify(point: &PointGeometry, tol: f64) -> ClassificationReport {
    let d = Derived::new(point);
    classify_with(point, &d, tol)
}

pub fn classify_with(point: &PointGeometry, d: &Derived<'_>, tol: f64) -> ClassificationReport {
    let m = &point.membership;
    let in_s = m.in_u_s(tol);
    let in_c = m.in_u_c(tol);
    let g = point.g();
    let r_norm = point.r.norm();

    let einstein = Flag::new(!in_s, m.u_s_residual);
    let ricci_shift = ricci_shift_rank(point, tol);
    let (quasi_einstein, two_quasi_einstein) = match ricci_shift {
        Some(rs) if in_s => (
            Flag::new(rs.rank == 1, rs.gap),
            Flag::new(rs.rank == 2, rs.gap),
        ),
        Some(rs) => (Flag::new(false, rs.gap), Flag::new(false, rs.gap)),
        None => (Flag::new(false, 1.0), Flag::new(false, 1.0)),
    };

    let partial_fit = fit_in_span(&point.s2, &[("lambda", &point.s), ("mu", g)])
        .expect("non-empty basis");
    let partially = in_s && partial_fit.residual <= tol;
    let partially_einstein = Flag::new(partially, partial_fit.residual);

    let rf = roter_fit(point, d);
    let roter = Flag::new(
        rf.residual <= tol && in_s && in_c && !quasi_einstein.value,
        rf.residual,
    );

    let gf = generalized_roter_fit(point, d);
    let significant = {
        let s2s2 = 0.5 * kn_product(&point.s2, &point.s2).expect("same frame").norm();
        let ss2 = kn_product(&point.s, &point.s2).expect("same frame").norm();
        let gs2 = kn_product(g, &point.s2).expect("same frame").norm();
        let c = &gf.coefficients;
        [(c[0], s2s2), (c[1], ss2), (c[3], gs2)]
            .iter()
            .any(|(ci, bi)| ci.abs() * bi > SIGNIFICANT_TERM * r_norm)
    };
    let generalized_roter = Flag::new(
        gf.residual <= tol && !partially && in_s && in_c && significant,
        gf.residual,
    );

    let rr = d.rr();
    let (pseudo_res, l_r) = proportionality(rr, d.q_g_r(), tol);
    let pseudosymmetric = Flag::new(pseudo_res <= tol, pseudo_res);
    let l_r = l_r.filter(|_| pseudosymmetric.value);
    let semi_res = relative(rr.norm(), rr.natural);
    let semisymmetric = Flag::new(semi_res <= tol, semi_res);

    let (ricci_res, l_s) = proportionality(d.rs(), d.q_g_s(), tol);
    let ricci_pseudosymmetric = Flag::new(ricci_res <= tol, ricci_res);
    let l_s = l_s.filter(|_| ricci_pseudosymmetric.value);

    let conformally_flat = match m.u_c_residual {
        Some(res) => Flag::new(!in_c, res),
        None => Flag::undefined(),
    };

    let curv: Vec<f64> = point.spectrum.distinct().iter().map(|c| c.value).collect();
    let umbilicity = shifted_rank(&point.h, g, &curv, tol).expect("at least one curvature");
    let quasi_umbilical = Flag::new(umbilicity.rank <= 1, umbilicity.gap);
    let two_quasi_umbilical = Flag::new(umbilicity.rank == 2, umbilicity.gap);

    ClassificationReport {
        tol,
        einstein,
        quasi_einstein,
        two_quasi_einstein,
        ricci_shift,
        partially_einstein,
        partial_fit,
        roter,
        roter_fit: rf,
        generalized_roter,
        groter_fit: gf,
        pseudosymmetric,
        l_r,
        semisymmetric,
        ricci_pseudosymmetric,
        l_s,
        conformally_flat,
        quasi_umbilical,
        two_quasi_umbilical,
        umbilicity,
    }
}
