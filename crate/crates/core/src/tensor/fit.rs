//! Least-squares fitting of a tensor in the span of a few basis tensors.

use super::{diff_norm, svd, DenseTensor};
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

/// Singular values below this fraction of the largest are treated as zero.
pub const RANK_CUTOFF: f64 = 1e-10;

/// Denominator floor for relative residuals.
pub const RESIDUAL_FLOOR: f64 = 1e-30;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub coefficients: Vec<f64>,
    /// `‖target − Σ cᵢ bᵢ‖ / max(‖target‖, floor)`.
    pub residual: f64,
    pub basis_labels: Vec<String>,
    /// Numerical rank of the (column-normalised) basis.
    pub rank: usize,
    /// True when the basis is rank-deficient, so that the coefficients are a
    /// minimum-norm choice rather than unique.
    pub underdetermined: bool,
}

impl FitResult {
    pub fn coefficient(&self, label: &str) -> Option<f64> {
        self.basis_labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.coefficients[i])
    }
}

/// Fits `target ≈ Σ cᵢ bᵢ` over flattened components.
///
/// Columns are scaled to unit norm, reduced by a Householder QR and solved
/// through an SVD of the small triangular factor. The coefficients are the
/// minimum-norm solution in the normalised coordinates, mapped back to the
/// original basis; the residual is recomputed from the original data.
pub fn fit_in_span<T: DenseTensor>(target: &T, basis: &[(&str, &T)]) -> Result<FitResult> {
    if basis.is_empty() {
        return Err(Error::EmptyBasis);
    }
    let n = target.dim();
    for (_, b) in basis {
        if b.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.dim(),
            });
        }
    }
    let rows = target.as_slice().len();
    let m = basis.len();
    let norms: Vec<f64> = basis.iter().map(|(_, b)| b.norm()).collect();
    let mut mat = DMatrix::<f64>::zeros(rows, m);
    for (j, (_, b)) in basis.iter().enumerate() {
        if norms[j] > 0.0 {
            let inv = 1.0 / norms[j];
            for (i, v) in b.as_slice().iter().enumerate() {
                mat[(i, j)] = v * inv;
            }
        }
    }
    let rhs = DVector::from_column_slice(target.as_slice());

    let (small, small_rhs) = if rows > m {
        let qr = mat.qr();
        let mut qt_b = rhs;
        qr.q_tr_mul(&mut qt_b);
        let r = qr.r();
        (r, qt_b.rows(0, m).into_owned())
    } else {
        (mat, rhs)
    };
    let svd = svd(&small, true)?;
    let smax = svd.singular_values.max();
    let cutoff = RANK_CUTOFF * smax;
    let rank = svd.singular_values.iter().filter(|s| **s > cutoff && **s > 0.0).count();
    let u = svd.u.as_ref().expect("u computed");
    let vt = svd.v_t.as_ref().expect("v_t computed");
    let mut y = DVector::<f64>::zeros(m);
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > cutoff && s > 0.0 {
            let proj = u.column(k).dot(&small_rhs) / s;
            y += vt.row(k).transpose() * proj;
        }
    }
    let coefficients: Vec<f64> = (0..m)
        .map(|j| if norms[j] > 0.0 { y[j] / norms[j] } else { 0.0 })
        .collect();

    let mut approx = vec![0.0; rows];
    for (c, (_, b)) in coefficients.iter().zip(basis) {
        if *c != 0.0 {
            for (a, v) in approx.iter_mut().zip(b.as_slice()) {
                *a += c * v;
            }
        }
    }
    let err = diff_norm(target.as_slice(), &approx);
    let residual = if err == 0.0 {
        0.0
    } else {
        err / target.norm().max(RESIDUAL_FLOOR)
    };
    Ok(FitResult {
        coefficients,
        residual,
        basis_labels: basis.iter().map(|(l, _)| l.to_string()).collect(),
        rank,
        underdetermined: rank < m,
    })
}
