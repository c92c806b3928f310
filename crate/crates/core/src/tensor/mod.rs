//! Dense covariant tensors in a fixed frame of an `n`-dimensional tangent space.
//!
//! Storage is always the full row-major component array; no symmetry
//! compression is used. Slot `k` of a `(0, r)` tensor varies fastest when
//! `k = r - 1`.
//!
//! The product and action constructions live in [`products`]; least-squares
//! span fitting lives in [`fit`].

mod dense;
pub mod fit;
pub mod products;

pub use dense::{CurvTensor4, DenseTensor, SymTensor2, Tensor2, Tensor6};
pub use fit::{fit_in_span, FitResult};
pub use products::{
    derivation_action2, derivation_action4, gauss_tensor, kn_product, kn_wedge4, mat_power, tachibana2,
    tachibana4, trace, weyl,
};

use crate::error::{Error, Result};
use nalgebra::DMatrix;

/// Metric of the frame together with its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    g: SymTensor2,
    g_inv: SymTensor2,
}

impl Frame {
    /// Builds a frame from an arbitrary symmetric invertible metric.
    pub fn new(g: SymTensor2) -> Result<Self> {
        let n = g.dim();
        if n < 3 {
            return Err(Error::DimensionTooSmall {
                what: "frame",
                required: 3,
                found: n,
            });
        }
        let inv = g
            .to_matrix()
            .try_inverse()
            .ok_or(Error::SingularMetric)?;
        if inv.iter().any(|x| !x.is_finite()) {
            return Err(Error::SingularMetric);
        }
        let g_inv = SymTensor2::from_fn(n, |i, j| 0.5 * (inv[(i, j)] + inv[(j, i)]));
        Ok(Self { g, g_inv })
    }

    /// Diagonal frame `g = diag(signs)`; the inverse is exact.
    pub fn diagonal(signs: &[f64]) -> Result<Self> {
        if signs.iter().any(|&s| s == 0.0 || !s.is_finite()) {
            return Err(Error::SingularMetric);
        }
        let n = signs.len();
        if n < 3 {
            return Err(Error::DimensionTooSmall {
                what: "frame",
                required: 3,
                found: n,
            });
        }
        let g = SymTensor2::diagonal(signs);
        let inv: Vec<f64> = signs.iter().map(|s| 1.0 / s).collect();
        Ok(Self {
            g,
            g_inv: SymTensor2::diagonal(&inv),
        })
    }

    pub fn euclidean(n: usize) -> Result<Self> {
        Self::diagonal(&vec![1.0; n])
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn metric(&self) -> &SymTensor2 {
        &self.g
    }

    pub fn inverse_metric(&self) -> &SymTensor2 {
        &self.g_inv
    }

    /// Frame obtained by the change of basis `e'_a = L_{ia} e_i`.
    pub fn congruence(&self, l: &Congruence) -> Result<Self> {
        Self::new(self.g.congruence(l)?)
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: n,
            });
        }
        Ok(())
    }
}

/// An invertible change of basis. Columns hold the new basis vectors in the
/// old frame, so a `(0, k)` tensor transforms as
/// `T'_{a..} = L_{ia} ... T_{i..}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Congruence {
    l: DMatrix<f64>,
}

impl Congruence {
    pub fn new(l: DMatrix<f64>) -> Result<Self> {
        if !l.is_square() {
            return Err(Error::DimensionMismatch {
                expected: l.nrows(),
                found: l.ncols(),
            });
        }
        if l.clone().try_inverse().is_none() {
            return Err(Error::SingularMetric);
        }
        Ok(Self { l })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            l: DMatrix::identity(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.l.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.l
    }

    /// 2-norm condition number.
    pub fn condition_number(&self) -> f64 {
        let Ok(sv) = singular_values(&self.l) else {
            return f64::INFINITY;
        };
        let max = sv.iter().cloned().fold(0.0, f64::max);
        let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        if min == 0.0 {
            f64::INFINITY
        } else {
            max / min
        }
    }

    pub(crate) fn entry(&self, i: usize, a: usize) -> f64 {
        self.l[(i, a)]
    }
}

/// Sweep cap for the SVD. nalgebra's default iterates without bound and can
/// stall on matrices with clustered singular values.
const SVD_MAX_ITER: usize = 10_000;

/// Convergence threshold; the same `5ε` nalgebra's own `svd()` uses. A bare
/// `ε` can stop on a wrong decomposition of nearly rank-deficient factors.
const SVD_EPS: f64 = 5.0 * f64::EPSILON;

pub(crate) fn svd(m: &DMatrix<f64>, vectors: bool) -> Result<nalgebra::SVD<f64, nalgebra::Dyn, nalgebra::Dyn>> {
    m.clone()
        .try_svd(vectors, vectors, SVD_EPS, SVD_MAX_ITER)
        .ok_or(Error::NoConvergence("singular value decomposition"))
}

pub(crate) fn singular_values(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    Ok(svd(m, false)?.singular_values.iter().copied().collect())
}

/// A tensor paired with the magnitude it would have without cancellation,
/// e.g. `‖A‖‖T‖` for `Q(A,T)`. A plain `&T` converts with natural scale 0.
#[derive(Debug)]
pub struct Term<'a, T> {
    pub tensor: &'a T,
    pub natural: f64,
}

impl<T> Clone for Term<'_, T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for Term<'_, T> {}

impl<'a, T> Term<'a, T> {
    pub fn new(tensor: &'a T, natural: f64) -> Self {
        Self { tensor, natural }
    }
}

impl<T> std::ops::Deref for Term<'_, T> {
    type Target = T;
    fn deref(&self) -> &T {
        self.tensor
    }
}

impl<'a, T> From<&'a T> for Term<'a, T> {
    fn from(tensor: &'a T) -> Self {
        Self {
            tensor,
            natural: 0.0,
        }
    }
}

/// Running linear combination `sum_i c_i T_i` that also tracks the largest
/// individual term magnitude `max_i |c_i| * max(||T_i||, natural_i)`.
///
/// Identity residuals are normalised by that term scale so that relations
/// whose sides both vanish through cancellation still get a meaningful
/// relative residual.
#[derive(Clone, Debug)]
pub struct Combination<T> {
    sum: T,
    term_scale: f64,
}

impl<T: DenseTensor> Combination<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            sum: T::zeros(n),
            term_scale: 0.0,
        }
    }

    pub fn of<'a>(term: impl Into<Term<'a, T>>) -> Self
    where
        T: 'a,
    {
        let term = term.into();
        Self::zeros(term.tensor.dim()).plus(1.0, term)
    }

    pub fn plus<'a>(mut self, coef: f64, term: impl Into<Term<'a, T>>) -> Self
    where
        T: 'a,
    {
        let Term { tensor, natural } = term.into();
        debug_assert_eq!(self.sum.dim(), tensor.dim());
        let contribution = coef.abs() * tensor.norm().max(natural);
        if contribution > self.term_scale {
            self.term_scale = contribution;
        }
        for (s, t) in self.sum.as_mut_slice().iter_mut().zip(tensor.as_slice()) {
            *s += coef * t;
        }
        self
    }

    pub fn sum(&self) -> &T {
        &self.sum
    }

    pub fn into_sum(self) -> T {
        self.sum
    }

    pub fn term_scale(&self) -> f64 {
        self.term_scale
    }
}

/// Frobenius norm of the component difference of two equally-shaped slices.
pub(crate) fn diff_norm(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
