use super::{Congruence, Frame};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// Common view of the dense tensor types as flat component arrays.
pub trait DenseTensor: Clone {
    /// Number of covariant slots.
    const RANK: u32;

    fn dim(&self) -> usize;
    fn as_slice(&self) -> &[f64];
    fn as_mut_slice(&mut self) -> &mut [f64];
    fn from_components(n: usize, data: Vec<f64>) -> Self;

    fn zeros(n: usize) -> Self {
        Self::from_components(n, vec![0.0; n.pow(Self::RANK)])
    }

    /// Frobenius norm of the component array.
    fn norm(&self) -> f64 {
        self.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn max_abs(&self) -> f64 {
        self.as_slice().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    fn scaled(&self, s: f64) -> Self {
        let data = self.as_slice().iter().map(|x| s * x).collect();
        Self::from_components(self.dim(), data)
    }
}

macro_rules! dense_ops {
    ($t:ident) => {
        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                assert_eq!(self.n, rhs.n, "dimension mismatch");
                let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
                $t { n: self.n, data }
            }
        }

        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                assert_eq!(self.n, rhs.n, "dimension mismatch");
                let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
                $t { n: self.n, data }
            }
        }

        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }

        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }

        impl Mul<&$t> for f64 {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                rhs.scaled(self)
            }
        }

        impl Mul<$t> for f64 {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                rhs.scaled(self)
            }
        }

        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                self.scaled(-1.0)
            }
        }

        impl DenseTensor for $t {
            const RANK: u32 = $t::RANK;

            fn dim(&self) -> usize {
                self.n
            }

            fn as_slice(&self) -> &[f64] {
                &self.data
            }

            fn as_mut_slice(&mut self) -> &mut [f64] {
                &mut self.data
            }

            fn from_components(n: usize, data: Vec<f64>) -> Self {
                assert_eq!(data.len(), n.pow(Self::RANK), "component count");
                $t { n, data }
            }
        }
    };
}

/// Symmetric `(0,2)` tensor. Every constructor writes `a_ij` and `a_ji`
/// from the same value, so symmetry is exact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymTensor2 {
    n: usize,
    data: Vec<f64>,
}

/// General `(0,2)` tensor, used for products like `H g^-1 S` whose symmetry
/// is a property to check rather than assume.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tensor2 {
    n: usize,
    data: Vec<f64>,
}

/// `(0,4)` tensor. Curvature-type symmetries are checked, not enforced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvTensor4 {
    n: usize,
    data: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tensor6 {
    n: usize,
    data: Vec<f64>,
}

impl SymTensor2 {
    const RANK: u32 = 2;

    /// Evaluates `f(i, j)` for `i <= j` and mirrors it.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Self { n, data }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_fn(n, |i, j| if i == j { values[i] } else { 0.0 })
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1.0; n])
    }

    /// Rejects input whose transpose differs in any entry.
    pub fn try_from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for j in 0..i {
                let defect = (rows[i][j] - rows[j][i]).abs();
                if defect != 0.0 {
                    return Err(Error::NotSymmetric {
                        row: i,
                        col: j,
                        defect,
                    });
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j]))
    }

    /// Symmetric outer product `u ⊗ u`.
    pub fn outer(u: &[f64]) -> Self {
        Self::from_fn(u.len(), |i, j| u[i] * u[j])
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.n, self.n, &self.data)
    }

    /// `L^T A L`.
    pub fn congruence(&self, l: &Congruence) -> Result<Self> {
        check(self.n, l.dim())?;
        let m = l.matrix().transpose() * self.to_matrix() * l.matrix();
        Ok(Self::from_fn(self.n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)])))
    }

    /// Matrix of the endomorphism `g^-1 A` (row = upper index).
    pub fn raised(&self, frame: &Frame) -> DMatrix<f64> {
        frame.inverse_metric().to_matrix() * self.to_matrix()
    }

    /// The general product `A g^-1 B`.
    pub fn compose(&self, other: &SymTensor2, frame: &Frame) -> Result<Tensor2> {
        check(self.n, other.n)?;
        frame.check_dim(self.n)?;
        let m = self.to_matrix() * frame.inverse_metric().to_matrix() * other.to_matrix();
        Ok(Tensor2::from_matrix(&m))
    }

    pub fn to_general(&self) -> Tensor2 {
        Tensor2 {
            n: self.n,
            data: self.data.clone(),
        }
    }
}

impl Tensor2 {
    const RANK: u32 = 2;

    pub fn from_matrix(m: &DMatrix<f64>) -> Self {
        let n = m.nrows();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(m[(i, j)]);
            }
        }
        Self { n, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }
}

impl CurvTensor4 {
    const RANK: u32 = 4;

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n.pow(4));
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        data.push(f(a, b, c, d));
                    }
                }
            }
        }
        Self { n, data }
    }

    #[inline]
    pub fn index(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        ((a * self.n + b) * self.n + c) * self.n + d
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        self.data[self.index(a, b, c, d)]
    }

    /// Relative defects of the generalized-curvature symmetries, each
    /// normalised by the tensor norm.
    pub fn symmetry_defects(&self) -> SymmetryDefects {
        let n = self.n;
        let scale = self.norm().max(f64::MIN_POSITIVE);
        let (mut skew12, mut skew34, mut pair, mut bianchi) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let v = self.get(a, b, c, d);
                        skew12 = skew12.max((v + self.get(b, a, c, d)).abs());
                        skew34 = skew34.max((v + self.get(a, b, d, c)).abs());
                        pair = pair.max((v - self.get(c, d, a, b)).abs());
                        bianchi = bianchi
                            .max((v + self.get(b, c, a, d) + self.get(c, a, b, d)).abs());
                    }
                }
            }
        }
        SymmetryDefects {
            skew_first_pair: skew12 / scale,
            skew_last_pair: skew34 / scale,
            pair_symmetry: pair / scale,
            first_bianchi: bianchi / scale,
        }
    }

    pub fn is_generalized_curvature(&self, tol: f64) -> bool {
        self.symmetry_defects().max() <= tol
    }

    /// `g^{hk} B_{hijk}`, the Ricci-type contraction over slots 1 and 4.
    pub fn ricci_contraction(&self, frame: &Frame) -> Result<SymTensor2> {
        frame.check_dim(self.n)?;
        let gi = frame.inverse_metric();
        let n = self.n;
        Ok(SymTensor2::from_fn(n, |i, j| {
            let mut s = 0.0;
            for h in 0..n {
                for k in 0..n {
                    let w = gi.get(h, k);
                    if w != 0.0 {
                        s += w * self.get(h, i, j, k);
                    }
                }
            }
            s
        }))
    }

    /// Contraction of slots `(p, q)` (0-based) with the inverse metric; the
    /// remaining two slots keep their order.
    pub fn contract(&self, p: usize, q: usize, frame: &Frame) -> Result<Tensor2> {
        frame.check_dim(self.n)?;
        assert!(p < 4 && q < 4 && p != q);
        let gi = frame.inverse_metric();
        let n = self.n;
        let rest: Vec<usize> = (0..4).filter(|s| *s != p && *s != q).collect();
        let mut data = vec![0.0; n * n];
        let mut idx = [0usize; 4];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for u in 0..n {
                    for v in 0..n {
                        let w = gi.get(u, v);
                        if w == 0.0 {
                            continue;
                        }
                        idx[p] = u;
                        idx[q] = v;
                        idx[rest[0]] = i;
                        idx[rest[1]] = j;
                        s += w * self.get(idx[0], idx[1], idx[2], idx[3]);
                    }
                }
                data[i * n + j] = s;
            }
        }
        Ok(Tensor2 { n, data })
    }

    pub fn congruence(&self, l: &Congruence) -> Result<Self> {
        check(self.n, l.dim())?;
        Ok(Self {
            n: self.n,
            data: transform(&self.data, self.n, 4, l),
        })
    }
}

/// Maximal relative defects returned by [`CurvTensor4::symmetry_defects`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetryDefects {
    pub skew_first_pair: f64,
    pub skew_last_pair: f64,
    pub pair_symmetry: f64,
    pub first_bianchi: f64,
}

impl SymmetryDefects {
    pub fn max(&self) -> f64 {
        self.skew_first_pair
            .max(self.skew_last_pair)
            .max(self.pair_symmetry)
            .max(self.first_bianchi)
    }
}

impl Tensor6 {
    const RANK: u32 = 6;

    #[inline]
    pub fn get(&self, idx: [usize; 6]) -> f64 {
        let n = self.n;
        let mut k = 0;
        for i in idx {
            k = k * n + i;
        }
        self.data[k]
    }

    pub fn congruence(&self, l: &Congruence) -> Result<Self> {
        check(self.n, l.dim())?;
        Ok(Self {
            n: self.n,
            data: transform(&self.data, self.n, 6, l),
        })
    }
}

dense_ops!(SymTensor2);
dense_ops!(Tensor2);
dense_ops!(CurvTensor4);
dense_ops!(Tensor6);

fn check(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Applies `L` to every slot of a rank-`rank` covariant array, one mode at a
/// time.
fn transform(data: &[f64], n: usize, rank: u32, l: &Congruence) -> Vec<f64> {
    let mut cur = data.to_vec();
    let mut next = vec![0.0; cur.len()];
    for mode in 0..rank {
        let stride = n.pow(rank - 1 - mode);
        let block = stride * n;
        for base in (0..cur.len()).step_by(block) {
            for inner in 0..stride {
                for a in 0..n {
                    let mut s = 0.0;
                    for i in 0..n {
                        s += l.entry(i, a) * cur[base + i * stride + inner];
                    }
                    next[base + a * stride + inner] = s;
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    cur
}
