//! Brute-force reference implementations used as independent oracles.
//!
//! Everything here goes through explicit endomorphisms: `X∧_A Y` and
//! `R(X,Y)` are assembled as `n×n` matrices and applied slot by slot, so the
//! library's fused kernels are never reused.

#![allow(dead_code)]

use curvlab::tensor::{CurvTensor4, DenseTensor, SymTensor2, Tensor6};
use nalgebra::DMatrix;

/// Row-major multi-index iteration over `n^k` components.
fn multi_index(flat: usize, n: usize, k: usize) -> Vec<usize> {
    let mut idx = vec![0; k];
    let mut r = flat;
    for i in (0..k).rev() {
        idx[i] = r % n;
        r /= n;
    }
    idx
}

fn flat_index(idx: &[usize], n: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

/// `(X ∧_A Y)` as a matrix acting on column vectors: `Z ↦ A(Y,Z)X − A(X,Z)Y`.
fn wedge_endo(a: &SymTensor2, x: usize, y: usize) -> DMatrix<f64> {
    let n = a.dim();
    let mut d = DMatrix::zeros(n, n);
    for z in 0..n {
        d[(x, z)] += a.get(y, z);
        d[(y, z)] -= a.get(x, z);
    }
    d
}

/// `R(X,Y)` as a matrix: `(R(X,Y))^m_a = R_{xyad} g^{dm}`.
fn curvature_endo(b: &CurvTensor4, g_inv: &DMatrix<f64>, x: usize, y: usize) -> DMatrix<f64> {
    let n = b.dim();
    DMatrix::from_fn(n, n, |m, a| (0..n).map(|d| b.get(x, y, a, d) * g_inv[(d, m)]).sum())
}

/// `−Σᵢ T(X₁, …, D Xᵢ, …, X_k)` with appended slots `(x, y)` selecting `D`.
fn derivation_oracle(
    t: &[f64],
    n: usize,
    k: usize,
    endo: impl Fn(usize, usize) -> DMatrix<f64>,
) -> Vec<f64> {
    let total = n.pow(k as u32 + 2);
    let mut out = vec![0.0; total];
    let endos: Vec<Vec<DMatrix<f64>>> =
        (0..n).map(|x| (0..n).map(|y| endo(x, y)).collect()).collect();
    for (flat, slot) in out.iter_mut().enumerate() {
        let idx = multi_index(flat, n, k + 2);
        let (x, y) = (idx[k], idx[k + 1]);
        let d = &endos[x][y];
        let mut acc = 0.0;
        for i in 0..k {
            let mut j = idx[..k].to_vec();
            for r in 0..n {
                j[i] = r;
                acc -= d[(r, idx[i])] * t[flat_index(&j, n)];
            }
        }
        *slot = acc;
    }
    out
}

pub fn tachibana_oracle2(a: &SymTensor2, t: &SymTensor2) -> CurvTensor4 {
    let n = a.dim();
    let data = derivation_oracle(t.as_slice(), n, 2, |x, y| wedge_endo(a, x, y));
    CurvTensor4::from_components(n, data)
}

pub fn tachibana_oracle4(a: &SymTensor2, t: &CurvTensor4) -> Tensor6 {
    let n = a.dim();
    let data = derivation_oracle(t.as_slice(), n, 4, |x, y| wedge_endo(a, x, y));
    Tensor6::from_components(n, data)
}

pub fn action_oracle2(b: &CurvTensor4, t: &SymTensor2, g: &SymTensor2) -> CurvTensor4 {
    let n = b.dim();
    let gi = g.to_matrix().try_inverse().expect("non-degenerate metric");
    let data = derivation_oracle(t.as_slice(), n, 2, |x, y| curvature_endo(b, &gi, x, y));
    CurvTensor4::from_components(n, data)
}

pub fn action_oracle4(b: &CurvTensor4, t: &CurvTensor4, g: &SymTensor2) -> Tensor6 {
    let n = b.dim();
    let gi = g.to_matrix().try_inverse().expect("non-degenerate metric");
    let data = derivation_oracle(t.as_slice(), n, 4, |x, y| curvature_endo(b, &gi, x, y));
    Tensor6::from_components(n, data)
}

/// Kulkarni–Nomizu product from the bilinear-form definition
/// `(E∧F)(X₁,X₂,X₃,X₄) = E(X₁,X₄)F(X₂,X₃) + E(X₂,X₃)F(X₁,X₄) − E(X₁,X₃)F(X₂,X₄) − E(X₂,X₄)F(X₁,X₃)`.
pub fn kn_oracle(e: &SymTensor2, f: &SymTensor2) -> CurvTensor4 {
    let n = e.dim();
    let mut data = vec![0.0; n.pow(4)];
    for (flat, v) in data.iter_mut().enumerate() {
        let i = multi_index(flat, n, 4);
        let pair = |m: &SymTensor2, p: usize, q: usize| m.get(i[p], i[q]);
        *v = pair(e, 0, 3) * pair(f, 1, 2) + pair(e, 1, 2) * pair(f, 0, 3)
            - pair(e, 0, 2) * pair(f, 1, 3)
            - pair(e, 1, 3) * pair(f, 0, 2);
    }
    CurvTensor4::from_components(n, data)
}

/// `E∧T` for a `(0,4)` tensor `T`, pairing the first two slots of `T` with
/// `E` and passing its last two through.
pub fn kn_wedge_oracle(e: &SymTensor2, t: &CurvTensor4) -> Tensor6 {
    let n = e.dim();
    let mut data = vec![0.0; n.pow(6)];
    for (flat, v) in data.iter_mut().enumerate() {
        let i = multi_index(flat, n, 6);
        let tt = |p: usize, q: usize| t.get(i[p], i[q], i[4], i[5]);
        *v = e.get(i[0], i[3]) * tt(1, 2) + e.get(i[1], i[2]) * tt(0, 3)
            - e.get(i[0], i[2]) * tt(1, 3)
            - e.get(i[1], i[3]) * tt(0, 2);
    }
    Tensor6::from_components(n, data)
}

/// `‖Σ cᵢ Tᵢ‖ / Σ |cᵢ|‖Tᵢ‖`: relative size of a relation that should vanish.
pub fn vanishing_residual<T: DenseTensor>(terms: &[(f64, &T)]) -> f64 {
    let n = terms[0].1.dim();
    let mut acc = vec![0.0; terms[0].1.as_slice().len()];
    let mut scale = 0.0;
    for (c, t) in terms {
        assert_eq!(t.dim(), n);
        for (a, x) in acc.iter_mut().zip(t.as_slice()) {
            *a += c * x;
        }
        scale += c.abs() * t.norm();
    }
    let num = acc.iter().map(|x| x * x).sum::<f64>().sqrt();
    if scale == 0.0 {
        0.0
    } else {
        num / scale
    }
}

/// `‖a − b‖ / max(‖a‖, ‖b‖)`, zero when both vanish.
pub fn relative_diff<T: DenseTensor>(a: &T, b: &T) -> f64 {
    let num = a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt();
    let den = a.norm().max(b.norm());
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

pub fn rel_scalar(a: f64, b: f64) -> f64 {
    let den = a.abs().max(b.abs());
    if den == 0.0 {
        0.0
    } else {
        (a - b).abs() / den
    }
}

/// Prints one line per acceptance criterion and returns whether it passed.
pub fn report(id: &str, what: &str, ok: bool, detail: String) -> bool {
    println!(
        "[{}] criterion {id}: {what} :: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    ok
}
