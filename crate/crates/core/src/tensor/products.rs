//! Kulkarni–Nomizu products, Tachibana tensors and the derivation action of a
//! curvature tensor, all on full row-major component arrays.
//!
//! Both `Q(A, T)` and `B·T` are instances of one pattern: a family of
//! endomorphisms `M(x, y)` indexed by the two appended slots acts on every
//! slot of `T` as a derivation,
//!
//! ```text
//! out[a_1..a_k, x, y] = sum_i sum_m M[x, y, a_i, m] * T[a_1..m..a_k]   (m in slot i)
//! ```
//!
//! For `Q(A, T)` the kernel is `M[x,y,a,m] = A_xa δ_ym − A_ya δ_xm`; for `B·T`
//! it is `−B[x,y,a,d] g^{dm}`. With these choices `G·T = Q(g, T)` exactly.

use super::{CurvTensor4, DenseTensor, Frame, SymTensor2, Tensor6};
use crate::error::{Error, Result};

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        });
    }
    Ok(())
}

/// `E ∧ F` with `(E∧F)_abcd = E_ad F_bc + E_bc F_ad − E_ac F_bd − E_bd F_ac`.
pub fn kn_product(e: &SymTensor2, f: &SymTensor2) -> Result<CurvTensor4> {
    same_dim(e.dim(), f.dim())?;
    Ok(CurvTensor4::from_fn(e.dim(), |a, b, c, d| {
        e.get(a, d) * f.get(b, c) + e.get(b, c) * f.get(a, d)
            - e.get(a, c) * f.get(b, d)
            - e.get(b, d) * f.get(a, c)
    }))
}

/// `E ∧ T` for a `(0,4)` tensor `T`; the last two slots of `T` are carried
/// through unchanged as slots 5 and 6 of the result.
pub fn kn_wedge4(e: &SymTensor2, t: &CurvTensor4) -> Result<Tensor6> {
    same_dim(e.dim(), t.dim())?;
    let n = e.dim();
    let n2 = n * n;
    let ts = t.as_slice();
    // T(x, y, ·, ·) as a contiguous block of length n².
    let blk = |x: usize, y: usize| &ts[(x * n + y) * n2..(x * n + y + 1) * n2];
    let mut data = vec![0.0; n.pow(6)];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let (w1, w2, w3, w4) = (e.get(a, d), e.get(b, c), e.get(a, c), e.get(b, d));
                    if w1 == 0.0 && w2 == 0.0 && w3 == 0.0 && w4 == 0.0 {
                        continue;
                    }
                    let (t1, t2, t3, t4) = (blk(b, c), blk(a, d), blk(b, d), blk(a, c));
                    let off = (((a * n + b) * n + c) * n + d) * n2;
                    let out = &mut data[off..off + n2];
                    for k in 0..n2 {
                        out[k] = w1 * t1[k] + w2 * t2[k] - w3 * t3[k] - w4 * t4[k];
                    }
                }
            }
        }
    }
    Ok(Tensor6::from_components(n, data))
}

/// Applies an endomorphism family `kernel[x,y,a,m]` (row-major, `n⁴` entries)
/// to a rank-`k` array as a derivation; the output has rank `k + 2`.
fn derive(n: usize, k: u32, kernel: &[f64], t: &[f64]) -> Vec<f64> {
    let prefixes = n.pow(k);
    let n2 = n * n;
    let mut out = vec![0.0; prefixes * n2];
    let strides: Vec<usize> = (0..k).map(|i| n.pow(k - 1 - i)).collect();
    for p in 0..prefixes {
        let row = &mut out[p * n2..(p + 1) * n2];
        for &stride in &strides {
            let ai = (p / stride) % n;
            let base = p - ai * stride;
            for x in 0..n {
                for y in 0..n {
                    let kr = &kernel[((x * n + y) * n + ai) * n..((x * n + y) * n + ai + 1) * n];
                    let mut s = 0.0;
                    for (m, &w) in kr.iter().enumerate() {
                        if w != 0.0 {
                            s += w * t[base + m * stride];
                        }
                    }
                    row[x * n + y] += s;
                }
            }
        }
    }
    out
}

fn tachibana_kernel(a: &SymTensor2) -> Vec<f64> {
    let n = a.dim();
    let mut kernel = vec![0.0; n.pow(4)];
    for x in 0..n {
        for y in 0..n {
            for s in 0..n {
                let base = ((x * n + y) * n + s) * n;
                kernel[base + y] += a.get(x, s);
                kernel[base + x] -= a.get(y, s);
            }
        }
    }
    kernel
}

fn curvature_kernel(b: &CurvTensor4, frame: &Frame) -> Result<Vec<f64>> {
    let n = b.dim();
    frame.check_dim(n)?;
    let gi = frame.inverse_metric();
    let bs = b.as_slice();
    let mut kernel = vec![0.0; n.pow(4)];
    for row in 0..n.pow(3) {
        let src = &bs[row * n..(row + 1) * n];
        for m in 0..n {
            let mut s = 0.0;
            for (d, &v) in src.iter().enumerate() {
                s += v * gi.get(d, m);
            }
            kernel[row * n + m] = -s;
        }
    }
    Ok(kernel)
}

/// Tachibana tensor `Q(A, T)` of two symmetric `(0,2)` tensors.
pub fn tachibana2(a: &SymTensor2, t: &SymTensor2) -> Result<CurvTensor4> {
    same_dim(a.dim(), t.dim())?;
    let n = a.dim();
    let data = derive(n, 2, &tachibana_kernel(a), t.as_slice());
    Ok(CurvTensor4::from_components(n, data))
}

/// Tachibana tensor `Q(A, T)` with `T` of type `(0,4)`.
pub fn tachibana4(a: &SymTensor2, t: &CurvTensor4) -> Result<Tensor6> {
    same_dim(a.dim(), t.dim())?;
    let n = a.dim();
    let data = derive(n, 4, &tachibana_kernel(a), t.as_slice());
    Ok(Tensor6::from_components(n, data))
}

/// `B·T` for a symmetric `(0,2)` tensor `T` (e.g. `R·S`, `C·S`).
pub fn derivation_action2(b: &CurvTensor4, t: &SymTensor2, frame: &Frame) -> Result<CurvTensor4> {
    same_dim(b.dim(), t.dim())?;
    let n = b.dim();
    let data = derive(n, 2, &curvature_kernel(b, frame)?, t.as_slice());
    Ok(CurvTensor4::from_components(n, data))
}

/// `B·T` for a `(0,4)` tensor `T` (e.g. `R·R`, `C·R`, `R·C`, `C·C`).
pub fn derivation_action4(b: &CurvTensor4, t: &CurvTensor4, frame: &Frame) -> Result<Tensor6> {
    same_dim(b.dim(), t.dim())?;
    let n = b.dim();
    let data = derive(n, 4, &curvature_kernel(b, frame)?, t.as_slice());
    Ok(Tensor6::from_components(n, data))
}

/// `G = ½ g∧g`.
pub fn gauss_tensor(frame: &Frame) -> CurvTensor4 {
    let g = frame.metric();
    CurvTensor4::from_fn(g.dim(), |h, i, j, k| {
        g.get(h, k) * g.get(i, j) - g.get(h, j) * g.get(i, k)
    })
}

/// Weyl conformal tensor `C = R − g∧S/(n−2) + κ/((n−2)(n−1)) G`.
pub fn weyl(r: &CurvTensor4, s: &SymTensor2, kappa: f64, frame: &Frame) -> Result<CurvTensor4> {
    let n = r.dim();
    if n < 4 {
        return Err(Error::DimensionTooSmall {
            what: "Weyl tensor",
            required: 4,
            found: n,
        });
    }
    same_dim(n, s.dim())?;
    frame.check_dim(n)?;
    let nf = n as f64;
    let gs = kn_product(frame.metric(), s)?;
    let g4 = gauss_tensor(frame);
    let mut c = r.clone();
    let k = kappa / ((nf - 2.0) * (nf - 1.0));
    for ((v, a), b) in c.as_mut_slice().iter_mut().zip(gs.as_slice()).zip(g4.as_slice()) {
        *v += -a / (nf - 2.0) + k * b;
    }
    Ok(c)
}

/// `A^p` with `A^p(X,Y) = A^{p−1}(𝒜X, Y)`, i.e. `A g⁻¹ A g⁻¹ … A`.
pub fn mat_power(a: &SymTensor2, p: u32, frame: &Frame) -> Result<SymTensor2> {
    if p < 1 {
        return Err(Error::InvalidPower(p));
    }
    frame.check_dim(a.dim())?;
    let am = a.to_matrix();
    let op = frame.inverse_metric().to_matrix() * &am;
    let mut acc = am;
    for _ in 1..p {
        acc = &acc * &op;
    }
    Ok(SymTensor2::from_fn(a.dim(), |i, j| {
        0.5 * (acc[(i, j)] + acc[(j, i)])
    }))
}

/// `tr_g(A) = g^{ij} A_ij`.
pub fn trace(a: &SymTensor2, frame: &Frame) -> f64 {
    let gi = frame.inverse_metric();
    gi.as_slice()
        .iter()
        .zip(a.as_slice())
        .map(|(x, y)| x * y)
        .sum()
}
