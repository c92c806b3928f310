//! Seeded random instances for property checks and the CLI's frame test.

use crate::model::{Curvature, PrincipalSpectrum};
use crate::tensor::{kn_product, Combination, Congruence, CurvTensor4, SymTensor2};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Symmetric tensor with entries uniform in `[−1, 1]`.
pub fn symmetric(rng: &mut impl Rng, n: usize) -> SymTensor2 {
    SymTensor2::from_fn(n, |_, _| rng.random_range(-1.0..=1.0))
}

/// Generalized curvature tensor `E₁∧F₁ + E₂∧F₂` with random symmetric
/// factors.
pub fn generalized_curvature(rng: &mut impl Rng, n: usize) -> CurvTensor4 {
    let mut acc = Combination::zeros(n);
    for _ in 0..2 {
        let (e, f) = (symmetric(rng, n), symmetric(rng, n));
        acc = acc.plus(1.0, &kn_product(&e, &f).expect("same size"));
    }
    acc.into_sum()
}

/// Random multiplicities `m₀ + … + m_{k−1} = n`, each at least one.
fn multiplicities(rng: &mut impl Rng, n: usize, k: usize) -> Vec<usize> {
    assert!(k >= 1 && k <= n, "need 1 <= k <= n");
    let mut m = vec![1; k];
    for _ in 0..n - k {
        let i = rng.random_range(0..k);
        m[i] += 1;
    }
    m
}

/// `k` values in `[−3, 3]`, pairwise separated by at least `0.25`.
fn separated_values(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..k).map(|_| rng.random_range(-3.0..=3.0)).collect();
        let ok = (0..k).all(|i| (i + 1..k).all(|j| (v[i] - v[j]).abs() >= 0.25));
        if ok {
            return v;
        }
    }
}

/// Riemannian spectrum with exactly three distinct curvatures and ambient
/// curvature uniform in `[−1, 1]`.
pub fn three_curvature(rng: &mut impl Rng, n: usize) -> PrincipalSpectrum {
    let v = separated_values(rng, 3);
    let m = multiplicities(rng, n, 3);
    let c = rng.random_range(-1.0..=1.0);
    let curv: Vec<(f64, usize)> = v.into_iter().zip(m).collect();
    PrincipalSpectrum::riemannian(c, &curv).expect("valid by construction")
}

/// Spectrum with `k` distinct curvatures, random `ε`, random signature and
/// ambient curvature uniform in `[−1, 1]`.
pub fn semi_riemannian(rng: &mut impl Rng, n: usize, k: usize) -> PrincipalSpectrum {
    let v = separated_values(rng, k);
    let m = multiplicities(rng, n, k);
    let c = rng.random_range(-1.0..=1.0);
    let eps = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let sig: Vec<f64> = (0..n)
        .map(|_| if rng.random_bool(0.3) { -1.0 } else { 1.0 })
        .collect();
    let curv = v
        .into_iter()
        .zip(m)
        .map(|(val, mult)| Curvature::new(val, mult))
        .collect();
    PrincipalSpectrum::new(n, c, eps, Some(sig), curv).expect("valid by construction")
}

/// Well-conditioned change of basis `L = I + 0.3·N` with `N` uniform in
/// `[−1, 1]`, resampled until `cond(L) < 10`.
pub fn congruence(rng: &mut impl Rng, n: usize) -> Congruence {
    loop {
        let noise = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..=1.0));
        let l = DMatrix::identity(n, n) + noise * 0.3;
        if let Ok(cand) = Congruence::new(l) {
            if cand.condition_number() < 10.0 {
                return cand;
            }
        }
    }
}
