use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// One principal curvature with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Curvature {
    pub value: f64,
    pub multiplicity: usize,
}

impl Curvature {
    pub fn new(value: f64, multiplicity: usize) -> Self {
        Self {
            value,
            multiplicity,
        }
    }
}

/// Pointwise input for a hypersurface `M^n` in a space form `N^{n+1}_s(c)`.
///
/// `epsilon` is the sign of the unit normal and `signature` holds the squared
/// norms of the principal frame vectors, paired positionally with the
/// expanded curvature list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrincipalSpectrum {
    n: usize,
    c: f64,
    epsilon: f64,
    signature: Vec<f64>,
    curvatures: Vec<Curvature>,
}

/// Relative gap below which two principal curvatures are merged when
/// counting distinct values.
const MERGE_TOL: f64 = 1e-12;

impl PrincipalSpectrum {
    pub fn new(
        n: usize,
        c: f64,
        epsilon: f64,
        signature: Option<Vec<f64>>,
        curvatures: Vec<Curvature>,
    ) -> Result<Self> {
        if n < 3 {
            return Err(Error::DimensionTooSmall {
                what: "hypersurface",
                required: 3,
                found: n,
            });
        }
        if epsilon != 1.0 && epsilon != -1.0 {
            return Err(Error::InvalidSpectrum(format!(
                "epsilon must be +1 or -1, got {epsilon}"
            )));
        }
        if !c.is_finite() {
            return Err(Error::InvalidSpectrum(
                "ambient curvature must be finite".into(),
            ));
        }
        if curvatures.is_empty() {
            return Err(Error::InvalidSpectrum(
                "at least one principal curvature is required".into(),
            ));
        }
        for (i, k) in curvatures.iter().enumerate() {
            if k.multiplicity == 0 {
                return Err(Error::InvalidSpectrum(format!(
                    "principal_curvatures[{i}]: multiplicity must be positive"
                )));
            }
            if !k.value.is_finite() {
                return Err(Error::InvalidSpectrum(format!(
                    "principal_curvatures[{i}]: value must be finite"
                )));
            }
        }
        let total: usize = curvatures.iter().map(|k| k.multiplicity).sum();
        if total != n {
            return Err(Error::InvalidSpectrum(format!(
                "multiplicities sum to {total}, dimension is {n}"
            )));
        }
        let signature = signature.unwrap_or_else(|| vec![1.0; n]);
        if signature.len() != n {
            return Err(Error::InvalidSpectrum(format!(
                "signature has {} entries, dimension is {n}",
                signature.len()
            )));
        }
        if let Some(i) = signature.iter().position(|s| *s != 1.0 && *s != -1.0) {
            return Err(Error::InvalidSpectrum(format!(
                "signature[{i}] must be +1 or -1"
            )));
        }
        Ok(Self {
            n,
            c,
            epsilon,
            signature,
            curvatures,
        })
    }

    /// Riemannian hypersurface with `ε = +1`.
    pub fn riemannian(c: f64, curvatures: &[(f64, usize)]) -> Result<Self> {
        let n = curvatures.iter().map(|k| k.1).sum();
        let list = curvatures.iter().map(|&(v, m)| Curvature::new(v, m)).collect();
        Self::new(n, c, 1.0, None, list)
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Result<Self> {
        if epsilon != 1.0 && epsilon != -1.0 {
            return Err(Error::InvalidSpectrum(format!(
                "epsilon must be +1 or -1, got {epsilon}"
            )));
        }
        self.epsilon = epsilon;
        Ok(self)
    }

    pub fn with_signature(self, signature: Vec<f64>) -> Result<Self> {
        Self::new(self.n, self.c, self.epsilon, Some(signature), self.curvatures)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ambient_curvature(&self) -> f64 {
        self.c
    }

    /// Scalar curvature of the ambient space, `n(n+1)c`.
    pub fn ambient_scalar(&self) -> f64 {
        let n = self.n as f64;
        n * (n + 1.0) * self.c
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn signature(&self) -> &[f64] {
        &self.signature
    }

    pub fn curvatures(&self) -> &[Curvature] {
        &self.curvatures
    }

    pub fn is_riemannian(&self) -> bool {
        self.signature.iter().all(|s| *s > 0.0)
    }

    /// Curvature list repeated by multiplicity, in input order.
    pub fn expanded(&self) -> Vec<f64> {
        self.curvatures
            .iter()
            .flat_map(|k| std::iter::repeat(k.value).take(k.multiplicity))
            .collect()
    }

    /// Distinct curvatures with accumulated multiplicities, in order of first
    /// appearance. Values closer than `1e-12` times the spectral radius are
    /// merged.
    pub fn distinct(&self) -> Vec<Curvature> {
        let scale = self.spectral_radius();
        let mut out: Vec<Curvature> = Vec::new();
        for k in &self.curvatures {
            match out
                .iter_mut()
                .find(|d| (d.value - k.value).abs() <= MERGE_TOL * scale)
            {
                Some(d) => d.multiplicity += k.multiplicity,
                None => out.push(*k),
            }
        }
        out
    }

    pub fn spectral_radius(&self) -> f64 {
        self.curvatures
            .iter()
            .fold(0.0, |m: f64, k| m.max(k.value.abs()))
    }

    /// Mean-curvature trace `tr(H) = Σ mᵢ λᵢ`.
    pub fn trace_h(&self) -> f64 {
        self.curvatures
            .iter()
            .map(|k| k.multiplicity as f64 * k.value)
            .sum()
    }

    /// `tr(H²) = Σ mᵢ λᵢ²`.
    pub fn trace_h2(&self) -> f64 {
        self.curvatures
            .iter()
            .map(|k| k.multiplicity as f64 * k.value * k.value)
            .sum()
    }

    /// `(λ, c) → (sλ, s²c)`; the Gauss equation is homogeneous under this.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        let curvatures = self
            .curvatures
            .iter()
            .map(|k| Curvature::new(s * k.value, k.multiplicity))
            .collect();
        Self::new(
            self.n,
            s * s * self.c,
            self.epsilon,
            Some(self.signature.clone()),
            curvatures,
        )
    }
}
