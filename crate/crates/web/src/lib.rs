//! Browser bindings. Every export takes plain numbers or JSON text and
//! returns JSON text; failures come back as `{"error": "..."}` so that the
//! page never has to catch.

use curvlab::catalog::{self, clifford_threshold};
use curvlab::classify::classify_with;
use curvlab::derived::Derived;
use curvlab::identities::run_suite_with;
use curvlab::model::{build_point, tau, Curvature, PrincipalSpectrum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const TOL: f64 = 1e-9;
/// Dense sixth-order tensors grow as `n⁶`; keep the page responsive.
const MAX_DIM: usize = 7;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// Einstein / Roter decisions along the Clifford family `M_{p,n−p}(c, t)`.
#[wasm_bindgen]
pub fn clifford_sweep(p: usize, n: usize, c: f64, samples: usize) -> String {
    respond(sweep(p, n, c, samples))
}

fn sweep(p: usize, n: usize, c: f64, samples: usize) -> Result<Value, String> {
    if n > MAX_DIM {
        return Err(format!("n is limited to {MAX_DIM} here"));
    }
    let samples = samples.clamp(2, 400);
    let lo = 0.02;
    let hi = std::f64::consts::FRAC_PI_2 - 0.02;
    let mut points = Vec::with_capacity(samples);
    for k in 0..samples {
        let t = lo + (hi - lo) * k as f64 / (samples - 1) as f64;
        let spec = catalog::clifford(p, n, c, t).map_err(|e| e.to_string())?;
        let point = build_point(&spec).map_err(|e| e.to_string())?;
        let d = Derived::new(&point);
        let class = classify_with(&point, &d, TOL);
        points.push(json!({
            "t": t,
            "kappa": point.kappa,
            "einstein": class.einstein.value,
            "einstein_residual": class.einstein.residual,
            "roter": class.roter.value,
            "phi": class.roter_coeffs().ok().map(|r| r.0),
            "quasi_einstein": class.quasi_einstein.value,
        }));
    }
    Ok(json!({ "threshold": clifford_threshold(p, n), "points": points }))
}

/// `τ` over a `size × size` grid of `(λ₁, λ₂) ∈ [−extent, extent]²` for the
/// spectrum `λ₀ (×1), λ₁ (×n₁), λ₂ (×n₂)`; `null` where two curvatures meet.
#[wasm_bindgen]
pub fn tau_grid(n1: usize, n2: usize, lambda0: f64, c: f64, extent: f64, size: usize) -> String {
    respond(grid(n1, n2, lambda0, c, extent, size))
}

fn grid(n1: usize, n2: usize, lambda0: f64, c: f64, extent: f64, size: usize) -> Result<Value, String> {
    if n1 == 0 || n2 == 0 {
        return Err("multiplicities must be positive".into());
    }
    if !(extent > 0.0) {
        return Err("extent must be positive".into());
    }
    let size = size.clamp(2, 256);
    let step = 2.0 * extent / (size - 1) as f64;
    let mut rows = Vec::with_capacity(size);
    for i in 0..size {
        let l2 = extent - i as f64 * step;
        let row: Vec<Option<f64>> = (0..size)
            .map(|j| {
                let l1 = -extent + j as f64 * step;
                let spec = PrincipalSpectrum::riemannian(c, &[(lambda0, 1), (l1, n1), (l2, n2)]).ok()?;
                if spec.distinct().len() < 3 {
                    return None;
                }
                tau(&spec).ok()
            })
            .collect();
        rows.push(row);
    }
    Ok(json!({ "extent": extent, "size": size, "rows": rows }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Input {
    dimension: usize,
    ambient_curvature: f64,
    epsilon: f64,
    #[serde(default)]
    signature: Option<Vec<f64>>,
    principal_curvatures: Vec<Curvature>,
    #[serde(default)]
    #[allow(dead_code)]
    label: Option<String>,
}

#[derive(Serialize)]
struct Failure<'a> {
    id: &'a str,
    residual: f64,
}

/// Classification and identity summary for one spectrum, given in the same
/// JSON layout as the command-line tool's spectrum files.
#[wasm_bindgen]
pub fn analyze(spectrum_json: &str) -> String {
    respond(analyze_value(spectrum_json))
}

fn analyze_value(text: &str) -> Result<Value, String> {
    let input: Input = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if input.dimension > MAX_DIM {
        return Err(format!("dimension is limited to {MAX_DIM} here"));
    }
    let spec = PrincipalSpectrum::new(
        input.dimension,
        input.ambient_curvature,
        input.epsilon,
        input.signature,
        input.principal_curvatures,
    )
    .map_err(|e| e.to_string())?;
    let point = build_point(&spec).map_err(|e| e.to_string())?;
    let d = Derived::new(&point);
    let suite = run_suite_with(&d, TOL);
    let class = classify_with(&point, &d, TOL);
    let flags: serde_json::Map<String, Value> = class
        .flags()
        .into_iter()
        .map(|(k, f)| (k.to_string(), Value::Bool(f.value)))
        .collect();
    let failures: Vec<Failure> = suite
        .failures()
        .map(|r| Failure {
            id: &r.identity_id,
            residual: r.residual,
        })
        .collect();
    let applicable = suite.reports.iter().filter(|r| r.applicable).count();
    Ok(json!({
        "flags": flags,
        "roter": class.roter_coeffs().ok().map(|(phi, mu, eta)| json!({"phi": phi, "mu": mu, "eta": eta})),
        "l_r": class.l_r,
        "l_s": class.l_s,
        "scalars": {
            "kappa": point.kappa,
            "trace_h": point.tr_h,
            "tau": point.in_u_h.then_some(point.tau),
        },
        "identities": {
            "applicable": applicable,
            "total": suite.reports.len(),
            "passed": suite.passed,
            "failures": failures,
        },
    }))
}
