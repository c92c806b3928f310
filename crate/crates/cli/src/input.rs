//! Spectrum files: a JSON object or a list of objects.
//!
//! ```json
//! {
//!   "label": "austere",
//!   "dimension": 6,
//!   "ambient_curvature": 1.0,
//!   "epsilon": 1,
//!   "principal_curvatures": [
//!     {"value": 0.0, "multiplicity": 2},
//!     {"value": 1.7320508075688772, "multiplicity": 2},
//!     {"value": -1.7320508075688772, "multiplicity": 2}
//!   ],
//!   "expected": {"tau": 0.0, "ricci_pseudosymmetric": true}
//! }
//! ```
//!
//! Diagnostics carry the line and column of the offending field.

use curvlab::catalog::{self, Expectation, ExpectedValue, Provenance};
use curvlab::model::{Curvature, PrincipalSpectrum};
use serde::Deserialize;
use serde_json::value::RawValue;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurvature {
    value: f64,
    multiplicity: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpectrum {
    dimension: usize,
    ambient_curvature: f64,
    epsilon: f64,
    #[serde(default)]
    signature: Option<Vec<f64>>,
    principal_curvatures: Vec<RawCurvature>,
    #[serde(default)]
    label: Option<String>,
    /// Inline cross-checks, keyed like catalog expectations.
    #[serde(default)]
    expected: BTreeMap<String, ExpectedValue>,
}

#[derive(Clone, Debug)]
pub struct SpectrumInput {
    pub label: Option<String>,
    pub spectrum: PrincipalSpectrum,
    pub expected: Vec<Expectation>,
}

/// A semantic error and the key path it concerns, e.g. `["expected", "tau"]`.
struct FieldError {
    field: Vec<String>,
    message: String,
}

fn at(field: &[&str], message: String) -> FieldError {
    FieldError {
        field: field.iter().map(|s| s.to_string()).collect(),
        message,
    }
}

fn validate(raw: RawSpectrum) -> Result<SpectrumInput, FieldError> {
    let total: usize = raw.principal_curvatures.iter().map(|c| c.multiplicity).sum();
    if total != raw.dimension {
        return Err(at(
            &["principal_curvatures"],
            format!("multiplicities sum to {total}, but `dimension` is {}", raw.dimension),
        ));
    }
    if raw.principal_curvatures.iter().any(|c| c.multiplicity == 0) {
        return Err(at(&["multiplicity"], "multiplicities must be positive".into()));
    }
    if raw.epsilon != 1.0 && raw.epsilon != -1.0 {
        return Err(at(&["epsilon"], format!("must be 1 or -1, got {}", raw.epsilon)));
    }
    if let Some(sig) = &raw.signature {
        if sig.len() != raw.dimension {
            return Err(at(
                &["signature"],
                format!("has {} entries, but `dimension` is {}", sig.len(), raw.dimension),
            ));
        }
        if sig.iter().any(|&s| s != 1.0 && s != -1.0) {
            return Err(at(&["signature"], "entries must be 1 or -1".into()));
        }
    }
    let curvatures = raw
        .principal_curvatures
        .iter()
        .map(|c| Curvature::new(c.value, c.multiplicity))
        .collect();
    let spectrum = PrincipalSpectrum::new(
        raw.dimension,
        raw.ambient_curvature,
        raw.epsilon,
        raw.signature,
        curvatures,
    )
    .map_err(|e| at(&["dimension"], format!("invalid spectrum: {e}")))?;
    let expected = raw
        .expected
        .iter()
        .map(|(k, v)| {
            catalog::expectation(&spectrum, k, *v, Provenance::Trivial)
                .map_err(|e| at(&["expected", k], e.to_string()))
        })
        .collect::<Result<_, _>>()?;
    Ok(SpectrumInput {
        label: raw.label,
        spectrum,
        expected,
    })
}

#[derive(Debug)]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// 1-based line and column of byte `offset`.
fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

/// Offset of the quoted key path inside `record`, falling back to its start.
fn locate(record: &str, field: &[String]) -> usize {
    let mut from = 0;
    for key in field {
        match record[from..].find(&format!("\"{key}\"")) {
            Some(i) => from += i,
            None => break,
        }
    }
    from
}

fn strip_position(msg: &str) -> &str {
    msg.rsplit_once(" at line ").map_or(msg, |(m, _)| m)
}

pub fn parse(text: &str, path: &str) -> Result<Vec<SpectrumInput>, InputError> {
    let fail = |offset: usize, message: String| {
        let (line, col) = position(text, offset);
        InputError {
            path: format!("{path}:{line}:{col}"),
            message,
        }
    };
    let records: Vec<&str> = if text.trim_start().starts_with('[') {
        let list: Vec<&RawValue> = serde_json::from_str(text).map_err(|e| InputError {
            path: format!("{path}:{}:{}", e.line(), e.column()),
            message: strip_position(&e.to_string()).to_string(),
        })?;
        list.into_iter().map(RawValue::get).collect()
    } else {
        vec![text]
    };
    if records.is_empty() {
        return Err(fail(0, "the file lists no spectra".into()));
    }
    records
        .into_iter()
        .map(|record| {
            let base = record.as_ptr() as usize - text.as_ptr() as usize;
            let raw: RawSpectrum = serde_json::from_str(record).map_err(|e| {
                // translate the record-relative position
                let (l0, c0) = position(text, base);
                let (line, col) = if e.line() <= 1 {
                    (l0, c0 + e.column().saturating_sub(1))
                } else {
                    (l0 + e.line() - 1, e.column())
                };
                InputError {
                    path: format!("{path}:{line}:{col}"),
                    message: strip_position(&e.to_string()).to_string(),
                }
            })?;
            validate(raw).map_err(|e| {
                fail(
                    base + locate(record, &e.field),
                    format!("field `{}`: {}", e.field.join("."), e.message),
                )
            })
        })
        .collect()
}

pub fn read(path: &Path) -> Result<Vec<SpectrumInput>, InputError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| InputError {
        path: shown.clone(),
        message: e.to_string(),
    })?;
    parse(&text, &shown)
}
