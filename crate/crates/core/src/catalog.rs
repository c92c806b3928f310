//! Named constructors for worked examples, each carrying the properties the
//! example is known to have.
//!
//! Expected values are tagged with where they come from: a closed form or
//! claim stated for that example ([`Provenance::Published`]), a value
//! computed here independently of the code under test
//! ([`Provenance::Derived`]), or a degenerate fact ([`Provenance::Trivial`]).

use crate::classify::ClassificationReport;
use crate::error::{Error, Result};
use crate::identities::SuiteReport;
use crate::model::{PointGeometry, PrincipalSpectrum};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

/// Distance from the Einstein threshold of a Clifford point below which the
/// `einstein` flag is not asserted either way.
pub const THRESHOLD_BAND: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Published,
    Derived,
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExpectedValue {
    Flag(bool),
    Value(f64),
}

/// One expected property.
///
/// Keys: a class name from [`crate::classify::CLASS_NAMES`]; `suite` (every
/// applicable identity passes); `identity:<id>` (that identity is applicable
/// and passes); or a scalar — `tau`, `rho`, `rho0`, `rho1`, `kappa`,
/// `ricci_<j>` (Ricci eigenvalue along the `j`-th distinct curvature),
/// `beta1`…`beta6`, `mu`, `l_r`, `l_s`, `roter_phi`, `partial_lambda`,
/// `partial_mu`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    pub key: String,
    pub value: ExpectedValue,
    pub provenance: Provenance,
    /// Magnitude used in place of `|expected|` when that is smaller, so that
    /// expected zeros are compared at the right scale.
    pub scale: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub range: &'static str,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Builder {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<(String, f64)>,
    pub spectrum: PrincipalSpectrum,
    pub expected: Vec<Expectation>,
    pub notes: Vec<String>,
}

macro_rules! params {
    ($($n:literal : $r:literal),* $(,)?) => {
        &[$(ParamSpec { name: $n, range: $r }),*]
    };
}

pub const CATALOG: &[Builder] = &[
    Builder {
        name: "clifford",
        summary: "Clifford hypersurface M_{p,n-p}(c,t): √c·cot t (×p), −√c·tan t (×(n−p))",
        params: params!["p": "1 <= p <= n-1", "n": "n >= 3", "c": "c > 0", "t": "0 < t < pi/2"],
    },
    Builder {
        name: "austere",
        summary: "austere point: 0 (×(n−2p)), λ (×p), −λ (×p)",
        params: params!["n": "n >= 3", "p": "1 <= p < n/2", "lambda": "lambda != 0", "c": "real"],
    },
    Builder {
        name: "cartan",
        summary: "Cartan-type austere point austere(3p, p, √(3c), c)",
        params: params!["p": "p >= 1", "c": "c > 0"],
    },
    Builder {
        name: "type_two",
        summary: "λ₀, λ₁, 0 (×(n−2))",
        params: params![
            "n": "n >= 4",
            "lambda0": "lambda0 != 0",
            "lambda1": "lambda1 != 0",
            "c": "real",
        ],
    },
    Builder {
        name: "two_quasi_umbilical",
        summary: "0, −(n−2)λ, λ (×(n−2)) in flat ambient space",
        params: params!["n": "n >= 4", "lambda": "lambda != 0"],
    },
    Builder {
        name: "three_curvature",
        summary: "λ₀ (×1), λ₁ (×n₁), λ₂ (×n₂)",
        params: params![
            "n": "n = 1 + n1 + n2",
            "lambda0": "distinct",
            "lambda1": "distinct",
            "lambda2": "distinct",
            "n1": "n1 >= 1",
            "n2": "n2 >= 1",
            "c": "real",
        ],
    },
];

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn as_count(name: &str, v: f64) -> Result<usize> {
    if v.fract() != 0.0 || v < 0.0 || !v.is_finite() {
        return Err(invalid(format!("{name} must be a non-negative integer, got {v}")));
    }
    Ok(v as usize)
}

/// Einstein threshold `arctan √((p−1)/(n−p−1))` of the Clifford family.
pub fn clifford_threshold(p: usize, n: usize) -> f64 {
    if n - p <= 1 {
        return FRAC_PI_2;
    }
    ((p as f64 - 1.0) / (n as f64 - p as f64 - 1.0)).sqrt().atan()
}

pub fn clifford(p: usize, n: usize, c: f64, t: f64) -> Result<PrincipalSpectrum> {
    if !(c > 0.0) {
        return Err(invalid(format!("clifford needs c > 0, got {c}")));
    }
    if !(t > 0.0 && t < FRAC_PI_2) {
        return Err(invalid(format!("clifford needs 0 < t < pi/2, got {t}")));
    }
    if p < 1 || p + 1 > n {
        return Err(invalid(format!("clifford needs 1 <= p <= n-1, got p = {p}, n = {n}")));
    }
    let r = c.sqrt();
    PrincipalSpectrum::riemannian(c, &[(r / t.tan(), p), (-r * t.tan(), n - p)])
}

pub fn austere(n: usize, p: usize, lambda: f64, c: f64) -> Result<PrincipalSpectrum> {
    if p < 1 || 2 * p >= n {
        return Err(invalid(format!("austere needs 1 <= p < n/2, got p = {p}, n = {n}")));
    }
    if lambda == 0.0 {
        return Err(invalid("austere needs lambda != 0"));
    }
    PrincipalSpectrum::riemannian(c, &[(0.0, n - 2 * p), (lambda, p), (-lambda, p)])
}

pub fn cartan(p: usize, c: f64) -> Result<PrincipalSpectrum> {
    if !(c > 0.0) {
        return Err(invalid(format!("cartan needs c > 0, got {c}")));
    }
    austere(3 * p, p, (3.0 * c).sqrt(), c)
}

pub fn type_two(n: usize, lambda0: f64, lambda1: f64, c: f64) -> Result<PrincipalSpectrum> {
    if n < 4 {
        return Err(invalid(format!("type_two needs n >= 4, got {n}")));
    }
    if lambda0 == 0.0 || lambda1 == 0.0 {
        return Err(invalid("type_two needs non-zero lambda0 and lambda1"));
    }
    PrincipalSpectrum::riemannian(c, &[(lambda0, 1), (lambda1, 1), (0.0, n - 2)])
}

pub fn two_quasi_umbilical(n: usize, lambda: f64) -> Result<PrincipalSpectrum> {
    if n < 4 {
        return Err(invalid(format!("two_quasi_umbilical needs n >= 4, got {n}")));
    }
    if lambda == 0.0 {
        return Err(invalid("two_quasi_umbilical needs lambda != 0"));
    }
    let m = n as f64;
    PrincipalSpectrum::riemannian(0.0, &[(0.0, 1), (-(m - 2.0) * lambda, 1), (lambda, n - 2)])
}

pub fn three_curvature(
    n: usize,
    lambda0: f64,
    lambda1: f64,
    lambda2: f64,
    n1: usize,
    n2: usize,
    c: f64,
) -> Result<PrincipalSpectrum> {
    if 1 + n1 + n2 != n || n1 == 0 || n2 == 0 {
        return Err(invalid(format!(
            "three_curvature needs n = 1 + n1 + n2 with n1, n2 >= 1, got {n}, {n1}, {n2}"
        )));
    }
    if lambda0 == lambda1 || lambda0 == lambda2 || lambda1 == lambda2 {
        return Err(invalid("three_curvature needs three distinct curvatures"));
    }
    PrincipalSpectrum::riemannian(c, &[(lambda0, 1), (lambda1, n1), (lambda2, n2)])
}

/// `(|trH| + max|λ| + √|c|)^degree`: the size of a curvature quantity of the
/// given polynomial degree in `H`.
fn magnitude(spec: &PrincipalSpectrum, degree: i32) -> f64 {
    let base = spec.trace_h().abs()
        + spec.spectral_radius()
        + spec.ambient_curvature().abs().sqrt();
    base.powi(degree)
}

/// Polynomial degree in `H` of a scalar expectation key; `None` for flag
/// keys and unknown names.
fn key_degree(key: &str) -> Option<i32> {
    Some(match key {
        "beta1" => 1,
        "rho1" | "kappa" | "mu" | "l_r" | "l_s" | "partial_lambda" | "beta2" | "beta5"
        | "beta6" => 2,
        "tau" | "rho" | "beta3" | "beta4" => 3,
        "rho0" | "partial_mu" => 4,
        "roter_phi" => -2,
        k if k.strip_prefix("ricci_").is_some_and(|j| j.parse::<usize>().is_ok()) => 2,
        _ => return None,
    })
}

fn is_flag_key(key: &str) -> bool {
    key == "suite"
        || crate::classify::CLASS_NAMES.contains(&key)
        || key
            .strip_prefix("identity:")
            .is_some_and(|id| crate::identities::IDENTITY_IDS.contains(&id))
}

/// Validates a user-supplied expectation and attaches the comparison scale
/// appropriate to its key.
pub fn expectation(
    spec: &PrincipalSpectrum,
    key: &str,
    value: ExpectedValue,
    provenance: Provenance,
) -> Result<Expectation> {
    let scale = match (value, key_degree(key), is_flag_key(key)) {
        (ExpectedValue::Flag(_), _, true) => 0.0,
        (ExpectedValue::Value(_), Some(d), _) => magnitude(spec, d),
        (_, None, false) => return Err(invalid(format!("unknown expectation key '{key}'"))),
        (ExpectedValue::Flag(_), ..) => {
            return Err(invalid(format!("'{key}' expects a number, got a boolean")))
        }
        (ExpectedValue::Value(_), ..) => {
            return Err(invalid(format!("'{key}' expects a boolean, got a number")))
        }
    };
    Ok(Expectation {
        key: key.to_string(),
        value,
        provenance,
        scale,
    })
}

struct Expect<'a> {
    spec: &'a PrincipalSpectrum,
    list: Vec<Expectation>,
}

impl Expect<'_> {
    fn flag(&mut self, key: &str, v: bool, prov: Provenance) {
        self.list.push(Expectation {
            key: key.into(),
            value: ExpectedValue::Flag(v),
            provenance: prov,
            scale: 0.0,
        });
    }

    fn value(&mut self, key: &str, v: f64, degree: i32, prov: Provenance) {
        self.list.push(Expectation {
            key: key.into(),
            value: ExpectedValue::Value(v),
            provenance: prov,
            scale: magnitude(self.spec, degree),
        });
    }
}

use Provenance::{Derived, Published, Trivial};

/// Builds a catalog entry from positional parameters, in the order listed
/// in [`CATALOG`].
pub fn build(name: &str, args: &[f64]) -> Result<CatalogEntry> {
    let builder = CATALOG
        .iter()
        .find(|b| b.name == name)
        .ok_or_else(|| invalid(format!("unknown catalog entry '{name}'")))?;
    if args.len() != builder.params.len() {
        let names: Vec<&str> = builder.params.iter().map(|p| p.name).collect();
        return Err(invalid(format!(
            "{name} takes {} parameters ({}), got {}",
            names.len(),
            names.join(", "),
            args.len()
        )));
    }
    let params: Vec<(String, f64)> = builder
        .params
        .iter()
        .zip(args)
        .map(|(p, v)| (p.name.to_string(), *v))
        .collect();
    let mut notes = Vec::new();
    let spectrum = match name {
        "clifford" => clifford(
            as_count("p", args[0])?,
            as_count("n", args[1])?,
            args[2],
            args[3],
        )?,
        "austere" => austere(as_count("n", args[0])?, as_count("p", args[1])?, args[2], args[3])?,
        "cartan" => cartan(as_count("p", args[0])?, args[1])?,
        "type_two" => type_two(as_count("n", args[0])?, args[1], args[2], args[3])?,
        "two_quasi_umbilical" => two_quasi_umbilical(as_count("n", args[0])?, args[1])?,
        "three_curvature" => three_curvature(
            as_count("n", args[0])?,
            args[1],
            args[2],
            args[3],
            as_count("n1", args[4])?,
            as_count("n2", args[5])?,
            args[6],
        )?,
        _ => unreachable!("name checked against CATALOG"),
    };
    let mut e = Expect {
        spec: &spectrum,
        list: Vec::new(),
    };
    e.flag("suite", true, Derived);
    match name {
        "clifford" => expect_clifford(&mut e, args, &mut notes),
        "austere" | "cartan" => expect_austere(&mut e),
        "type_two" => expect_type_two(&mut e, args),
        "two_quasi_umbilical" => expect_tqu(&mut e, args),
        "three_curvature" => expect_three(&mut e, args),
        _ => unreachable!(),
    }
    let expected = e.list;
    Ok(CatalogEntry {
        name: name.to_string(),
        params,
        spectrum,
        expected,
        notes,
    })
}

fn expect_clifford(e: &mut Expect<'_>, args: &[f64], notes: &mut Vec<String>) {
    let (p, n, c, t) = (args[0] as usize, args[1] as usize, args[2], args[3]);
    let thr = clifford_threshold(p, n);
    let edge = p == 1 || p == n - 1;
    if n >= 4 {
        e.flag("quasi_umbilical", edge, Published);
        e.flag("conformally_flat", edge, if edge { Published } else { Derived });
    }
    let gap = (t - thr).abs();
    if gap <= 1e-12 * thr.max(1.0) {
        e.flag("einstein", true, Published);
        return;
    }
    if gap <= THRESHOLD_BAND {
        notes.push(format!(
            "t = {t} is within {THRESHOLD_BAND} of the Einstein threshold {thr}; \
             the einstein flag is not asserted"
        ));
        return;
    }
    e.flag("einstein", false, Published);
    let (l1, l2) = (c.sqrt() / t.tan(), -c.sqrt() * t.tan());
    let tr = p as f64 * l1 + (n - p) as f64 * l2;
    let alpha = l1 + l2;
    if edge {
        e.flag("quasi_einstein", true, Derived);
    } else {
        e.flag("roter", true, Published);
        e.flag("quasi_einstein", false, Published);
        e.flag("partially_einstein", true, Published);
        e.value("roter_phi", 1.0 / ((tr - alpha) * (tr - alpha)), -2, Derived);
        e.flag("identity:eq_3_10_roter", true, Derived);
    }
}

fn expect_austere(e: &mut Expect<'_>) {
    let spec = e.spec;
    let n = spec.dim();
    let m = n as f64;
    let c = spec.ambient_curvature();
    let d = spec.distinct();
    let lambda = d[1].value;
    let p = d[1].multiplicity as f64;
    let l2 = lambda * lambda;
    let k = (m - 1.0) * c;
    e.value("tau", 0.0, 3, Published);
    e.flag("partially_einstein", true, Published);
    e.flag("ricci_pseudosymmetric", true, Published);
    e.value("l_s", c, 2, Published);
    e.flag("identity:eq_4_17_RS", true, Derived);
    e.value("rho1", 2.0 * k - l2, 2, Derived);
    e.value("rho0", -k * (k - l2), 4, Derived);
    e.value("partial_lambda", 2.0 * k - l2, 2, Derived);
    e.value("partial_mu", -k * (k - l2), 4, Derived);
    e.value("kappa", m * (m - 1.0) * c - 2.0 * p * l2, 2, Derived);
    e.value("ricci_0", k, 2, Derived);
    e.value("ricci_1", k - l2, 2, Derived);
    e.value("ricci_2", k - l2, 2, Derived);
    if n >= 4 {
        e.value("beta1", 0.0, 1, Published);
        e.value("beta3", 0.0, 3, Published);
        e.value("beta4", 0.0, 3, Published);
        let mu = -2.0 * p * l2 / ((m - 1.0) * (m - 2.0));
        e.value("mu", mu, 2, Derived);
        e.value("beta2", mu + l2 / (m - 2.0), 2, Derived);
    }
    if d[1].multiplicity == 1 {
        e.flag("pseudosymmetric", true, Published);
        e.value("l_r", c, 2, Published);
    }
}

fn expect_type_two(e: &mut Expect<'_>, args: &[f64]) {
    let (n, l0, l1, c) = (args[0], args[1], args[2], args[3]);
    let k = (n - 1.0) * c;
    let q = l0 * l1;
    e.flag("pseudosymmetric", true, Published);
    e.value("l_r", c, 2, Published);
    e.flag("two_quasi_einstein", true, Published);
    e.flag("partially_einstein", true, Published);
    e.value("partial_lambda", q + 2.0 * k, 2, Derived);
    e.value("partial_mu", -k * (q + k), 4, Derived);
    if l0 == l1 {
        e.flag("roter", true, Published);
        e.value("roter_phi", 1.0 / (l0 * l0), -2, Published);
        e.flag("identity:eq_3_10_roter", true, Derived);
    } else {
        e.value("tau", 0.0, 3, Published);
        e.value("ricci_0", q + k, 2, Published);
        e.value("ricci_1", q + k, 2, Published);
        e.value("ricci_2", k, 2, Trivial);
        e.value("rho1", q + 2.0 * k, 2, Derived);
        e.value("rho0", -k * (q + k), 4, Derived);
    }
}

fn expect_tqu(e: &mut Expect<'_>, args: &[f64]) {
    let (n, l) = (args[0], args[1]);
    e.value("tau", -(n - 3.0) * (n - 2.0) * l * l * l, 3, Published);
    e.value("rho", 0.0, 3, Trivial);
    e.flag("partially_einstein", false, Published);
    e.flag("generalized_roter", true, Derived);
    e.flag("identity:thm_6_1_S3_span", true, Derived);
    e.flag("identity:eq_6_2_groter", true, Derived);
}

fn expect_three(e: &mut Expect<'_>, args: &[f64]) {
    let (n, l0, l1, l2) = (args[0], args[1], args[2], args[3]);
    let (n1, n2) = (args[4], args[5]);
    // (λ₀ + w)(λ₁λ₂ + (n₁λ₁ + n₂λ₂) w) with w = (n₁−1)λ₁ + (n₂−1)λ₂.
    let w = (n1 - 1.0) * l1 + (n2 - 1.0) * l2;
    let tau = (l0 + w) * (l1 * l2 + (n1 * l1 + n2 * l2) * w);
    e.value("tau", tau, 3, Published);
    if n1 == 1.0 {
        let t66 = (n - 2.0) * (l0 + (n - 3.0) * l2) * (l1 + (n - 3.0) * l2) * l2;
        e.value("tau", t66, 3, Published);
        if l2 == l0 + l1 {
            let (a, b) = (l0, l1);
            let t = (n - 2.0) * ((n - 2.0) * a + (n - 3.0) * b) * ((n - 3.0) * a + (n - 2.0) * b)
                * (a + b);
            e.value("tau", t, 3, Published);
        }
    }
    let scale = magnitude(e.spec, 1);
    if w.abs() <= 1e-12 * scale {
        e.value("tau", l0 * l1 * l2, 3, Published);
        e.value("rho", l0 * l1 * l2, 3, Published);
    }
    if n1 == n2 && (l1 + l2).abs() <= 1e-12 * scale {
        e.value("tau", -l0 * l1 * l1, 3, Published);
        e.value("rho", -l0 * l1 * l1, 3, Published);
    }
    if tau.abs() > 1e-9 * magnitude(e.spec, 3) {
        e.flag("partially_einstein", false, Published);
        e.flag("identity:thm_6_1_S3_span", true, Derived);
    } else {
        e.flag("partially_einstein", true, Published);
    }
}

/// Observed value of an expectation key, or `None` for an unknown key or a
/// quantity undefined at this point.
pub fn observe(
    key: &str,
    point: &PointGeometry,
    class: &ClassificationReport,
    suite: &SuiteReport,
) -> Option<ExpectedValue> {
    use ExpectedValue::{Flag, Value};
    if let Some(f) = class.flag(key) {
        return Some(Flag(f.value));
    }
    if let Some(id) = key.strip_prefix("identity:") {
        return suite.get(id).map(|r| Flag(r.passed == Some(true)));
    }
    if let Some(j) = key.strip_prefix("ricci_") {
        let j: usize = j.parse().ok()?;
        if j >= point.spectrum.distinct().len() {
            return None;
        }
        let i = crate::identities::direction_index(point, j);
        return Some(Value(point.along_principal(&point.s, i)));
    }
    if let Some(j) = key.strip_prefix("beta") {
        let j: usize = j.parse().ok()?;
        if !(1..=6).contains(&j) {
            return None;
        }
        return point.beta.map(|b| Value(b.beta[j - 1]));
    }
    Some(match key {
        "suite" => Flag(suite.passed),
        "tau" => Value(point.tau),
        "rho" => Value(point.cubic.rho),
        "rho0" => Value(point.rho0),
        "rho1" => Value(point.rho1),
        "kappa" => Value(point.kappa),
        "mu" => Value(point.beta?.mu),
        "l_r" => Value(class.l_r?),
        "l_s" => Value(class.l_s?),
        "roter_phi" => Value(class.roter_coeffs().ok()?.0),
        "partial_lambda" => Value(class.partial_fit.coefficients[0]),
        "partial_mu" => Value(class.partial_fit.coefficients[1]),
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectationOutcome {
    pub key: String,
    pub expected: ExpectedValue,
    pub observed: Option<ExpectedValue>,
    pub provenance: Provenance,
    pub passed: bool,
}

pub fn compare(exp: &Expectation, observed: Option<ExpectedValue>, tol: f64) -> bool {
    match (exp.value, observed) {
        (ExpectedValue::Flag(a), Some(ExpectedValue::Flag(b))) => a == b,
        (ExpectedValue::Value(a), Some(ExpectedValue::Value(b))) => {
            (a - b).abs() <= tol * a.abs().max(exp.scale)
        }
        _ => false,
    }
}

/// Checks every expectation of the entry against the computed point.
pub fn evaluate(
    entry: &CatalogEntry,
    point: &PointGeometry,
    class: &ClassificationReport,
    suite: &SuiteReport,
    tol: f64,
) -> Vec<ExpectationOutcome> {
    entry
        .expected
        .iter()
        .map(|x| {
            let observed = observe(&x.key, point, class, suite);
            ExpectationOutcome {
                key: x.key.clone(),
                expected: x.value,
                observed,
                provenance: x.provenance,
                passed: compare(x, observed, tol),
            }
        })
        .collect()
}
