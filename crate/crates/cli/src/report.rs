use curvlab::catalog::{Builder, ExpectationOutcome, ExpectedValue};
use curvlab::classify::ClassificationReport;
use curvlab::identities::{CheckKind, SuiteReport};
use curvlab::model::PrincipalSpectrum;
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

/// Identity outcomes after an independent, seeded change of frame.
#[derive(Clone, Debug, Serialize)]
pub struct FrameCheck {
    pub seed: u64,
    pub consistent: bool,
    /// Identities whose applicability or outcome changed.
    pub changed: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub index: usize,
    pub label: Option<String>,
    pub spectrum: PrincipalSpectrum,
    pub suite: SuiteReport,
    pub frame_check: FrameCheck,
    pub expectations: Vec<ExpectationOutcome>,
    pub near_threshold: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyEntry {
    pub index: usize,
    pub label: Option<String>,
    pub spectrum: PrincipalSpectrum,
    pub classification: ClassificationReport,
    pub near_threshold: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogRun {
    pub name: String,
    pub params: Vec<(String, f64)>,
    pub spectrum: PrincipalSpectrum,
    pub notes: Vec<String>,
    pub suite: SuiteReport,
    pub classification: ClassificationReport,
    pub expectations: Vec<ExpectationOutcome>,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub command: &'a str,
    pub source: &'a str,
    pub tol: f64,
    pub seed: Option<u64>,
    pub passed: Option<bool>,
    pub entries: &'a [T],
}

/// Canonical machine form: keys sorted, floats in shortest round-trip form,
/// so that parsing and re-emitting reproduces the same bytes.
pub fn machine<T: Serialize>(report: &T) -> String {
    let value = serde_json::to_value(report).expect("reports serialise");
    canonical(&value)
}

pub fn canonical(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialise");
    s.push('\n');
    s
}

/// Six significant digits, trailing zeros dropped.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let e = x.abs().log10().floor() as i32;
    if (-4..6).contains(&e) {
        let s = format!("{:.*}", (5 - e).max(0) as usize, x);
        trim(&s).to_string()
    } else {
        let s = format!("{x:.5e}");
        let (m, exp) = s.split_once('e').expect("exponent form");
        format!("{}e{exp}", trim(m))
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn describe(index: usize, label: &Option<String>, spec: &PrincipalSpectrum) -> String {
    let curv: Vec<String> = spec
        .distinct()
        .iter()
        .map(|c| format!("{} (×{})", sig6(c.value), c.multiplicity))
        .collect();
    format!(
        "[{index}] {}n = {}, c = {}, ε = {}: {}",
        label.as_ref().map(|l| format!("{l}  ")).unwrap_or_default(),
        spec.dim(),
        sig6(spec.ambient_curvature()),
        spec.epsilon(),
        curv.join(", ")
    )
}

/// Applicable identities one per line, then a count of the rest.
fn identity_lines(out: &mut String, suite: &SuiteReport) {
    let mut skipped = 0;
    for r in &suite.reports {
        let Some(passed) = r.passed else {
            skipped += 1;
            continue;
        };
        let what = match r.kind {
            CheckKind::Relation => "residual",
            CheckKind::NonVanishing => "magnitude",
        };
        let _ = write!(
            out,
            "  {}  {:<22} {what} {}",
            if passed { "pass" } else { "FAIL" },
            r.identity_id,
            sig6(r.residual)
        );
        if let Some(n) = &r.note {
            let _ = write!(out, "  ({n})");
        }
        out.push('\n');
    }
    if skipped > 0 {
        let _ = writeln!(out, "  {skipped} identities not applicable here");
    }
}

fn value(v: &ExpectedValue) -> String {
    match v {
        ExpectedValue::Flag(b) => b.to_string(),
        ExpectedValue::Value(x) => sig6(*x),
    }
}

fn expectation_lines(out: &mut String, list: &[ExpectationOutcome]) {
    for o in list {
        let observed = o.observed.as_ref().map(value).unwrap_or_else(|| "undefined".into());
        let _ = writeln!(
            out,
            "  {}  expected {} = {}, observed {}",
            if o.passed { "pass" } else { "FAIL" },
            o.key,
            value(&o.expected),
            observed
        );
    }
}

fn notes(out: &mut String, list: &[String]) {
    for n in list {
        let _ = writeln!(out, "  note: {n}");
    }
}

pub fn check_text(entries: &[CheckEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        let _ = writeln!(out, "{}", describe(e.index, &e.label, &e.spectrum));
        identity_lines(&mut out, &e.suite);
        let f = &e.frame_check;
        if f.consistent {
            let _ = writeln!(out, "  frame check (seed {}): consistent", f.seed);
        } else {
            let _ = writeln!(out, "  frame check (seed {}): CHANGED {}", f.seed, f.changed.join(", "));
        }
        expectation_lines(&mut out, &e.expectations);
        notes(&mut out, &e.near_threshold);
        let _ = writeln!(out, "  => {}\n", if e.passed { "PASS" } else { "FAIL" });
    }
    let ok = entries.iter().filter(|e| e.passed).count();
    let _ = writeln!(out, "{ok} of {} spectra pass", entries.len());
    out
}

fn coefficients(labels: &[String], values: &[f64]) -> String {
    labels
        .iter()
        .zip(values)
        .map(|(l, v)| format!(", {l} = {}", sig6(*v)))
        .collect()
}

fn classification_lines(out: &mut String, c: &ClassificationReport) {
    for (name, f) in c.flags() {
        let _ = write!(out, "  {name}: {}", f.value);
        if f.value {
            match name {
                "roter" => out.push_str(&coefficients(&c.roter_fit.basis_labels, &c.roter_fit.coefficients)),
                "generalized_roter" => {
                    out.push_str(&coefficients(&c.groter_fit.basis_labels, &c.groter_fit.coefficients))
                }
                "partially_einstein" => {
                    out.push_str(&coefficients(&c.partial_fit.basis_labels, &c.partial_fit.coefficients))
                }
                "pseudosymmetric" => {
                    if let Some(l) = c.l_r {
                        let _ = write!(out, ", L_R = {}", sig6(l));
                    }
                }
                "ricci_pseudosymmetric" => {
                    if let Some(l) = c.l_s {
                        let _ = write!(out, ", L_S = {}", sig6(l));
                    }
                }
                _ => {}
            }
        }
        if let Some(r) = f.residual {
            let _ = write!(out, "  (residual {})", sig6(r));
        }
        out.push('\n');
    }
}

pub fn classify_text(entries: &[ClassifyEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        let _ = writeln!(out, "{}", describe(e.index, &e.label, &e.spectrum));
        classification_lines(&mut out, &e.classification);
        notes(&mut out, &e.near_threshold);
        out.push('\n');
    }
    out
}

pub fn catalog_text(run: &CatalogRun) -> String {
    let mut out = String::new();
    let params: Vec<String> = run.params.iter().map(|(k, v)| format!("{k} = {}", sig6(*v))).collect();
    let _ = writeln!(out, "{}({})", run.name, params.join(", "));
    let label = None;
    let _ = writeln!(out, "{}", describe(0, &label, &run.spectrum));
    identity_lines(&mut out, &run.suite);
    classification_lines(&mut out, &run.classification);
    expectation_lines(&mut out, &run.expectations);
    notes(&mut out, &run.notes);
    let _ = writeln!(out, "=> {}", if run.passed { "PASS" } else { "FAIL" });
    out
}

pub fn list_text(builders: &[Builder]) -> String {
    let mut out = String::new();
    for b in builders {
        let params: Vec<String> = b.params.iter().map(|p| format!("<{}>", p.name)).collect();
        let ranges: Vec<&str> = b.params.iter().map(|p| p.range).collect();
        let _ = writeln!(out, "{} {}\n    {}\n    {}", b.name, params.join(" "), b.summary, ranges.join("; "));
    }
    out
}
