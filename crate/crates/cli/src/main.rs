mod input;
mod report;

use clap::{Args, Parser, Subcommand};
use curvlab::catalog::{self, evaluate, ExpectationOutcome, CATALOG};
use curvlab::classify::{classify_with, ClassificationReport};
use curvlab::derived::Derived;
use curvlab::identities::{run_suite, run_suite_with, SuiteReport};
use curvlab::model::{build_point_with, PointGeometry, PrincipalSpectrum};
use curvlab::sampling;
use input::SpectrumInput;
use rayon::prelude::*;
use report::{CatalogRun, CheckEntry, ClassifyEntry, Envelope, FrameCheck, Format};
use std::path::PathBuf;
use std::process::ExitCode;

/// Curvature identity checks for hypersurface points given by their
/// principal curvatures.
#[derive(Parser)]
#[command(name = "curvlab", version)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Opts {
    /// Relative tolerance for residuals and rank decisions.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for the randomised change-of-frame check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity suite on every spectrum in a file.
    Check { path: PathBuf },
    /// Classify every spectrum in a file.
    Classify { path: PathBuf },
    /// Named examples with known properties.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List the available entries and their parameters.
    List,
    /// Build an entry, check it and compare against its expected properties.
    Run {
        name: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<f64>,
    },
    /// `catalog <name> <params...>` is shorthand for `catalog run`.
    #[command(external_subcommand)]
    Named(Vec<String>),
}

const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.opts.tol > 0.0 && cli.opts.tol < 1.0) {
        return usage_error(format!("--tol must lie in (0, 1), got {}", cli.opts.tol));
    }
    match cli.command {
        Command::Check { path } => check(&path, cli.opts),
        Command::Classify { path } => classify(&path, cli.opts),
        Command::Catalog(CatalogCommand::List) => {
            match cli.opts.format {
                Format::Text => print!("{}", report::list_text(CATALOG)),
                Format::Machine => print!("{}", report::machine(&CATALOG)),
            }
            ExitCode::from(PASS)
        }
        Command::Catalog(CatalogCommand::Run { name, params }) => run_catalog(&name, &params, cli.opts),
        Command::Catalog(CatalogCommand::Named(args)) => {
            let params: Result<Vec<f64>, _> = args[1..].iter().map(|a| a.parse::<f64>()).collect();
            match params {
                Ok(p) => run_catalog(&args[0], &p, cli.opts),
                Err(_) => usage_error(format!("catalog parameters must be numbers: {}", args[1..].join(" "))),
            }
        }
    }
}

fn load(path: &PathBuf) -> Result<Vec<SpectrumInput>, ExitCode> {
    input::read(path).map_err(usage_error)
}

fn point(spec: &PrincipalSpectrum, tol: f64) -> Result<PointGeometry, String> {
    build_point_with(spec, tol, None).map_err(|e| e.to_string())
}

/// Seed of the congruence used for entry `index`.
fn entry_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn frame_check(spec: &PrincipalSpectrum, base: &SuiteReport, seed: u64, tol: f64) -> Result<FrameCheck, String> {
    let l = sampling::congruence(&mut sampling::rng(seed), spec.dim());
    let moved = build_point_with(spec, tol, Some(&l)).map_err(|e| e.to_string())?;
    let suite = run_suite(&moved, tol);
    let changed: Vec<String> = base
        .reports
        .iter()
        .zip(&suite.reports)
        .filter(|(a, b)| a.applicable != b.applicable || a.passed != b.passed)
        .map(|(a, _)| a.identity_id.clone())
        .collect();
    Ok(FrameCheck {
        seed,
        consistent: changed.is_empty(),
        changed,
    })
}

/// Decisions whose residual lies within a decade of the tolerance.
fn near_threshold(suite: Option<&SuiteReport>, class: Option<&ClassificationReport>, tol: f64) -> Vec<String> {
    let near = |r: f64| r > 0.1 * tol && r < 10.0 * tol;
    let mut out = Vec::new();
    for r in suite.into_iter().flat_map(|s| &s.reports) {
        if r.applicable && near(r.residual) {
            out.push(format!("{} residual {:e} is within a decade of tol {tol:e}", r.identity_id, r.residual));
        }
    }
    for (name, f) in class.into_iter().flat_map(|c| c.flags()) {
        if let Some(r) = f.residual.filter(|&r| near(r)) {
            out.push(format!("{name} residual {r:e} is within a decade of tol {tol:e}"));
        }
    }
    out
}

fn check_one(index: usize, input: &SpectrumInput, opts: Opts) -> Result<CheckEntry, String> {
    let p = point(&input.spectrum, opts.tol)?;
    let d = Derived::new(&p);
    let suite = run_suite_with(&d, opts.tol);
    let frame = frame_check(&input.spectrum, &suite, entry_seed(opts.seed, index), opts.tol)?;
    let expectations = if input.expected.is_empty() {
        Vec::new()
    } else {
        let class = classify_with(&p, &d, opts.tol);
        outcomes(&input.expected, &p, &class, &suite, opts.tol)
    };
    let passed = suite.passed && frame.consistent && expectations.iter().all(|o| o.passed);
    Ok(CheckEntry {
        index,
        label: input.label.clone(),
        spectrum: input.spectrum.clone(),
        near_threshold: near_threshold(Some(&suite), None, opts.tol),
        suite,
        frame_check: frame,
        expectations,
        passed,
    })
}

fn outcomes(
    expected: &[catalog::Expectation],
    p: &PointGeometry,
    class: &ClassificationReport,
    suite: &SuiteReport,
    tol: f64,
) -> Vec<ExpectationOutcome> {
    expected
        .iter()
        .map(|x| {
            let observed = catalog::observe(&x.key, p, class, suite);
            ExpectationOutcome {
                key: x.key.clone(),
                expected: x.value,
                observed,
                provenance: x.provenance,
                passed: catalog::compare(x, observed, tol),
            }
        })
        .collect()
}

fn check(path: &PathBuf, opts: Opts) -> ExitCode {
    let inputs = match load(path) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let entries: Result<Vec<CheckEntry>, String> = inputs
        .par_iter()
        .enumerate()
        .map(|(i, s)| check_one(i, s, opts).map_err(|e| format!("entry {i}: {e}")))
        .collect();
    let entries = match entries {
        Ok(e) => e,
        Err(e) => return usage_error(format!("{}: {e}", path.display())),
    };
    let passed = entries.iter().all(|e| e.passed);
    let source = path.display().to_string();
    match opts.format {
        Format::Text => print!("{}", report::check_text(&entries)),
        Format::Machine => print!(
            "{}",
            report::machine(&Envelope {
                command: "check",
                source: &source,
                tol: opts.tol,
                seed: Some(opts.seed),
                passed: Some(passed),
                entries: &entries,
            })
        ),
    }
    ExitCode::from(if passed { PASS } else { FAIL })
}

fn classify(path: &PathBuf, opts: Opts) -> ExitCode {
    let inputs = match load(path) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let entries: Result<Vec<ClassifyEntry>, String> = inputs
        .par_iter()
        .enumerate()
        .map(|(index, s)| {
            let p = point(&s.spectrum, opts.tol).map_err(|e| format!("entry {index}: {e}"))?;
            let d = Derived::new(&p);
            let classification = classify_with(&p, &d, opts.tol);
            Ok(ClassifyEntry {
                index,
                label: s.label.clone(),
                spectrum: s.spectrum.clone(),
                near_threshold: near_threshold(None, Some(&classification), opts.tol),
                classification,
            })
        })
        .collect();
    let entries = match entries {
        Ok(e) => e,
        Err(e) => return usage_error(format!("{}: {e}", path.display())),
    };
    let source = path.display().to_string();
    match opts.format {
        Format::Text => print!("{}", report::classify_text(&entries)),
        Format::Machine => print!(
            "{}",
            report::machine(&Envelope {
                command: "classify",
                source: &source,
                tol: opts.tol,
                seed: None,
                passed: None,
                entries: &entries,
            })
        ),
    }
    ExitCode::from(PASS)
}

fn run_catalog(name: &str, params: &[f64], opts: Opts) -> ExitCode {
    let entry = match catalog::build(name, params) {
        Ok(e) => e,
        Err(e) => return usage_error(e),
    };
    let p = match point(&entry.spectrum, opts.tol) {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    let d = Derived::new(&p);
    let suite = run_suite_with(&d, opts.tol);
    let classification = classify_with(&p, &d, opts.tol);
    let expectations = evaluate(&entry, &p, &classification, &suite, opts.tol);
    let passed = suite.passed && expectations.iter().all(|o| o.passed);
    let mut notes = entry.notes;
    notes.extend(near_threshold(Some(&suite), Some(&classification), opts.tol));
    let run = CatalogRun {
        name: entry.name,
        params: entry.params,
        spectrum: entry.spectrum,
        notes,
        suite,
        classification,
        expectations,
        passed,
    };
    match opts.format {
        Format::Text => print!("{}", report::catalog_text(&run)),
        Format::Machine => print!(
            "{}",
            report::machine(&Envelope {
                command: "catalog",
                source: name,
                tol: opts.tol,
                seed: None,
                passed: Some(passed),
                entries: std::slice::from_ref(&run),
            })
        ),
    }
    ExitCode::from(if passed { PASS } else { FAIL })
}
