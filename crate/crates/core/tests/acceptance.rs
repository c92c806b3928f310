//! Acceptance criteria, one test per criterion. Each prints a single
//! `[PASS]`/`[FAIL]` line (run with `--nocapture` to see them).

mod common;

use common::{
    action_oracle2, action_oracle4, rel_scalar, relative_diff, report, tachibana_oracle2,
    tachibana_oracle4, vanishing_residual,
};
use curvlab::catalog::{self, CatalogEntry};
use curvlab::classify::{classify, classify_with, ClassificationReport, CLASS_NAMES};
use curvlab::derived::Derived;
use curvlab::identities::{run_suite, run_suite_with, SuiteReport};
use curvlab::model::{
    build_point, build_point_with, cubic_coefficients, cubic_scale, ricci_eigenvalues, tau,
    tau_product_formula, Curvature, PointGeometry, PrincipalSpectrum,
};
use curvlab::sampling;
use curvlab::tensor::{
    gauss_tensor, kn_product, kn_wedge4, tachibana2, tachibana4, Congruence, CurvTensor4,
    DenseTensor, Frame, SymTensor2,
};
use rand::Rng;
use std::f64::consts::PI;
use std::time::Instant;

const BATTERY_TOL: f64 = 1e-12;
const UNIVERSAL_TOL: f64 = 1e-10;
const SUITE_TOL: f64 = 1e-9;
const ORACLE_TOL: f64 = 1e-10;
const TAU_ZERO_TOL: f64 = 1e-12;
const GROTER_TOL: f64 = 1e-8;

fn catalog_cases() -> Vec<(&'static str, Vec<f64>)> {
    let s3 = 3f64.sqrt();
    vec![
        ("clifford", vec![2.0, 4.0, 1.0, PI / 3.0]),
        ("clifford", vec![2.0, 4.0, 1.0, PI / 4.0]),
        ("clifford", vec![1.0, 4.0, 1.0, PI / 3.0]),
        ("clifford", vec![2.0, 5.0, 2.0, 0.4]),
        ("austere", vec![6.0, 2.0, s3, 1.0]),
        ("austere", vec![5.0, 1.0, 1.3, 0.5]),
        ("austere", vec![4.0, 1.0, 1.0, 0.0]),
        ("cartan", vec![2.0, 1.0]),
        ("type_two", vec![5.0, 2.0, 2.0, 1.0]),
        ("type_two", vec![5.0, 1.0, 2.0, 1.0]),
        ("type_two", vec![5.0, 1.0, -1.0, 0.7]),
        ("two_quasi_umbilical", vec![5.0, 1.0]),
        ("two_quasi_umbilical", vec![4.0, 1.0]),
        ("two_quasi_umbilical", vec![5.0, -1.0]),
        ("three_curvature", vec![5.0, 1.0, 2.0, 3.0, 1.0, 3.0, 0.0]),
        ("three_curvature", vec![6.0, 5.0, -2.0, 1.0, 2.0, 3.0, 0.0]),
        ("three_curvature", vec![5.0, 3.0, 1.0, -1.0, 2.0, 2.0, 0.3]),
    ]
}

fn catalog_entries() -> Vec<CatalogEntry> {
    catalog_cases()
        .into_iter()
        .map(|(name, args)| catalog::build(name, &args).expect("catalog parameters in range"))
        .collect()
}

fn label(spec: &PrincipalSpectrum) -> String {
    let curv: Vec<String> = spec
        .curvatures()
        .iter()
        .map(|c| format!("{:.4}x{}", c.value, c.multiplicity))
        .collect();
    format!("n={} c={:.3} eps={} [{}]", spec.dim(), spec.ambient_curvature(), spec.epsilon(), curv.join(", "))
}

fn random_metric(rng: &mut impl Rng, n: usize) -> Frame {
    let sig: Vec<f64> = (0..n)
        .map(|_| if rng.random_bool(0.3) { -1.0 } else { 1.0 })
        .collect();
    let base = Frame::diagonal(&sig).unwrap();
    base.congruence(&sampling::congruence(rng, n)).unwrap()
}

#[test]
fn criterion_1_algebraic_battery() {
    let start = Instant::now();
    let mut rng = sampling::rng(1);
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    let mut instances = 0;
    for n in 3..=6 {
        for _ in 0..100 {
            let frame = random_metric(&mut rng, n);
            let g = frame.metric();
            let e = sampling::symmetric(&mut rng, n);
            let f = sampling::symmetric(&mut rng, n);
            let e1 = sampling::symmetric(&mut rng, n);
            let e2 = sampling::symmetric(&mut rng, n);
            let s = sampling::symmetric(&mut rng, n);
            let kn = |a: &SymTensor2, b: &SymTensor2| kn_product(a, b).unwrap();
            let q2 = |a: &SymTensor2, b: &SymTensor2| tachibana2(a, b).unwrap();
            let q4 = |a: &SymTensor2, b: &CurvTensor4| tachibana4(a, b).unwrap();
            let w4 = |a: &SymTensor2, b: &CurvTensor4| kn_wedge4(a, b).unwrap();
            let gg = gauss_tensor(&frame);

            let mut check = |name: &str, r: f64| {
                if r > worst {
                    worst = r;
                    worst_at = format!("{name} at n={n}");
                }
            };
            // antisymmetry of Q in its two symmetric arguments
            check("Q(E,F)+Q(F,E)", vanishing_residual(&[(1.0, &q2(&e, &f)), (1.0, &q2(&f, &e))]));
            let ee = kn(&e, &e);
            check(
                "Q(E,E^F)+Q(F,E^E)/2",
                vanishing_residual(&[(1.0, &q4(&e, &kn(&e, &f))), (0.5, &q4(&f, &ee))]),
            );
            check(
                "E^Q(E,F)+Q(F,E^E)/2",
                vanishing_residual(&[(1.0, &w4(&e, &q2(&e, &f))), (0.5, &q4(&f, &ee))]),
            );
            check(
                "E1^Q(E2,F)+E2^Q(E1,F)+Q(F,E1^E2)",
                vanishing_residual(&[
                    (1.0, &w4(&e1, &q2(&e2, &f))),
                    (1.0, &w4(&e2, &q2(&e1, &f))),
                    (1.0, &q4(&f, &kn(&e1, &e2))),
                ]),
            );
            check(
                "cyclic Q(F,E1^E2)",
                vanishing_residual(&[
                    (1.0, &q4(&f, &kn(&e1, &e2))),
                    (1.0, &q4(&e1, &kn(&e2, &f))),
                    (1.0, &q4(&e2, &kn(&f, &e1))),
                ]),
            );
            check(
                "Q(g,g^S)+Q(S,G)",
                vanishing_residual(&[(1.0, &q4(g, &kn(g, &s))), (1.0, &q4(&s, &gg))]),
            );
            check(
                "Q(S,g^S)+Q(g,S^S)/2",
                vanishing_residual(&[(1.0, &q4(&s, &kn(g, &s))), (0.5, &q4(g, &kn(&s, &s)))]),
            );
            let qgg = q4(g, &gg);
            check("Q(g,G)", qgg.norm() / (g.norm() * gg.norm()));
            instances += 1;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = worst <= BATTERY_TOL;
    report(
        "1",
        "algebraic identity battery",
        ok,
        format!(
            "{instances} instances over n=3..6, worst residual {worst:.3e} ({worst_at}), tol {BATTERY_TOL:e}, {elapsed:.2}s"
        ),
    );
    assert!(ok, "worst residual {worst:e} at {worst_at}");
}

/// Library kernels against the slot-by-slot oracles.
#[test]
fn criterion_1_products_match_oracles() {
    let mut rng = sampling::rng(11);
    let mut worst = 0.0f64;
    for n in 3..=5 {
        for _ in 0..5 {
            let frame = random_metric(&mut rng, n);
            let g = frame.metric();
            let a = sampling::symmetric(&mut rng, n);
            let t = sampling::symmetric(&mut rng, n);
            let b = sampling::generalized_curvature(&mut rng, n);
            let r = sampling::generalized_curvature(&mut rng, n);
            worst = worst
                .max(relative_diff(&tachibana2(&a, &t).unwrap(), &tachibana_oracle2(&a, &t)))
                .max(relative_diff(&tachibana4(&a, &r).unwrap(), &tachibana_oracle4(&a, &r)))
                .max(relative_diff(
                    &curvlab::tensor::derivation_action2(&b, &t, &frame).unwrap(),
                    &action_oracle2(&b, &t, g),
                ))
                .max(relative_diff(
                    &curvlab::tensor::derivation_action4(&b, &r, &frame).unwrap(),
                    &action_oracle4(&b, &r, g),
                ))
                .max(relative_diff(&kn_product(&a, &t).unwrap(), &common::kn_oracle(&a, &t)))
                .max(relative_diff(&kn_wedge4(&a, &r).unwrap(), &common::kn_wedge_oracle(&a, &r)));
        }
    }
    let ok = worst <= BATTERY_TOL;
    report(
        "1",
        "product kernels agree with brute-force oracles",
        ok,
        format!("worst relative difference {worst:.3e}"),
    );
    assert!(ok);
}

fn suite_failures(suite: &SuiteReport, ids: &[&str], tol: f64) -> Vec<String> {
    suite
        .reports
        .iter()
        .filter(|r| ids.iter().any(|id| r.identity_id.starts_with(id)))
        .filter(|r| r.passes(tol) == Some(false))
        .map(|r| format!("{} ({:.2e})", r.identity_id, r.residual))
        .collect()
}

#[test]
fn criterion_2_universal_identities() {
    let start = Instant::now();
    let mut specs: Vec<PrincipalSpectrum> = catalog_entries().into_iter().map(|e| e.spectrum).collect();
    let mut rng = sampling::rng(2);
    for i in 0..50 {
        let n = 4 + i % 3;
        let k = rng.random_range(1..=n.min(4));
        specs.push(sampling::semi_riemannian(&mut rng, n, k));
    }
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let mut applicable = 0;
    for spec in &specs {
        if spec.dim() < 4 {
            continue;
        }
        let p = build_point(spec).unwrap();
        let suite = run_suite(&p, UNIVERSAL_TOL);
        for id in ["eq_2_14_crrc", "eq_2_15_cs"] {
            let r = suite.get(id).unwrap();
            assert!(r.applicable, "{id} must apply for n >= 4");
            applicable += 1;
            worst = worst.max(r.residual);
            if r.residual > UNIVERSAL_TOL {
                failures.push(format!("{id} on {}: {:.2e}", label(spec), r.residual));
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = failures.is_empty();
    report(
        "2",
        "universal C.R + R.C and C.S identities",
        ok,
        format!(
            "{} points, {applicable} checks, worst residual {worst:.3e}, tol {UNIVERSAL_TOL:e}, {elapsed:.2}s",
            specs.len()
        ),
    );
    assert!(ok, "{failures:?}");
}

/// Independent cross-check of the tensors entering the universal identities,
/// on a point where none of them vanishes (at semisymmetric points such as
/// the Clifford tori `R·R` and `R·S` are pure rounding noise).
#[test]
fn criterion_2_tensors_match_oracles() {
    let spec = PrincipalSpectrum::riemannian(0.5, &[(1.0, 1), (2.0, 2), (-3.0, 2)]).unwrap();
    let mut rng = sampling::rng(22);
    let l = sampling::congruence(&mut rng, 5);
    let p = build_point_with(&spec, SUITE_TOL, Some(&l)).unwrap();
    let d = Derived::new(&p);
    let g = p.g();
    let c = p.weyl_tensor().unwrap();
    let diffs = [
        relative_diff(&*d.rr(), &action_oracle4(&p.r, &p.r, g)),
        relative_diff(&*d.cr().unwrap(), &action_oracle4(c, &p.r, g)),
        relative_diff(&*d.rc().unwrap(), &action_oracle4(&p.r, c, g)),
        relative_diff(&*d.cc().unwrap(), &action_oracle4(c, c, g)),
        relative_diff(&*d.cs().unwrap(), &action_oracle2(c, &p.s, g)),
        relative_diff(&*d.rs(), &action_oracle2(&p.r, &p.s, g)),
        relative_diff(&*d.q_s_r(), &tachibana_oracle4(&p.s, &p.r)),
    ];
    let worst = diffs.iter().cloned().fold(0.0, f64::max);
    let ok = worst <= 1e-12;
    report(
        "2",
        "derived products agree with oracles in a non-orthonormal frame",
        ok,
        format!("worst relative difference {worst:.3e}"),
    );
    assert!(ok, "{diffs:?}");
}

const HYPERSURFACE_IDS: &[&str] = &["eq_2_17_rr", "eq_2_18_crrc", "eq_3_3_quartic", "eq_4_"];

#[test]
fn criterion_3_hypersurface_identities() {
    let start = Instant::now();
    let mut specs: Vec<PrincipalSpectrum> = catalog_entries().into_iter().map(|e| e.spectrum).collect();
    let mut rng = sampling::rng(3);
    let n_catalog = specs.len();
    for i in 0..50 {
        specs.push(sampling::three_curvature(&mut rng, 3 + i % 4));
    }
    let mut failures = Vec::new();
    let mut checks = 0;
    let mut worst = 0.0f64;
    for (i, spec) in specs.iter().enumerate() {
        let p = build_point(spec).unwrap();
        let suite = run_suite(&p, SUITE_TOL);
        let relevant: Vec<_> = suite
            .reports
            .iter()
            .filter(|r| HYPERSURFACE_IDS.iter().any(|id| r.identity_id.starts_with(id)))
            .filter(|r| r.applicable)
            .collect();
        if i >= n_catalog {
            // every random three-curvature point lies in U_H
            assert!(
                relevant.iter().any(|r| r.identity_id == "eq_4_4_A"),
                "cubic block not applicable on {}",
                label(spec)
            );
        }
        for r in &relevant {
            checks += 1;
            if r.kind == curvlab::identities::CheckKind::Relation {
                worst = worst.max(r.residual);
            }
        }
        for f in suite_failures(&suite, HYPERSURFACE_IDS, SUITE_TOL) {
            failures.push(format!("{f} on {}", label(spec)));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = failures.is_empty();
    report(
        "3",
        "hypersurface identities and the cubic-block ledger",
        ok,
        format!(
            "{} points, {checks} applicable checks, worst relation residual {worst:.3e}, tol {SUITE_TOL:e}, {elapsed:.2}s",
            specs.len()
        ),
    );
    assert!(ok, "{failures:?}");
}

/// `τ` from the elementary symmetric functions of the distinct curvatures,
/// computed without the library.
fn tau_oracle(spec: &PrincipalSpectrum) -> f64 {
    let d = spec.distinct();
    let (a, b, c) = (d[0].value, d[1].value, d[2].value);
    let phi = a + b + c;
    let psi = -(a * b + a * c + b * c);
    let rho = a * b * c;
    let t: f64 = spec.expanded().iter().sum();
    rho + (phi - t) * (psi + t * (phi - t))
}

/// `ε Π(κᵢ − κⱼ) / Π(λᵢ − λⱼ)` with `κ = ε(trH·λ − λ²) + (n−1)c`.
fn product_oracle(spec: &PrincipalSpectrum) -> f64 {
    let d = spec.distinct();
    let eps = spec.epsilon();
    let t: f64 = spec.expanded().iter().sum();
    let k = (spec.dim() as f64 - 1.0) * spec.ambient_curvature();
    let l: Vec<f64> = d.iter().map(|c| c.value).collect();
    let kap: Vec<f64> = l.iter().map(|x| eps * (t * x - x * x) + k).collect();
    eps * (kap[0] - kap[1]) * (kap[0] - kap[2]) * (kap[1] - kap[2])
        / ((l[0] - l[1]) * (l[0] - l[2]) * (l[1] - l[2]))
}

#[test]
fn criterion_4_tau_product_formula() {
    let worked = PrincipalSpectrum::riemannian(0.0, &[(1.0, 1), (2.0, 2), (3.0, 2)]).unwrap();
    let worked_tau = tau(&worked).unwrap();
    let worked_prod = tau_product_formula(&worked).unwrap();
    let worked_ok = rel_scalar(worked_tau, 336.0) <= ORACLE_TOL
        && rel_scalar(worked_prod, 336.0) <= ORACLE_TOL
        && rel_scalar(tau_oracle(&worked), 336.0) <= ORACLE_TOL
        && rel_scalar(product_oracle(&worked), 336.0) <= ORACLE_TOL;

    let mut rng = sampling::rng(4);
    let mut worst = 0.0f64;
    let mut tested = 0;
    for i in 0..200 {
        let n = 3 + i % 5;
        let spec = if i % 2 == 0 {
            sampling::three_curvature(&mut rng, n)
        } else {
            sampling::semi_riemannian(&mut rng, n, 3)
        };
        let a = tau(&spec).unwrap();
        let b = tau_product_formula(&spec).unwrap();
        // Relative error, floored at a millionth of the cubic's natural size so
        // that accidental near-zeros of τ do not amplify rounding.
        let floor = 1e-6 * cubic_scale(&spec, &cubic_coefficients(&spec));
        let rel = |x: f64, y: f64| (x - y).abs() / x.abs().max(y.abs()).max(floor);
        worst = worst
            .max(rel(a, b))
            .max(rel(a, tau_oracle(&spec)))
            .max(rel(b, product_oracle(&spec)));
        tested += 1;
    }
    let ok = worked_ok && worst <= ORACLE_TOL;
    report(
        "4",
        "tau equals the difference-product formula",
        ok,
        format!(
            "worked instance tau={worked_tau} product={worked_prod} (expect 336); {tested} random spectra, worst relative error {worst:.3e}, tol {ORACLE_TOL:e}"
        ),
    );
    assert!(ok);
}

fn s2_fit(p: &PointGeometry) -> (f64, f64) {
    let fit = curvlab::tensor::fit_in_span(&p.s2, &[("rho1", &p.s), ("rho0", p.g())]).unwrap();
    (fit.coefficients[0], fit.coefficients[1])
}

#[test]
fn criterion_5_partially_einstein_tau_zero() {
    let mut lines = Vec::new();
    let mut ok = true;

    let austere = catalog::austere(6, 2, 3f64.sqrt(), 1.0).unwrap();
    let p = build_point(&austere).unwrap();
    let scale = p.tau_scale();
    let (r1, r0) = s2_fit(&p);
    let suite = run_suite(&p, SUITE_TOL);
    let a_ok = p.tau.abs() <= TAU_ZERO_TOL * scale
        && rel_scalar(r1, 7.0) <= ORACLE_TOL
        && rel_scalar(r0, -10.0) <= ORACLE_TOL
        && suite.get("thm_5_1_S2").is_some_and(|r| r.passes(SUITE_TOL) == Some(true));
    ok &= a_ok;
    lines.push(format!("austere(6,2,sqrt3,1): tau={:.1e} fit=({r1:.12}, {r0:.12})", p.tau));

    let mut rng = sampling::rng(5);
    let mut cases = vec![(5, 1.0, 2.0, 1.0), (5, 1.0, -1.0, 0.7), (4, 2.0, -3.0, -0.5), (6, 0.5, 1.5, 0.0)];
    for _ in 0..10 {
        let n = rng.random_range(4..=7);
        let l0: f64 = rng.random_range(0.3..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let l1: f64 = rng.random_range(0.3..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        if (l0 - l1).abs() < 0.2 {
            continue;
        }
        cases.push((n, l0, l1, rng.random_range(-1.0..=1.0)));
    }
    let mut worst_tau = 0.0f64;
    let mut worst_coef = 0.0f64;
    for &(n, l0, l1, c) in &cases {
        let spec = catalog::type_two(n, l0, l1, c).unwrap();
        let p = build_point(&spec).unwrap();
        let k = (n as f64 - 1.0) * c;
        let expect = (l0 * l1 + 2.0 * k, -k * (l0 * l1 + k));
        let (r1, r0) = s2_fit(&p);
        let coef_scale = expect.0.abs().max(expect.1.abs()).max((l0 * l1).abs());
        worst_tau = worst_tau.max(p.tau.abs() / p.tau_scale());
        worst_coef = worst_coef
            .max((r1 - expect.0).abs() / coef_scale)
            .max((r0 - expect.1).abs() / coef_scale)
            .max((p.rho1 - expect.0).abs() / coef_scale)
            .max((p.rho0 - expect.1).abs() / coef_scale);
        let suite = run_suite(&p, SUITE_TOL);
        ok &= suite.get("thm_5_1_tau_zero").is_some_and(|r| r.passes(SUITE_TOL) == Some(true));
    }
    ok &= worst_tau <= TAU_ZERO_TOL && worst_coef <= ORACLE_TOL;
    lines.push(format!(
        "{} type_two points (lambda0 != lambda1): worst |tau|/scale {worst_tau:.1e}, worst coefficient error {worst_coef:.1e}",
        cases.len()
    ));
    report("5", "partially Einstein points of U_H have tau = 0", ok, lines.join("; "));
    assert!(ok);
}

#[test]
fn criterion_6_scalar_regressions() {
    let mut ok = true;
    let mut lines = Vec::new();

    let mut worst = 0.0f64;
    for n in 4..=7 {
        for lam in [1.0, -1.0, 0.7, 2.5] {
            let spec = catalog::two_quasi_umbilical(n, lam).unwrap();
            let expect = -(((n - 3) * (n - 2)) as f64) * lam * lam * lam;
            worst = worst.max(rel_scalar(tau(&spec).unwrap(), expect));
        }
    }
    let t5 = tau(&catalog::two_quasi_umbilical(5, 1.0).unwrap()).unwrap();
    ok &= worst <= ORACLE_TOL && rel_scalar(t5, -6.0) <= ORACLE_TOL;
    lines.push(format!("two_quasi_umbilical(5,1) tau={t5}; family worst {worst:.1e}"));

    let cartan = catalog::austere(6, 2, 3f64.sqrt(), 1.0).unwrap();
    let p = build_point(&cartan).unwrap();
    let beta = p.beta_coefficients().unwrap();
    let ric = ricci_eigenvalues(&cartan).unwrap();
    let mut kap = ric.kappas.clone();
    kap.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let b_ok = rel_scalar(beta.beta[1], 3.0 / 20.0) <= ORACLE_TOL
        && rel_scalar(beta.mu, -0.6) <= ORACLE_TOL
        && rel_scalar(p.kappa, 18.0) <= ORACLE_TOL
        && kap.iter().zip([5.0, 2.0, 2.0]).all(|(a, b)| rel_scalar(*a, b) <= ORACLE_TOL);
    ok &= b_ok;
    lines.push(format!(
        "cartan point beta2={:.12} mu={:.12} kappa={} ricci={kap:?}",
        beta.beta[1], beta.mu, p.kappa
    ));

    let mut worst_ls = 0.0f64;
    let mut worst_res = 0.0f64;
    for (n, pp, lam, c) in [(6, 2, 3f64.sqrt(), 1.0), (5, 1, 1.3, 0.5), (7, 3, 0.8, -0.4), (8, 2, 1.1, 2.0)] {
        let spec = catalog::austere(n, pp, lam, c).unwrap();
        let p = build_point(&spec).unwrap();
        let cls = classify(&p, UNIVERSAL_TOL);
        let ls = cls.l_s;
        ok &= cls.ricci_pseudosymmetric.value && ls.is_some();
        worst_ls = worst_ls.max((ls.unwrap_or(f64::NAN) - c).abs() / c.abs().max(1.0));
        worst_res = worst_res.max(cls.ricci_pseudosymmetric.residual.unwrap_or(f64::INFINITY));
    }
    ok &= worst_ls <= UNIVERSAL_TOL && worst_res <= UNIVERSAL_TOL;
    lines.push(format!("austere R.S = L_S Q(g,S): worst |L_S - c| {worst_ls:.1e}, worst residual {worst_res:.1e}"));
    report("6", "closed-form scalar regressions", ok, lines.join("; "));
    assert!(ok);
}

#[test]
fn criterion_7_classification_regressions() {
    let tol = SUITE_TOL;
    let mut bad = Vec::new();
    let classify_spec = |s: &PrincipalSpectrum| classify(&build_point(s).unwrap(), tol);

    let c = classify_spec(&catalog::clifford(2, 4, 1.0, PI / 3.0).unwrap());
    if !(c.roter.value && !c.quasi_einstein.value && c.partially_einstein.value) {
        bad.push("clifford(2,4,1,pi/3) should be Roter, non-quasi-Einstein, partially Einstein");
    }
    let phi = c.roter_coeffs().map(|r| r.0).unwrap_or(f64::NAN);
    if rel_scalar(phi, 0.75) > ORACLE_TOL {
        bad.push("clifford(2,4,1,pi/3) phi should be 3/4");
    }
    let c = classify_spec(&catalog::clifford(2, 4, 1.0, PI / 4.0).unwrap());
    if !c.einstein.value {
        bad.push("clifford(2,4,1,pi/4) should be Einstein");
    }
    let mut l_r_err = 0.0f64;
    for (n, l0, l1, cc) in [(5, 2.0, 2.0, 1.0), (5, 1.0, 2.0, 1.0), (6, 1.0, -1.0, 0.7), (4, 1.5, -0.5, -1.0)] {
        let c = classify_spec(&catalog::type_two(n, l0, l1, cc).unwrap());
        if !(c.pseudosymmetric.value && c.two_quasi_einstein.value) {
            bad.push("type_two should be pseudosymmetric and 2-quasi-Einstein");
        }
        l_r_err = l_r_err.max((c.l_r.unwrap_or(f64::NAN) - cc).abs() / cc.abs().max(1.0));
    }
    if !(l_r_err <= ORACLE_TOL) {
        bad.push("type_two L_R should equal c");
    }

    let spec = catalog::two_quasi_umbilical(5, 1.0).unwrap();
    let p = build_point(&spec).unwrap();
    let c = classify(&p, tol);
    if !(c.generalized_roter.value && !c.roter.value && !c.partially_einstein.value) {
        bad.push("two_quasi_umbilical(5,1) should be generalized Roter only");
    }
    // The six-term basis is rank-deficient here, so the fitted coefficients
    // are not unique; check instead that the predicted expansion reproduces R
    // and that the fitted combination is the same tensor.
    let (n, eps, t) = (p.dim(), p.epsilon(), p.tau);
    let (r1, r0, cc) = (p.rho1, p.rho0, p.c());
    let w = eps / (t * t);
    let predicted = [w, -w * r1, w * r1 * r1, -w * r0, w * r0 * r1, w * r0 * r0 + cc];
    let g = p.g();
    let kn = |a: &SymTensor2, b: &SymTensor2| kn_product(a, b).unwrap();
    let basis = [
        kn(&p.s2, &p.s2).scaled(0.5),
        kn(&p.s, &p.s2),
        kn(&p.s, &p.s).scaled(0.5),
        kn(g, &p.s2),
        kn(g, &p.s),
        kn(g, g).scaled(0.5),
    ];
    let combine = |coef: &[f64]| {
        let mut acc = CurvTensor4::zeros(n);
        for (ci, b) in coef.iter().zip(&basis) {
            acc = &acc + &b.scaled(*ci);
        }
        acc
    };
    let pred_err = relative_diff(&combine(&predicted), &p.r);
    let fit_err = relative_diff(&combine(&c.groter_fit.coefficients), &combine(&predicted));
    if !(pred_err <= GROTER_TOL && fit_err <= GROTER_TOL) {
        bad.push("generalized Roter expansion does not reproduce R");
    }
    let ok = bad.is_empty();
    report(
        "7",
        "classification regressions",
        ok,
        format!(
            "clifford phi={phi:.12}; type_two worst |L_R - c| {l_r_err:.1e}; two_quasi_umbilical(5,1) expansion error {pred_err:.1e}, fit vs expansion {fit_err:.1e} (basis rank {}){}",
            c.groter_fit.rank,
            if ok { String::new() } else { format!("; failures: {bad:?}") }
        ),
    );
    assert!(ok, "{bad:?}");
}

/// Pass/fail pattern of one point: every identity outcome and every class flag.
fn outcomes(p: &PointGeometry, tol: f64) -> Vec<(String, Option<bool>)> {
    let d = Derived::new(p);
    let suite = run_suite_with(&d, tol);
    let cls: ClassificationReport = classify_with(p, &d, tol);
    let mut out: Vec<(String, Option<bool>)> = suite
        .reports
        .iter()
        .map(|r| (r.identity_id.clone(), r.passes(tol)))
        .collect();
    for name in CLASS_NAMES {
        out.push((name.to_string(), cls.flag(name).map(|f| f.value)));
    }
    out
}

fn diff_outcomes(a: &[(String, Option<bool>)], b: &[(String, Option<bool>)]) -> Vec<String> {
    a.iter()
        .zip(b)
        .filter(|(x, y)| x.1 != y.1)
        .map(|(x, y)| format!("{}: {:?} -> {:?}", x.0, x.1, y.1))
        .collect()
}

#[test]
fn criterion_8_frame_and_scale_covariance() {
    let start = Instant::now();
    let tol = SUITE_TOL;
    let mut specs: Vec<PrincipalSpectrum> = catalog_entries().into_iter().map(|e| e.spectrum).collect();
    let mut rng = sampling::rng(8);
    for n in [4, 5] {
        specs.push(sampling::three_curvature(&mut rng, n));
    }
    let lorentz = PrincipalSpectrum::new(
        4,
        -0.5,
        -1.0,
        Some(vec![-1.0, 1.0, 1.0, 1.0]),
        vec![Curvature::new(0.8, 1), Curvature::new(-1.2, 2), Curvature::new(2.0, 1)],
    )
    .unwrap();
    specs.push(lorentz);

    let mut changes = Vec::new();
    let mut congruences = 0;
    let mut scalings = 0;
    for (i, spec) in specs.iter().enumerate() {
        let base = outcomes(&build_point(spec).unwrap(), tol);
        // 20 random congruences spread over the points, plus two per point
        // for the larger catalog entries.
        let per_point = if i < 6 { 2 } else { 1 };
        for _ in 0..per_point {
            let l: Congruence = sampling::congruence(&mut rng, spec.dim());
            let p = build_point_with(spec, tol, Some(&l)).unwrap();
            for d in diff_outcomes(&base, &outcomes(&p, tol)) {
                changes.push(format!("congruence on {}: {d}", label(spec)));
            }
            congruences += 1;
        }
        for s in [1e-3, 1e3] {
            let scaled = spec.scaled(s).unwrap();
            let p = build_point_with(&scaled, tol, None).unwrap();
            for d in diff_outcomes(&base, &outcomes(&p, tol)) {
                changes.push(format!("scale {s:e} on {}: {d}", label(spec)));
            }
            scalings += 1;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = changes.is_empty() && congruences >= 20;
    report(
        "8",
        "frame and scale covariance of all outcomes",
        ok,
        format!(
            "{} points, {congruences} congruences, {scalings} scalings, {} outcome changes, {elapsed:.2}s",
            specs.len(),
            changes.len()
        ),
    );
    assert!(ok, "{changes:#?}");
}
