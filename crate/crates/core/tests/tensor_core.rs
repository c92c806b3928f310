mod common;

use common::{kn_oracle, relative_diff, tachibana_oracle2};
use curvlab::sampling;
use curvlab::tensor::{
    derivation_action2, derivation_action4, fit_in_span, gauss_tensor, kn_product, kn_wedge4,
    mat_power, tachibana2, tachibana4, trace, weyl, Congruence, CurvTensor4, DenseTensor, Frame,
    SymTensor2,
};
use curvlab::Error;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn sym(n: usize) -> impl Strategy<Value = SymTensor2> {
    prop::collection::vec(-2.0f64..2.0, n * n).prop_map(move |v| {
        SymTensor2::from_fn(n, |i, j| 0.5 * (v[i * n + j] + v[j * n + i]))
    })
}

fn metric_frame(n: usize) -> impl Strategy<Value = Frame> {
    (
        prop::collection::vec(prop::bool::weighted(0.3), n),
        any::<u64>(),
    )
        .prop_map(move |(neg, seed)| {
            let sig: Vec<f64> = neg.iter().map(|&b| if b { -1.0 } else { 1.0 }).collect();
            let l = sampling::congruence(&mut sampling::rng(seed), n);
            Frame::diagonal(&sig).unwrap().congruence(&l).unwrap()
        })
}

fn dim_and<T: std::fmt::Debug, S: Strategy<Value = T>>(
    f: impl Fn(usize) -> S + Clone + 'static,
) -> impl Strategy<Value = (usize, T)> {
    (3usize..=5).prop_flat_map(move |n| (Just(n), f(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kn_product_is_symmetric_and_a_curvature_tensor((_n, (e, f)) in dim_and(|n| (sym(n), sym(n)))) {
        let ef = kn_product(&e, &f).unwrap();
        let fe = kn_product(&f, &e).unwrap();
        prop_assert!(relative_diff(&ef, &fe) < 1e-15);
        prop_assert!(ef.is_generalized_curvature(1e-13));
        prop_assert!(relative_diff(&ef, &kn_oracle(&e, &f)) < 1e-15);
    }

    #[test]
    fn tachibana_is_skew_in_the_appended_pair((n, (a, t)) in dim_and(|n| (sym(n), sym(n)))) {
        let q = tachibana2(&a, &t).unwrap();
        for i in 0..n { for j in 0..n { for x in 0..n { for y in 0..n {
            prop_assert!((q.get(i, j, x, y) + q.get(i, j, y, x)).abs() < 1e-13);
        }}}}
        prop_assert!(relative_diff(&q, &tachibana_oracle2(&a, &t)) < 1e-14);
    }

    #[test]
    fn products_commute_with_congruence(
        (n, (e, f, seed)) in dim_and(|n| (sym(n), sym(n), any::<u64>()))
    ) {
        let frame = Frame::euclidean(n).unwrap();
        let l = sampling::congruence(&mut sampling::rng(seed), n);
        let moved = frame.congruence(&l).unwrap();
        let (el, fl) = (e.congruence(&l).unwrap(), f.congruence(&l).unwrap());
        // Q(E, E∧E) vanishes identically, so pair E with F∧F instead
        let r = kn_product(&f, &f).unwrap();

        let kn_then = kn_product(&e, &f).unwrap().congruence(&l).unwrap();
        prop_assert!(relative_diff(&kn_then, &kn_product(&el, &fl).unwrap()) < 1e-12);

        let q_then = tachibana4(&e, &r).unwrap().congruence(&l).unwrap();
        let q_now = tachibana4(&el, &r.congruence(&l).unwrap()).unwrap();
        prop_assert!(relative_diff(&q_then, &q_now) < 1e-12);

        let a_then = derivation_action2(&r, &f, &frame).unwrap().congruence(&l).unwrap();
        let a_now = derivation_action2(&r.congruence(&l).unwrap(), &fl, &moved).unwrap();
        prop_assert!(relative_diff(&a_then, &a_now) < 1e-11);
    }

    #[test]
    fn gauss_action_is_the_metric_tachibana_tensor(
        (_n, (frame, t)) in dim_and(|n| (metric_frame(n), sym(n)))
    ) {
        let g4 = gauss_tensor(&frame);
        let r = kn_product(&t, &t).unwrap();
        let lhs = derivation_action4(&g4, &r, &frame).unwrap();
        let rhs = tachibana4(frame.metric(), &r).unwrap();
        prop_assert!(relative_diff(&lhs, &rhs) < 1e-13);
        let lhs2 = derivation_action2(&g4, &t, &frame).unwrap();
        prop_assert!(relative_diff(&lhs2, &tachibana2(frame.metric(), &t).unwrap()) < 1e-13);
    }

    #[test]
    fn weyl_tensor_is_totally_trace_free(
        (n, (frame, seed)) in (4usize..=6).prop_flat_map(|n| (Just(n), (metric_frame(n), any::<u64>())))
    ) {
        let mut rng = sampling::rng(seed);
        let (e, f) = (sampling::symmetric(&mut rng, n), sampling::symmetric(&mut rng, n));
        let r = &kn_product(&e, &f).unwrap() + &kn_product(&f, &f).unwrap();
        let s = r.ricci_contraction(&frame).unwrap();
        let kappa = trace(&s, &frame);
        let c = weyl(&r, &s, kappa, &frame).unwrap();
        let cs = c.ricci_contraction(&frame).unwrap();
        prop_assert!(cs.norm() <= 1e-12 * (s.norm() + r.norm()));
    }

    #[test]
    fn fit_recovers_coefficients_and_scales_linearly(
        (_n, (b1, b2, b3)) in dim_and(|n| (sym(n), sym(n), sym(n))),
        c in prop::collection::vec(-3.0f64..3.0, 3),
        s in 1e-3f64..1e3,
    ) {
        let target = &(&b1.scaled(c[0]) + &b2.scaled(c[1])) + &b3.scaled(c[2]);
        let fit = fit_in_span(&target, &[("a", &b1), ("b", &b2), ("c", &b3)]).unwrap();
        prop_assume!(!fit.underdetermined);
        prop_assert!(fit.residual < 1e-12);
        for (x, y) in fit.coefficients.iter().zip(&c) {
            prop_assert!((x - y).abs() < 1e-8 * (1.0 + y.abs()));
        }
        // scaling the target scales the coefficients; scaling a basis tensor
        // divides its coefficient
        let scaled = fit_in_span(&target.scaled(s), &[("a", &b1), ("b", &b2.scaled(s)), ("c", &b3)]).unwrap();
        prop_assert!((scaled.coefficients[0] - s * fit.coefficients[0]).abs() < 1e-8 * s * (1.0 + c[0].abs()));
        prop_assert!((scaled.coefficients[1] - fit.coefficients[1]).abs() < 1e-8 * (1.0 + c[1].abs()));
    }

    #[test]
    fn kn_wedge_with_metric_pair_reduces_to_tachibana_identity(
        (_n, (e, f)) in dim_and(|n| (sym(n), sym(n)))
    ) {
        // E∧Q(E,F) = −½ Q(F, E∧E)
        let lhs = kn_wedge4(&e, &tachibana2(&e, &f).unwrap()).unwrap();
        let rhs = tachibana4(&f, &kn_product(&e, &e).unwrap()).unwrap().scaled(-0.5);
        prop_assert!(relative_diff(&lhs, &rhs) < 1e-13);
    }
}

#[test]
fn mat_power_composes_through_the_inverse_metric() {
    let frame = Frame::diagonal(&[-1.0, 1.0, 1.0, 2.0]).unwrap();
    let mut rng = sampling::rng(9);
    let a = sampling::symmetric(&mut rng, 4);
    let gi = frame.inverse_metric().to_matrix();
    let am = a.to_matrix();
    let expect = &am * &gi * &am * &gi * &am;
    let got = mat_power(&a, 3, &frame).unwrap().to_matrix();
    assert!((got - expect).norm() < 1e-13);
    assert_eq!(mat_power(&a, 0, &frame).unwrap_err(), Error::InvalidPower(0));
    let tr = (0..4).map(|i| (&gi * &am)[(i, i)]).sum::<f64>();
    assert!((trace(&a, &frame) - tr).abs() < 1e-14);
}

#[test]
fn dimension_and_metric_errors() {
    let e3 = SymTensor2::identity(3);
    let e4 = SymTensor2::identity(4);
    assert!(matches!(
        kn_product(&e3, &e4),
        Err(Error::DimensionMismatch { expected: 3, found: 4 })
    ));
    assert!(matches!(tachibana2(&e3, &e4), Err(Error::DimensionMismatch { .. })));
    let sing = SymTensor2::from_fn(3, |i, j| if i == 0 || j == 0 { 0.0 } else { 1.0 });
    assert_eq!(Frame::new(sing).unwrap_err(), Error::SingularMetric);
    assert!(matches!(Frame::euclidean(2), Err(Error::DimensionTooSmall { .. })));
    assert!(Congruence::new(DMatrix::zeros(3, 3)).is_err());
    let f3 = Frame::euclidean(3).unwrap();
    let r3 = CurvTensor4::zeros(3);
    assert!(matches!(
        weyl(&r3, &e3, 0.0, &f3),
        Err(Error::DimensionTooSmall { required: 4, .. })
    ));
    assert!(fit_in_span::<SymTensor2>(&e3, &[]).is_err());
}

#[test]
fn rank_deficient_fit_reports_underdetermined() {
    let a = SymTensor2::diagonal(&[1.0, 2.0, 3.0]);
    let b = a.scaled(2.0);
    let fit = fit_in_span(&a, &[("a", &a), ("b", &b)]).unwrap();
    assert!(fit.underdetermined);
    assert_eq!(fit.rank, 1);
    assert!(fit.residual < 1e-14);
    // minimum-norm split in column-normalised coordinates: equal weight on
    // the two unit columns
    let (x, y) = (fit.coefficients[0], fit.coefficients[1]);
    assert!((x + 2.0 * y - 1.0).abs() < 1e-14);
    assert!((x - 0.5).abs() < 1e-12);
}

#[test]
fn symmetric_parsing_rejects_asymmetry() {
    let rows = vec![vec![1.0, 2.0, 0.0], vec![2.5, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
    assert!(matches!(
        SymTensor2::try_from_rows(&rows),
        Err(Error::NotSymmetric { .. })
    ));
    let ok = vec![vec![1.0, 2.0, 0.0], vec![2.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
    assert_eq!(SymTensor2::try_from_rows(&ok).unwrap().get(1, 0), 2.0);
}
