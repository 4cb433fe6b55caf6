use hardy_robin::catalog::{lookup, CaseParams};
use hardy_robin::derivation::derive_potentials;
use hardy_robin::field::{check_gradient, check_hessian, Field, Order};
use hardy_robin::geometry::{self, Domain, Face, QuadratureSpec};
use proptest::prelude::*;

fn leaf(n: usize) -> impl Strategy<Value = Field> {
    prop_oneof![
        (0..n).prop_map(Field::coord),
        (-1.0..1.0f64).prop_map(Field::constant),
        Just(Field::norm_squared(n)),
        Just(Field::radius() * Field::radius() + 0.5),
    ]
}

/// Random trees of depth ≤ 5 that are smooth on all of ℝⁿ.
fn tree(n: usize) -> impl Strategy<Value = Field> {
    leaf(n).prop_recursive(5, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a / (b.clone() * b + 1.0)),
            (inner.clone(), -2.0..2.0f64).prop_map(|(a, e)| (a.clone() * a + 1.0).powf(e)),
            (inner.clone(), 0..4i32).prop_map(|(a, k)| a.powf(k as f64)),
            inner.clone().prop_map(|a| (a * 0.3).exp()),
            inner.clone().prop_map(|a| (a * 0.3).sinh()),
            inner.clone().prop_map(|a| (a * 0.3).cosh()),
            inner.clone().prop_map(|a| (a.clone() * a + 1.0).ln()),
            (inner.clone(), -2.0..2.0f64, -1.0..1.0f64).prop_map(|(a, c, o)| Field::affine(o, vec![(c, a)])),
        ]
    })
}

fn point(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jets_match_finite_differences((n, f, x) in (2usize..5).prop_flat_map(|n| (Just(n), tree(n), point(n)))) {
        let v = f.value(&x).unwrap();
        prop_assume!(v.is_finite() && v.abs() < 1e3);
        let jet = f.eval(&x, Order::Hessian).unwrap();
        prop_assume!(jet.gradient.iter().all(|g| g.abs() < 1e3));
        prop_assert_eq!(jet.gradient.len(), n);
        prop_assert!(check_gradient(&f, &x, 1e-5).unwrap() < 1e-5);
        prop_assert!(check_hessian(&f, &x, 1e-4).unwrap() < 1e-3);
    }

    #[test]
    fn printed_trees_parse_back((f, x) in (2usize..5).prop_flat_map(|n| (tree(n), point(n)))) {
        let g: Field = f.to_string().parse().unwrap();
        prop_assert_eq!(g.to_string(), f.to_string());
        let (a, b) = (f.value(&x), g.value(&x));
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert!(a == b || (a.is_nan() && b.is_nan()));
        }
    }

    /// `b` of the power case is homogeneous of degree `α − p`.
    #[test]
    fn power_potential_scales(draw in 0u64..500, lambda in 0.2..0.95f64) {
        let e = lookup("power").unwrap();
        let p = e.sample_params(1, draw);
        let case = e.build(&p).unwrap();
        let dp = case.potentials().unwrap();
        let x: Vec<f64> = (0..p.n).map(|i| 0.4 * p.radius * ((i as f64 + 1.0) / p.n as f64 - 0.45)).collect();
        let y: Vec<f64> = x.iter().map(|v| v * lambda).collect();
        let (bx, by) = (dp.b(&x).unwrap(), dp.b(&y).unwrap());
        let want = lambda.powf(p.alpha - p.p) * bx;
        prop_assert!((by - want).abs() <= 1e-9 * want.abs().max(1e-300), "{by} vs {want}");
    }

    /// Derived `b` and `β` do not depend on the scale of `u`.
    #[test]
    fn potentials_ignore_scale_of_u(id_idx in 0usize..16, c in 0.1..10.0f64) {
        let entry = &hardy_robin::catalog::registry()[id_idx];
        let case = entry.build(&entry.default_params()).unwrap();
        let d = &case.domain;
        let a = derive_potentials(&case.a, &case.u, case.p(), d).unwrap();
        let b = derive_potentials(&case.a, &(case.u.clone() * c), case.p(), d).unwrap();
        for x in hardy_robin::derivation::halton_points(d, 10, 9) {
            let (u, v) = (a.b(&x).unwrap(), b.b(&x).unwrap());
            prop_assert!((u - v).abs() <= 1e-9 * (1.0 + u.abs()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// `∫ Δg = ∫ ∂_ν g` on balls.
    #[test]
    fn divergence_theorem(n in 2usize..6, c in -1.0..1.0f64, radius in 0.5..2.0f64, seed in 0u64..1000) {
        let d = Domain::ball(n, radius).unwrap();
        let g = (Field::coord(0) * c).exp() * (Field::norm_squared(n) * 0.3 + 1.0);
        let q = QuadratureSpec::monte_carlo(100_000).with_seed(seed);
        let lap = geometry::integrate_interior(|x: &[f64]| Ok(g.eval(x, Order::Hessian)?.laplacian().unwrap()), &d, &q, 0.0).unwrap();
        let flux = geometry::integrate_boundary(
            |x: &[f64]| {
                let j = g.eval(x, Order::Gradient)?;
                Ok(j.gradient.iter().zip(x).map(|(g, x)| g * x).sum::<f64>() / radius)
            },
            &d,
            Face::Sphere,
            &q,
            0.0,
        )
        .unwrap();
        let se = (lap.error_estimate.powi(2) + flux.error_estimate.powi(2)).sqrt();
        prop_assert!((lap.value - flux.value).abs() < 5.0 * se, "{} vs {} (se {se})", lap.value, flux.value);
    }

    /// Monte Carlo estimates of `|{|x| < R/2}|` agree with the exact volume.
    #[test]
    fn inner_ball_volume(n in 2usize..7, seed in 0u64..1000) {
        let d = Domain::ball(n, 1.0).unwrap();
        let q = QuadratureSpec::monte_carlo(50_000).with_seed(seed);
        let r = geometry::integrate_interior(|x: &[f64]| Ok(if geometry::norm(x) < 0.5 { 1.0 } else { 0.0 }), &d, &q, 0.0).unwrap();
        let exact = geometry::unit_ball_volume(n) * 0.5f64.powi(n as i32);
        prop_assert!((r.value - exact).abs() < 5.0 * r.error_estimate);
    }
}

#[test]
fn case_params_round_trip_through_overrides() {
    let base = CaseParams::default();
    let o = hardy_robin::catalog::ParamOverrides { p: Some(3.0), ..Default::default() };
    assert_eq!(o.apply(base).p, 3.0);
    assert_eq!(o.apply(base).n, base.n);
}
