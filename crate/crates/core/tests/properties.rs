//! Property-based spot checks over adversarial (shrinkable) inputs,
//! complementing the seeded mass suites: proptest explores corner cases
//! such as tiny or large coordinates and reduces failures to minimal
//! witnesses.

use proptest::prelude::*;

use equator_core::harness::cloud::CloudSource;
use equator_core::{
    full_quotient_representative, h_embedding, involution_t, is_odd_bp16, q_k, q_s,
    random_automorphism, region_contains, sample_orbit_space, signed_action, transition,
    AlgebraElement, AlgebraTag, BundleParams, Chart, ChartPoint, EquatorPoint, Sign,
    SignedSymmetry, SpherePoint,
};

fn coeff() -> impl Strategy<Value = f64> {
    prop_oneof![
        4 => -8.0..8.0f64,
        1 => -1e-3..1e-3f64,
    ]
}

fn element(tag: AlgebraTag) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec(coeff(), tag.dim())
        .prop_map(move |v| AlgebraElement::from_coeffs(tag, &v))
}

fn nonzero_element(tag: AlgebraTag) -> impl Strategy<Value = AlgebraElement> {
    element(tag).prop_filter("norm bounded away from zero", |x| x.norm() > 1e-2)
}

fn tag() -> impl Strategy<Value = AlgebraTag> {
    prop_oneof![Just(AlgebraTag::Quaternion), Just(AlgebraTag::Octonion)]
}

fn chart() -> impl Strategy<Value = Chart> {
    prop_oneof![Just(Chart::One), Just(Chart::Two)]
}

fn element_pair() -> impl Strategy<Value = (AlgebraElement, AlgebraElement)> {
    tag().prop_flat_map(|t| (element(t), element(t)))
}

/// Unit sphere point of Lambda + Im Lambda built from free coordinates.
fn sphere_point() -> impl Strategy<Value = SpherePoint> {
    tag()
        .prop_flat_map(|t| (nonzero_element(t), element(t)))
        .prop_filter_map("normalizable to the sphere", |(a, c_raw)| {
            let c = c_raw.im();
            let norm = (a.norm_sq() + c.norm_sq()).sqrt();
            if norm < 1e-2 {
                return None;
            }
            SpherePoint::new(a * (1.0 / norm), c * (1.0 / norm)).ok()
        })
}

/// Chart point with a generic base coordinate and unit fiber coordinate.
fn chart_point() -> impl Strategy<Value = ChartPoint> {
    tag()
        .prop_flat_map(|t| (chart(), nonzero_element(t), nonzero_element(t)))
        .prop_map(|(chart, base, fiber_raw)| {
            let fiber = fiber_raw * (1.0 / fiber_raw.norm());
            ChartPoint::new(chart, base, fiber).expect("fiber is normalized")
        })
}

/// Equator-sphere point built by projecting a free fiber coordinate onto
/// the chart's equator condition.
fn equator_point() -> impl Strategy<Value = EquatorPoint> {
    tag()
        .prop_flat_map(|t| (chart(), nonzero_element(t), nonzero_element(t)))
        .prop_filter_map(
            "projectable onto the equator",
            |(chart, base, fiber_raw)| {
                let fiber = match chart {
                    Chart::One => fiber_raw.im(),
                    Chart::Two => {
                        let b_unit = base * (1.0 / base.norm());
                        fiber_raw - b_unit * (b_unit.conjugate() * fiber_raw).re()
                    }
                };
                if fiber.norm() < 1e-2 {
                    return None;
                }
                let fiber = fiber * (1.0 / fiber.norm());
                EquatorPoint::new(ChartPoint::new(chart, base, fiber).ok()?).ok()
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn norm_is_multiplicative((x, y) in element_pair()) {
        let lhs = (x * y).norm();
        let rhs = x.norm() * y.norm();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs));
    }

    #[test]
    fn conjugation_reverses_products((x, y) in element_pair()) {
        let lhs = (x * y).conjugate();
        let rhs = y.conjugate() * x.conjugate();
        prop_assert!(lhs.dist(&rhs) <= 1e-10 * (1.0 + x.norm() * y.norm()));
    }

    #[test]
    fn norms_compose_with_inverse((x, _) in element_pair()) {
        prop_assume!(x.norm() > 1e-2);
        let inv = x.inverse().unwrap();
        let residual = (x * inv).dist(&AlgebraElement::one(x.tag()));
        prop_assert!(residual <= 1e-10);
    }

    #[test]
    fn transition_round_trips(p in chart_point(), h in -5i32..=6) {
        let params = BundleParams::from_h(p.tag(), h);
        let base_norm = p.first().norm();
        prop_assume!(base_norm > 1e-2 && base_norm < 1e2);
        let there = transition(&params, &p).unwrap();
        prop_assert_eq!(there.chart(), p.chart().other());
        let back = transition(&params, &there).unwrap();
        // Relative bound: the inversion u -> u/|u|^2 amplifies rounding
        // near the outer radius, and u^h compounds it |h| times.
        prop_assert!(back.dist(&p) <= 1e-9 * (1.0 + base_norm + base_norm.powi(h.abs() + 1)));
    }

    #[test]
    fn involution_squares_to_identity(p in chart_point()) {
        prop_assert!(involution_t(&involution_t(&p)).dist(&p) <= 1e-12);
    }

    #[test]
    fn f_is_involution_antisymmetric(p in chart_point()) {
        // T reverses the sign of the height function.
        let f = equator_core::f_value(&p);
        let f_t = equator_core::f_value(&involution_t(&p));
        prop_assert!((f + f_t).abs() <= 1e-12 * (1.0 + f.abs()));
    }

    #[test]
    fn round_quotient_lands_in_region(p in sphere_point()) {
        prop_assert!(region_contains(&q_s(&p), 1e-10));
    }

    #[test]
    fn representative_is_idempotent_on_images(p in sphere_point()) {
        let image = q_s(&p);
        let rep = full_quotient_representative(&image).unwrap();
        let again = full_quotient_representative(&rep).unwrap();
        prop_assert!(rep.dist(&again) == 0.0);
        prop_assert!(rep.y >= 0.0);
    }

    #[test]
    fn antipode_reflects_the_quotient(p in sphere_point()) {
        let direct = q_s(&p.antipode());
        let reflected = equator_core::z2_orbit_action(&q_s(&p));
        prop_assert!(direct.dist(&reflected) <= 1e-12);
    }

    #[test]
    fn signed_action_composes(t in tag(), seed in any::<u64>(), p in sphere_point()) {
        prop_assume!(p.tag() == t);
        let g1 = random_automorphism(t, seed);
        let g2 = random_automorphism(t, seed.wrapping_add(1));
        for (s1, s2) in [
            (Sign::Plus, Sign::Plus),
            (Sign::Plus, Sign::Minus),
            (Sign::Minus, Sign::Minus),
        ] {
            let a = SignedSymmetry::new(g1, s1);
            let b = SignedSymmetry::new(g2, s2);
            let sequential = signed_action(&a, &signed_action(&b, &p));
            let composed = signed_action(&a.compose(&b), &p);
            prop_assert!(sequential.dist(&composed) <= 1e-12);
        }
    }

    #[test]
    fn parity_has_period_four(h in -1000i64..1000) {
        prop_assert_eq!(is_odd_bp16(h), is_odd_bp16(h + 4));
        prop_assert_eq!(is_odd_bp16(h), (h * (h - 1) / 2).rem_euclid(2) == 1);
    }

    #[test]
    fn cloud_points_stay_in_region(n in 1u64..64, seed in any::<u64>()) {
        let cloud =
            sample_orbit_space(AlgebraTag::Octonion, CloudSource::Exotic(3), n, seed).unwrap();
        prop_assert_eq!(cloud.len(), n as usize);
        for pt in &cloud {
            prop_assert!(region_contains(pt, 1e-10));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quotients_agree_on_constructed_equator_points(p in equator_point()) {
        // Strategy-built equator points (not the library sampler) feed the
        // chart quotient; its value must match the round quotient of the
        // embedded point.
        let through_chart = q_k(&p);
        let through_sphere = q_s(&h_embedding(&p));
        prop_assert!(through_chart.dist(&through_sphere) <= 1e-10);
    }

    #[test]
    fn equator_condition_survives_gluing(p in equator_point(), h in -3i32..=4) {
        let base_norm = p.chart_point().first().norm();
        prop_assume!(base_norm > 1e-2);
        let params = BundleParams::from_h(p.tag(), h);
        let moved = transition(&params, p.chart_point()).unwrap();
        prop_assert!(equator_core::equator_residual(&moved) <= 1e-10);
    }
}
