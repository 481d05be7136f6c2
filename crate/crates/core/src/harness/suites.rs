//! Implementations of the verification suites.
//!
//! Every suite is a list of named checks; each check draws from its own RNG
//! stream, walks its samples, and records the worst residual together with a
//! replayable counterexample payload when the tolerance is exceeded.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{associator, AlgebraElement, AlgebraTag};
use crate::bundle::{
    davis_action, equator_residual, f_gradient_norm, f_value, involution_t, phi,
    random_equator_point_with, transition, transition_with_exponents, BundleParams, Chart,
    ChartPoint, EquatorPoint,
};
use crate::harness::cloud::{coverage, sample_cloud_with, CloudSource};
use crate::harness::{CheckResult, SuiteCtx, Tracker};
use crate::orbit::{
    h_embedding, key_lemma_residual, orbit_type, orbit_witness, q_k, q_k_unchecked, q_s,
    region_classification, z2_orbit_action, OrbitPoint, OrbitType,
};
use crate::sampling::{gaussian_element, gaussian_imaginary, unit_element, unit_imaginary};
use crate::symmetry::{
    automorphism_from_frames, conjugation_automorphism, random_automorphism_with,
    random_sphere_point, signed_action, Automorphism, Frame, Sign, SignedSymmetry, SpherePoint,
};

fn coeffs_json(x: &AlgebraElement) -> Value {
    json!(x.coeffs())
}

fn chart_json(p: &ChartPoint) -> Value {
    json!({
        "chart": match p.chart() { Chart::One => "one", Chart::Two => "two" },
        "first": coeffs_json(p.first()),
        "second": coeffs_json(p.second()),
    })
}

fn sphere_json(p: &SpherePoint) -> Value {
    json!({ "a": coeffs_json(p.a()), "c": coeffs_json(p.c()) })
}

fn orbit_json(p: &OrbitPoint) -> Value {
    json!([p.x, p.y, p.z])
}

fn uniform_radius(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo {
        rng.random_range(lo..hi)
    } else {
        lo
    }
}

/// Generic (not necessarily equatorial) chart point in the gluing overlap.
fn overlap_point(
    rng: &mut ChaCha8Rng,
    tag: AlgebraTag,
    chart: Chart,
    radius_range: (f64, f64),
) -> ChartPoint {
    let radius = uniform_radius(rng, radius_range);
    let first = unit_element(rng, tag) * radius;
    let second = unit_element(rng, tag);
    ChartPoint::new(chart, first, second).expect("sampled sphere factor is unit")
}

fn alternating_chart(i: u64) -> Chart {
    if i.is_multiple_of(2) {
        Chart::One
    } else {
        Chart::Two
    }
}

// ---------------------------------------------------------------------------
// algebra
// ---------------------------------------------------------------------------

pub(super) fn algebra(ctx: &mut SuiteCtx) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    for tag in ctx.config.tags() {
        checks.push(norm_multiplicativity(ctx, tag));
        checks.push(conjugation_anti_automorphism(ctx, tag));
        checks.push(match tag {
            AlgebraTag::Quaternion => quaternion_associativity(ctx),
            AlgebraTag::Octonion => octonion_alternativity(ctx),
        });
        checks.push(artin_two_generator(ctx, tag));
        checks.push(power_additivity(ctx, tag));
    }
    checks
}

fn norm_multiplicativity(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(format!("{tag}-norm-multiplicativity"), ctx.tol(1e-12));
    for i in 0..ctx.samples {
        let x = gaussian_element(&mut rng, tag);
        let y = gaussian_element(&mut rng, tag);
        let scale = 1.0 + x.norm() * y.norm();
        let residual = ((x * y).norm() - x.norm() * y.norm()).abs() / scale;
        t.observe(
            residual,
            || json!({"sample": i, "x": coeffs_json(&x), "y": coeffs_json(&y)}),
        );
    }
    t.into_check()
}

fn conjugation_anti_automorphism(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(
        format!("{tag}-conjugation-anti-automorphism"),
        ctx.tol(1e-12),
    );
    for i in 0..ctx.samples {
        let x = gaussian_element(&mut rng, tag);
        let y = gaussian_element(&mut rng, tag);
        let scale = 1.0 + x.norm() * y.norm();
        let residual = (x * y).conjugate().dist(&(y.conjugate() * x.conjugate())) / scale;
        t.observe(
            residual,
            || json!({"sample": i, "x": coeffs_json(&x), "y": coeffs_json(&y)}),
        );
    }
    t.into_check()
}

fn quaternion_associativity(ctx: &mut SuiteCtx) -> CheckResult {
    let tag = AlgebraTag::Quaternion;
    let mut rng = ctx.rng();
    let mut t = Tracker::new("quaternion-associativity", ctx.tol(1e-12));
    for i in 0..ctx.samples {
        let x = gaussian_element(&mut rng, tag);
        let y = gaussian_element(&mut rng, tag);
        let z = gaussian_element(&mut rng, tag);
        let scale = 1.0 + x.norm() * y.norm() * z.norm();
        let residual = associator(&x, &y, &z).norm() / scale;
        t.observe(residual, || {
            json!({
                "sample": i,
                "x": coeffs_json(&x),
                "y": coeffs_json(&y),
                "z": coeffs_json(&z),
            })
        });
    }
    t.into_check()
}

fn octonion_alternativity(ctx: &mut SuiteCtx) -> CheckResult {
    let tag = AlgebraTag::Octonion;
    let mut rng = ctx.rng();
    let mut t = Tracker::new("octonion-alternativity", ctx.tol(1e-12));
    for i in 0..ctx.samples {
        let x = gaussian_element(&mut rng, tag);
        let y = gaussian_element(&mut rng, tag);
        let left = associator(&x, &x, &y).norm() / (1.0 + x.norm_sq() * y.norm());
        let right = associator(&x, &y, &y).norm() / (1.0 + x.norm() * y.norm_sq());
        t.observe(
            left.max(right),
            || json!({"sample": i, "x": coeffs_json(&x), "y": coeffs_json(&y)}),
        );
    }
    t.into_check()
}

/// All parenthesizations of u^h q u^{−(h−1)} agree (Artin: the subalgebra
/// generated by u and q is associative).  Three evaluation trees are
/// compared: fully left-associated, right-associated around q, and a fold
/// that multiplies one factor of u at a time.
fn artin_two_generator(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(format!("{tag}-artin-two-generator"), ctx.tol(1e-10));
    for i in 0..ctx.samples {
        let h = (i % 11) as i32 - 5;
        let e = 1 - h;
        let u = gaussian_element(&mut rng, tag);
        let q = gaussian_element(&mut rng, tag);
        let uh = u.powi(h).expect("Gaussian sample is nonzero");
        let ue = u.powi(e).expect("Gaussian sample is nonzero");
        let left = (uh * q) * ue;
        let right = uh * (q * ue);
        let folded = fold_product(&u, h, &q, e);
        let scale = 1.0 + left.norm();
        let residual = (left.dist(&right).max(left.dist(&folded))) / scale;
        t.observe(residual, || {
            json!({
                "sample": i,
                "h": h,
                "u": coeffs_json(&u),
                "q": coeffs_json(&q),
            })
        });
    }
    t.into_check()
}

/// u^h q u^e evaluated one factor at a time, from the inside out.
fn fold_product(u: &AlgebraElement, h: i32, q: &AlgebraElement, e: i32) -> AlgebraElement {
    let u_inv = u.inverse().expect("Gaussian sample is nonzero");
    let mut acc = *q;
    let left = if h >= 0 { *u } else { u_inv };
    for _ in 0..h.unsigned_abs() {
        acc = left * acc;
    }
    let right = if e >= 0 { *u } else { u_inv };
    for _ in 0..e.unsigned_abs() {
        acc = acc * right;
    }
    acc
}

fn power_additivity(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(format!("{tag}-power-additivity"), ctx.tol(1e-10));
    for i in 0..ctx.samples {
        let x = gaussian_element(&mut rng, tag);
        let m = rng.random_range(-5..=5);
        let n = rng.random_range(-5..=5);
        let sum = x.powi(m + n).expect("Gaussian sample is nonzero");
        let split = x.powi(m).expect("nonzero") * x.powi(n).expect("nonzero");
        let residual = sum.dist(&split) / (1.0 + sum.norm());
        t.observe(
            residual,
            || json!({"sample": i, "m": m, "n": n, "x": coeffs_json(&x)}),
        );
    }
    t.into_check()
}

// ---------------------------------------------------------------------------
// automorphism
// ---------------------------------------------------------------------------

pub(super) fn automorphism(ctx: &mut SuiteCtx) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    for tag in ctx.config.tags() {
        checks.push(automorphism_multiplicativity(ctx, tag));
        checks.push(automorphism_conjugation_compat(ctx, tag));
        checks.push(automorphism_isometry(ctx, tag));
        if tag == AlgebraTag::Quaternion {
            checks.push(conjugation_vs_frames(ctx));
        }
    }
    checks
}

fn automorphism_multiplicativity(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(format!("{tag}-multiplicativity"), ctx.tol(1e-9));
    for i in 0..ctx.samples {
        let g = random_automorphism_with(tag, &mut rng);
        let x = gaussian_element(&mut rng, tag);
        let y = gaussian_element(&mut rng, tag);
        let residual = g.apply(&(x * y)).dist(&(g.apply(&x) * g.apply(&y)));
        t.observe(residual, || {
            json!({
                "sample": i,
                "matrix": json!(g.matrix()),
                "x": coeffs_json(&x),
                "y": coeffs_json(&y),
            })
        });
    }
    t.into_check()
}

fn automorphism_conjugation_compat(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(format!("{tag}-conjugation-compatibility"), ctx.tol(1e-10));
    for i in 0..ctx.samples {
        let g = random_automorphism_with(tag, &mut rng);
        let x = gaussian_element(&mut rng, tag);
        let residual = g.apply(&x.conjugate()).dist(&g.apply(&x).conjugate());
        t.observe(
            residual,
            || json!({"sample": i, "matrix": json!(g.matrix()), "x": coeffs_json(&x)}),
        );
    }
    t.into_check()
}

fn automorphism_isometry(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(format!("{tag}-isometry"), ctx.tol(1e-10));
    for i in 0..ctx.samples {
        let g = random_automorphism_with(tag, &mut rng);
        let x = gaussian_element(&mut rng, tag);
        let gx = g.apply(&x);
        let residual = (gx.norm() - x.norm())
            .abs()
            .max((gx.re() - x.re()).abs())
            .max((gx.im().norm() - x.im().norm()).abs());
        t.observe(
            residual,
            || json!({"sample": i, "matrix": json!(g.matrix()), "x": coeffs_json(&x)}),
        );
    }
    t.into_check()
}

/// On the quaternions the two constructions of the rotation group must
/// agree: conjugation by a unit p equals the frame map sending (i, j) to
/// (p i p⁻¹, p j p⁻¹).
fn conjugation_vs_frames(ctx: &mut SuiteCtx) -> CheckResult {
    let tag = AlgebraTag::Quaternion;
    let mut rng = ctx.rng();
    let mut t = Tracker::new("quaternion-conjugation-vs-frames", ctx.tol(1e-9));
    for i in 0..ctx.samples {
        let p = unit_element(&mut rng, tag);
        let g1 = conjugation_automorphism(&p).expect("p is a unit quaternion");
        let p_inv = p.inverse().expect("unit");
        let images = [
            p * AlgebraElement::basis(tag, 1) * p_inv,
            p * AlgebraElement::basis(tag, 2) * p_inv,
        ];
        let frame = Frame::new(tag, &images).expect("conjugation images form a frame");
        let g2 = automorphism_from_frames(&Frame::standard(tag), &frame);
        let mut residual: f64 = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                residual = residual.max((g1.matrix()[r][c] - g2.matrix()[r][c]).abs());
            }
        }
        t.observe(residual, || json!({"sample": i, "p": coeffs_json(&p)}));
    }
    t.into_check()
}

// ---------------------------------------------------------------------------
// bundle-welldef
// ---------------------------------------------------------------------------

pub(super) fn bundle_welldef(ctx: &mut SuiteCtx) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    for tag in ctx.config.tags() {
        for &k in &ctx.config.k_list.clone() {
            let params = BundleParams::from_k(tag, k).expect("config k values are odd");
            checks.push(involution_gluing_commute(ctx, &params));
            checks.push(davis_gluing_equivariance(ctx, &params));
            checks.push(f_chart_invariance(ctx, &params));
        }
        checks.push(f_critical_at_poles(ctx, tag));
        checks.push(f_regular_off_poles(ctx, tag));
        checks.push(involution_separation(ctx, tag));
    }
    checks
}

fn involution_gluing_commute(ctx: &mut SuiteCtx, params: &BundleParams) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(
        format!("{}-k{}-involution-gluing-commute", params.tag(), params.k()),
        ctx.tol(1e-9),
    );
    for i in 0..ctx.samples {
        let p = overlap_point(
            &mut rng,
            params.tag(),
            alternating_chart(i),
            ctx.config.radius_range,
        );
        let lhs = involution_t(&transition(params, &p).expect("overlap point"));
        let rhs = transition(params, &involution_t(&p)).expect("overlap point");
        t.observe(
            lhs.dist(&rhs),
            || json!({"sample": i, "k": params.k(), "point": chart_json(&p)}),
        );
    }
    t.into_check()
}

fn davis_gluing_equivariance(ctx: &mut SuiteCtx, params: &BundleParams) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(
        format!("{}-k{}-davis-gluing-equivariance", params.tag(), params.k()),
        ctx.tol(1e-9),
    );
    for i in 0..ctx.samples {
        let p = overlap_point(
            &mut rng,
            params.tag(),
            alternating_chart(i),
            ctx.config.radius_range,
        );
        let g = random_automorphism_with(params.tag(), &mut rng);
        let lhs = transition(params, &davis_action(&g, &p)).expect("overlap point");
        let rhs = davis_action(&g, &transition(params, &p).expect("overlap point"));
        t.observe(lhs.dist(&rhs), || {
            json!({
                "sample": i,
                "k": params.k(),
                "point": chart_json(&p),
                "matrix": json!(g.matrix()),
            })
        });
    }
    t.into_check()
}

fn f_chart_invariance(ctx: &mut SuiteCtx, params: &BundleParams) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(
        format!("{}-k{}-f-chart-invariance", params.tag(), params.k()),
        ctx.tol(1e-10),
    );
    for i in 0..ctx.samples {
        let p = overlap_point(
            &mut rng,
            params.tag(),
            alternating_chart(i),
            ctx.config.radius_range,
        );
        let residual =
            (f_value(&p) - f_value(&transition(params, &p).expect("overlap point"))).abs();
        t.observe(
            residual,
            || json!({"sample": i, "k": params.k(), "point": chart_json(&p)}),
        );
    }
    t.into_check()
}

fn f_critical_at_poles(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut t = Tracker::new(format!("{tag}-f-critical-at-poles"), ctx.tol(1e-5));
    for sign in [1.0, -1.0] {
        let pole = ChartPoint::new(
            Chart::One,
            AlgebraElement::zero(tag),
            AlgebraElement::real(tag, sign),
        )
        .expect("pole is a chart point");
        t.observe(f_gradient_norm(&pole, 1e-4), || json!({"sign": sign}));
    }
    t.into_check()
}

/// Lower-bound check: away from (0, ±1) the differential of f has norm
/// bounded away from zero; witnessed at (0, i).
fn f_regular_off_poles(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let p = ChartPoint::new(
        Chart::One,
        AlgebraElement::zero(tag),
        AlgebraElement::basis(tag, 1),
    )
    .expect("chart point");
    let statistic = f_gradient_norm(&p, 1e-4);
    let threshold = ctx.tol(0.1);
    CheckResult {
        name: format!("{tag}-f-regular-off-poles"),
        max_residual: statistic,
        tolerance: threshold,
        pass: statistic > threshold,
        counterexample: None,
    }
}

/// Lower-bound check: the involution moves every sampled equator point by a
/// definite distance (freeness).
fn involution_separation(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let params = BundleParams::from_h(tag, 1);
    let mut min_dist = f64::INFINITY;
    for i in 0..ctx.samples {
        let p = random_equator_point_with(
            &params,
            &mut rng,
            alternating_chart(i),
            ctx.config.radius_range,
        )
        .expect("valid radius range");
        min_dist = min_dist.min(p.chart_point().dist(&involution_t(p.chart_point())));
    }
    let threshold = ctx.tol(1e-6);
    CheckResult {
        name: format!("{tag}-involution-separation"),
        max_residual: min_dist,
        tolerance: threshold,
        pass: min_dist > threshold,
        counterexample: None,
    }
}

// ---------------------------------------------------------------------------
// quotient-welldef
// ---------------------------------------------------------------------------

pub(super) fn quotient_welldef(ctx: &mut SuiteCtx) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    for tag in ctx.config.tags() {
        for &k in &ctx.config.k_list.clone() {
            let params = BundleParams::from_k(tag, k).expect("config k values are odd");
            checks.push(gluing_preserves_equator(ctx, &params));
            checks.push(quotient_chart_welldef(ctx, &params));
        }
        checks.push(phi_scalar_identity(ctx, tag));
        checks.push(equator_davis_invariance(ctx, tag));
        checks.push(round_action_invariance(ctx, tag));
    }
    checks
}

fn gluing_preserves_equator(ctx: &mut SuiteCtx, params: &BundleParams) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(
        format!("{}-k{}-gluing-preserves-equator", params.tag(), params.k()),
        ctx.tol(1e-10),
    );
    for i in 0..ctx.samples {
        let p = random_equator_point_with(
            params,
            &mut rng,
            alternating_chart(i),
            ctx.config.radius_range,
        )
        .expect("valid radius range");
        let moved = transition(params, p.chart_point()).expect("radius bounded away from zero");
        t.observe(
            equator_residual(&moved),
            || json!({"sample": i, "k": params.k(), "point": chart_json(p.chart_point())}),
        );
    }
    t.into_check()
}

fn quotient_chart_welldef(ctx: &mut SuiteCtx, params: &BundleParams) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(
        format!("{}-k{}-chart-welldef", params.tag(), params.k()),
        ctx.tol(1e-8),
    );
    for i in 0..ctx.samples {
        let p = random_equator_point_with(
            params,
            &mut rng,
            alternating_chart(i),
            ctx.config.radius_range,
        )
        .expect("valid radius range");
        let moved = transition(params, p.chart_point()).expect("radius bounded away from zero");
        let residual = q_k(&p).dist(&q_k_unchecked(&moved));
        t.observe(
            residual,
            || json!({"sample": i, "k": params.k(), "point": chart_json(p.chart_point())}),
        );
    }
    t.into_check()
}

/// The scalar identity φ(u/|u|²) / |u| = φ(u) underlying chart
/// well-definedness.
fn phi_scalar_identity(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(format!("{tag}-phi-scalar-identity"), ctx.tol(1e-12));
    for i in 0..ctx.samples {
        let u = gaussian_element(&mut rng, tag);
        let inverted = u * (1.0 / u.norm_sq());
        let residual = (phi(&inverted) / u.norm() - phi(&u)).abs();
        t.observe(residual, || json!({"sample": i, "u": coeffs_json(&u)}));
    }
    t.into_check()
}

fn equator_davis_invariance(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let params = BundleParams::from_h(tag, 1);
    let mut t = Tracker::new(format!("{tag}-equator-davis-invariance"), ctx.tol(1e-10));
    for i in 0..ctx.samples {
        let p = random_equator_point_with(
            &params,
            &mut rng,
            alternating_chart(i),
            ctx.config.radius_range,
        )
        .expect("valid radius range");
        let g = random_automorphism_with(tag, &mut rng);
        let moved = davis_action(&g, p.chart_point());
        let residual = q_k(&p).dist(&q_k_unchecked(&moved));
        t.observe(residual, || {
            json!({
                "sample": i,
                "point": chart_json(p.chart_point()),
                "matrix": json!(g.matrix()),
            })
        });
    }
    t.into_check()
}

fn round_action_invariance(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(format!("{tag}-round-action-invariance"), ctx.tol(1e-10));
    for i in 0..ctx.samples {
        let p = random_sphere_point(tag, &mut rng);
        let g = random_automorphism_with(tag, &mut rng);
        let moved = signed_action(&SignedSymmetry::new(g, Sign::Plus), &p);
        t.observe(
            q_s(&p).dist(&q_s(&moved)),
            || json!({"sample": i, "point": sphere_json(&p), "matrix": json!(g.matrix())}),
        );
    }
    t.into_check()
}

// ---------------------------------------------------------------------------
// key-lemma
// ---------------------------------------------------------------------------

pub(super) fn key_lemma(ctx: &mut SuiteCtx) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    let cloud_n = ctx.config.samples.unwrap_or(100_000);
    for tag in ctx.config.tags() {
        checks.push(key_identity(ctx, tag, Chart::One));
        checks.push(key_identity(ctx, tag, Chart::Two));
        checks.push(embedding_unit_norm(ctx, tag));
        checks.push(embedding_equivariance(ctx, tag));
        let round = sample_cloud_with(tag, CloudSource::Round, cloud_n, &mut ctx.rng());
        for &k in &ctx.config.k_list.clone() {
            checks.push(cloud_coverage(ctx, tag, k, &round, cloud_n));
        }
    }
    checks
}

fn key_identity(ctx: &mut SuiteCtx, tag: AlgebraTag, chart: Chart) -> CheckResult {
    let mut rng = ctx.rng();
    let params = BundleParams::from_h(tag, 1);
    let chart_name = match chart {
        Chart::One => "one",
        Chart::Two => "two",
    };
    let mut t = Tracker::new(format!("{tag}-chart-{chart_name}-identity"), ctx.tol(1e-12));
    for i in 0..ctx.samples {
        let p = random_equator_point_with(&params, &mut rng, chart, ctx.config.radius_range)
            .expect("valid radius range");
        t.observe(
            key_lemma_residual(&p),
            || json!({"sample": i, "point": chart_json(p.chart_point())}),
        );
    }
    t.into_check()
}

fn embedding_unit_norm(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let params = BundleParams::from_h(tag, 1);
    let mut t = Tracker::new(format!("{tag}-embedding-unit-norm"), ctx.tol(1e-10));
    for i in 0..ctx.samples {
        let p = random_equator_point_with(
            &params,
            &mut rng,
            alternating_chart(i),
            ctx.config.radius_range,
        )
        .expect("valid radius range");
        let s = h_embedding(&p);
        let residual = ((s.a().norm_sq() + s.c().norm_sq()).sqrt() - 1.0).abs();
        t.observe(
            residual,
            || json!({"sample": i, "point": chart_json(p.chart_point())}),
        );
    }
    t.into_check()
}

fn embedding_equivariance(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let params = BundleParams::from_h(tag, 1);
    let mut t = Tracker::new(format!("{tag}-embedding-equivariance"), ctx.tol(1e-9));
    for i in 0..ctx.samples {
        let p = random_equator_point_with(
            &params,
            &mut rng,
            alternating_chart(i),
            ctx.config.radius_range,
        )
        .expect("valid radius range");
        let g = random_automorphism_with(tag, &mut rng);
        let moved = EquatorPoint::new(davis_action(&g, p.chart_point()))
            .expect("the Davis action preserves the equator");
        let lhs = h_embedding(&moved);
        let rhs = signed_action(&SignedSymmetry::new(g, Sign::Plus), &h_embedding(&p));
        t.observe(lhs.dist(&rhs), || {
            json!({
                "sample": i,
                "point": chart_json(p.chart_point()),
                "matrix": json!(g.matrix()),
            })
        });
    }
    t.into_check()
}

/// The round and equator quotients fill the same region: occupied grid
/// cells of either cloud must be matched by the other within one cell.
/// Cells holding a single sample are far-tail dust and are exempt from the
/// demand side; a genuine region mismatch floods whole bands of
/// well-populated cells and still fails loudly.
fn cloud_coverage(
    ctx: &mut SuiteCtx,
    tag: AlgebraTag,
    k: i32,
    round: &[OrbitPoint],
    cloud_n: u64,
) -> CheckResult {
    let exotic = sample_cloud_with(tag, CloudSource::Exotic(k), cloud_n, &mut ctx.rng());
    let report = coverage(round, &exotic, 0.05, 2, 2);
    let uncovered = (report.uncovered_a + report.uncovered_b) as f64;
    CheckResult {
        name: format!("{tag}-k{k}-cloud-coverage"),
        max_residual: uncovered,
        tolerance: 0.0,
        pass: report.covered(),
        counterexample: (!report.covered()).then(|| {
            json!({
                "cells_round": report.cells_a,
                "cells_exotic": report.cells_b,
                "uncovered_round": report.uncovered_a,
                "uncovered_exotic": report.uncovered_b,
                "strict_mismatches": report.strict_mismatches,
            })
        }),
    }
}

// ---------------------------------------------------------------------------
// orbit-witness
// ---------------------------------------------------------------------------

pub(super) fn orbit_witness_suite(ctx: &mut SuiteCtx) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    for tag in ctx.config.tags() {
        checks.push(witness_random_pairs(ctx, tag));
        checks.push(witness_constructed_pairs(ctx, tag));
        checks.push(witness_rejects_mismatch(ctx, tag));
    }
    checks
}

fn witness_random_pairs(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(format!("{tag}-witness-random-pairs"), ctx.tol(1e-8));
    for i in 0..ctx.samples {
        let p1 = random_sphere_point(tag, &mut rng);
        let g0 = random_automorphism_with(tag, &mut rng);
        let p2 = signed_action(&SignedSymmetry::new(g0, Sign::Plus), &p1);
        let residual = match orbit_witness(&p1, &p2, 1e-9) {
            Ok(g) => signed_action(&SignedSymmetry::new(g, Sign::Plus), &p1).dist(&p2),
            Err(_) => f64::INFINITY,
        };
        t.observe(
            residual,
            || json!({"sample": i, "p1": sphere_json(&p1), "p2": sphere_json(&p2)}),
        );
    }
    t.into_check()
}

/// Pairs built by two independent routes: p1 sampled uniformly, p2 solved
/// directly from the constraint equations of the target (x, y, z) with
/// freshly sampled directions — then the witness must still carry p1 to p2.
fn witness_constructed_pairs(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(format!("{tag}-witness-constructed-pairs"), ctx.tol(1e-8));
    for i in 0..ctx.samples {
        let p1 = random_sphere_point(tag, &mut rng);
        let target = q_s(&p1);
        let p2 = solve_sphere_point(tag, &target, &mut rng);
        let residual = match orbit_witness(&p1, &p2, 1e-8) {
            Ok(g) => signed_action(&SignedSymmetry::new(g, Sign::Plus), &p1).dist(&p2),
            Err(_) => f64::INFINITY,
        };
        t.observe(residual, || {
            json!({
                "sample": i,
                "target": orbit_json(&target),
                "p1": sphere_json(&p1),
                "p2": sphere_json(&p2),
            })
        });
    }
    t.into_check()
}

/// Solves |a| = x, Re a = y, ⟨Im a, Im c⟩ = z, |a|² + |c|² = 1 for a sphere
/// point with random orientation.
fn solve_sphere_point(tag: AlgebraTag, target: &OrbitPoint, rng: &mut ChaCha8Rng) -> SpherePoint {
    let b = (target.x * target.x - target.y * target.y).max(0.0).sqrt();
    let c_norm = (1.0 - target.x * target.x).max(0.0).sqrt();
    let (w1, w2) = random_imaginary_pair(tag, rng);
    let a = AlgebraElement::real(tag, target.y) + w1 * b;
    let c = if b > 1e-9 {
        let along = target.z / b;
        let across = (c_norm * c_norm - along * along).max(0.0).sqrt();
        w1 * along + w2 * across
    } else {
        // Degenerate: Im a ≈ 0 forces z ≈ 0 and leaves c free in direction.
        w1 * c_norm
    };
    SpherePoint::new(a, c).expect("solved coordinates satisfy the sphere equation")
}

/// Orthonormal pair of imaginary directions.
fn random_imaginary_pair(
    tag: AlgebraTag,
    rng: &mut ChaCha8Rng,
) -> (AlgebraElement, AlgebraElement) {
    loop {
        let w1 = unit_imaginary(rng, tag);
        let raw = gaussian_imaginary(rng, tag);
        let perp = raw - w1 * w1.dot(&raw);
        if perp.norm() > 1e-6 {
            return (w1, perp * (1.0 / perp.norm()));
        }
    }
}

fn witness_rejects_mismatch(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(format!("{tag}-witness-rejects-mismatch"), 0.0);
    for i in 0..ctx.samples {
        let p1 = random_sphere_point(tag, &mut rng);
        let p2 = random_sphere_point(tag, &mut rng);
        if q_s(&p1).dist(&q_s(&p2)) < 0.05 {
            continue; // Not a counterexample pair; overwhelmingly rare.
        }
        let wrongly_accepted = orbit_witness(&p1, &p2, 1e-8).is_ok();
        t.observe(
            if wrongly_accepted { 1.0 } else { 0.0 },
            || json!({"sample": i, "p1": sphere_json(&p1), "p2": sphere_json(&p2)}),
        );
    }
    t.into_check()
}

// ---------------------------------------------------------------------------
// stratification
// ---------------------------------------------------------------------------

pub(super) fn stratification(ctx: &mut SuiteCtx) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    for tag in ctx.config.tags() {
        checks.push(fixed_point_images(ctx, tag));
        checks.push(corner_attainment(ctx, tag));
        checks.extend(round_strata_consistency(ctx, tag));
        checks.extend(equator_strata_consistency(ctx, tag));
    }
    checks
}

fn fixed_point_images(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut t = Tracker::new(format!("{tag}-fixed-point-images"), ctx.tol(1e-15));
    for sign in [1.0, -1.0] {
        let p = SpherePoint::new(AlgebraElement::real(tag, sign), AlgebraElement::zero(tag))
            .expect("pole is a sphere point");
        let image = q_s(&p);
        let expected = OrbitPoint::new(1.0, sign, 0.0);
        t.observe(
            image.dist(&expected),
            || json!({"sign": sign, "image": orbit_json(&image)}),
        );
    }
    t.into_check()
}

/// The region corners (1, ±1, 0) are attained exactly, by the chart-Two
/// equator points (0, ±1).
fn corner_attainment(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut t = Tracker::new(format!("{tag}-corner-attainment"), ctx.tol(1e-15));
    for sign in [1.0, -1.0] {
        let p = EquatorPoint::new(
            ChartPoint::new(
                Chart::Two,
                AlgebraElement::zero(tag),
                AlgebraElement::real(tag, sign),
            )
            .expect("chart point"),
        )
        .expect("v = 0 satisfies the equator condition");
        let image = q_k(&p);
        let expected = OrbitPoint::new(1.0, sign, 0.0);
        t.observe(
            image.dist(&expected),
            || json!({"sign": sign, "image": orbit_json(&image)}),
        );
    }
    t.into_check()
}

/// Distance by which an orbit point escapes the region constraints.
fn region_excess(pt: &OrbitPoint) -> f64 {
    let OrbitPoint { x, y, z } = *pt;
    (-x).max(x - 1.0)
        .max(y.abs() - x)
        .max(z * z - (x * x - y * y) * (1.0 - x * x))
        .max(0.0)
}

const STRATA_TOL: f64 = 1e-6;

/// Mixed sample stream for the round sphere: generic points, boundary
/// configurations (Im c collinear with Im a), exact fixed points, and
/// interior points close to the boundary.
fn round_stratum_sample(tag: AlgebraTag, variant: u64, rng: &mut ChaCha8Rng) -> SpherePoint {
    match variant {
        0 => random_sphere_point(tag, rng),
        1 => {
            // Boundary: a and c inside the subalgebra spanned by 1 and w.
            let w = unit_imaginary(rng, tag);
            let t = gaussian_element(rng, AlgebraTag::Quaternion);
            let (t0, t1, t2) = (t.coeffs()[0], t.coeffs()[1], t.coeffs()[2]);
            let norm = (t0 * t0 + t1 * t1 + t2 * t2).sqrt().max(1e-12);
            SpherePoint::new(
                AlgebraElement::real(tag, t0 / norm) + w * (t1 / norm),
                w * (t2 / norm),
            )
            .expect("normalized coordinates")
        }
        2 => {
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            SpherePoint::new(AlgebraElement::real(tag, sign), AlgebraElement::zero(tag))
                .expect("pole")
        }
        _ => {
            // Interior point near the boundary: perturb a boundary c by a
            // definite orthogonal component.
            let w = unit_imaginary(rng, tag);
            let perp = {
                loop {
                    let raw = gaussian_imaginary(rng, tag);
                    let p = raw - w * w.dot(&raw);
                    if p.norm() > 1e-6 {
                        break p * (1.0 / p.norm());
                    }
                }
            };
            let mut t1: f64 = rng.random_range(-1.0..1.0);
            if t1.abs() < 0.2 {
                t1 += 0.4f64.copysign(t1);
            }
            let t0: f64 = rng.random_range(-1.0..1.0);
            let t2: f64 = rng.random_range(0.2..1.0);
            let delta = 0.05;
            let a = AlgebraElement::real(tag, t0) + w * t1;
            let c = w * t2 + perp * (t2 * delta);
            let norm = (a.norm_sq() + c.norm_sq()).sqrt();
            SpherePoint::new(a * (1.0 / norm), c * (1.0 / norm)).expect("normalized")
        }
    }
}

fn round_strata_consistency(ctx: &mut SuiteCtx, tag: AlgebraTag) -> [CheckResult; 2] {
    let mut rng = ctx.rng();
    let mut mismatches = Tracker::new(format!("{tag}-round-strata-consistency"), 0.0);
    let mut excess = Tracker::new(format!("{tag}-round-image-in-region"), ctx.tol(1e-10));
    for i in 0..ctx.samples {
        let p = round_stratum_sample(tag, i % 4, &mut rng);
        let image = q_s(&p);
        excess.observe(
            region_excess(&image),
            || json!({"sample": i, "point": sphere_json(&p), "image": orbit_json(&image)}),
        );
        let from_sphere = orbit_type(&p, STRATA_TOL);
        let from_region = region_classification(&image, STRATA_TOL);
        let disagrees = from_sphere != from_region;
        mismatches.observe(if disagrees { 1.0 } else { 0.0 }, || {
            json!({
                "sample": i,
                "point": sphere_json(&p),
                "image": orbit_json(&image),
                "from_sphere": format!("{from_sphere:?}"),
                "from_region": format!("{from_region:?}"),
            })
        });
    }
    [mismatches.into_check(), excess.into_check()]
}

/// Mixed equator samples: generic points in both charts plus boundary
/// configurations, where the fiber coordinate lies in the subalgebra
/// spanned by 1 and the relevant direction.
fn equator_stratum_sample(
    tag: AlgebraTag,
    variant: u64,
    radius_range: (f64, f64),
    rng: &mut ChaCha8Rng,
) -> EquatorPoint {
    let params = BundleParams::from_h(tag, 1);
    match variant {
        0 | 1 => random_equator_point_with(
            &params,
            rng,
            if variant == 0 { Chart::One } else { Chart::Two },
            radius_range,
        )
        .expect("valid radius range"),
        2 => {
            // Chart One boundary: u = α + βq keeps Im(uq) collinear with q.
            let q = unit_imaginary(rng, tag);
            let alpha = crate::sampling::gaussian(rng);
            let beta = crate::sampling::gaussian(rng);
            let u = AlgebraElement::real(tag, alpha) + q * beta;
            EquatorPoint::new(ChartPoint::new(Chart::One, u, q).expect("unit fiber"))
                .expect("q imaginary")
        }
        _ => {
            // Chart Two boundary: v = α(1 − (Re r)·r) gives Im(v̄r) ∥ Im r
            // and Re(v̄r) = 0.
            let r = unit_element(rng, tag);
            let alpha = crate::sampling::gaussian(rng);
            let v = (AlgebraElement::one(tag) - r * r.re()) * alpha;
            EquatorPoint::new(ChartPoint::new(Chart::Two, v, r).expect("unit fiber"))
                .expect("construction satisfies the equator condition")
        }
    }
}

fn equator_strata_consistency(ctx: &mut SuiteCtx, tag: AlgebraTag) -> [CheckResult; 2] {
    let mut rng = ctx.rng();
    let mut mismatches = Tracker::new(format!("{tag}-equator-strata-consistency"), 0.0);
    let mut excess = Tracker::new(format!("{tag}-equator-image-in-region"), ctx.tol(1e-10));
    for i in 0..ctx.samples {
        let p = equator_stratum_sample(tag, i % 4, ctx.config.radius_range, &mut rng);
        let image = q_k(&p);
        excess.observe(region_excess(&image), || {
            json!({"sample": i, "point": chart_json(p.chart_point()), "image": orbit_json(&image)})
        });
        let from_sphere = orbit_type(&h_embedding(&p), STRATA_TOL);
        let from_region = region_classification(&image, STRATA_TOL);
        let disagrees = from_sphere != from_region;
        mismatches.observe(if disagrees { 1.0 } else { 0.0 }, || {
            json!({
                "sample": i,
                "point": chart_json(p.chart_point()),
                "image": orbit_json(&image),
                "from_sphere": format!("{from_sphere:?}"),
                "from_region": format!("{from_region:?}"),
            })
        });
        // Principal points must land strictly inside, singular ones on the
        // boundary; only fixed points may reach the corners.
        if from_sphere == OrbitType::Fixed {
            debug_assert!(image.x > 1.0 - 1e-6);
        }
    }
    [mismatches.into_check(), excess.into_check()]
}

// ---------------------------------------------------------------------------
// z2-coincide
// ---------------------------------------------------------------------------

pub(super) fn z2_coincide(ctx: &mut SuiteCtx) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    for tag in ctx.config.tags() {
        checks.push(involution_descends(ctx, tag));
        checks.push(antipodal_descends(ctx, tag));
    }
    checks
}

fn involution_descends(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let params = BundleParams::from_h(tag, 1);
    let mut t = Tracker::new(format!("{tag}-involution-descends"), ctx.tol(1e-10));
    for i in 0..ctx.samples {
        let p = random_equator_point_with(
            &params,
            &mut rng,
            alternating_chart(i),
            ctx.config.radius_range,
        )
        .expect("valid radius range");
        let lhs = q_k_unchecked(&involution_t(p.chart_point()));
        let rhs = z2_orbit_action(&q_k(&p));
        t.observe(
            lhs.dist(&rhs),
            || json!({"sample": i, "point": chart_json(p.chart_point())}),
        );
    }
    t.into_check()
}

fn antipodal_descends(ctx: &mut SuiteCtx, tag: AlgebraTag) -> CheckResult {
    let mut rng = ctx.rng();
    let mut t = Tracker::new(format!("{tag}-antipodal-descends"), ctx.tol(1e-10));
    for i in 0..ctx.samples {
        let p = random_sphere_point(tag, &mut rng);
        let lhs = q_s(&p.antipode());
        let rhs = z2_orbit_action(&q_s(&p));
        t.observe(
            lhs.dist(&rhs),
            || json!({"sample": i, "point": sphere_json(&p)}),
        );
    }
    t.into_check()
}

// ---------------------------------------------------------------------------
// negative-controls
// ---------------------------------------------------------------------------

/// Detection threshold for planted errors; deliberately far above every
/// identity tolerance and not subject to the CLI override.
const DETECTION_THRESHOLD: f64 = 0.1;

pub(super) fn negative_controls(ctx: &mut SuiteCtx) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    for tag in ctx.config.tags() {
        for &k in &ctx.config.k_list.clone() {
            let params = BundleParams::from_k(tag, k).expect("config k values are odd");
            checks.push(wrong_gluing_detected(ctx, &params));
            checks.push(fake_equivariance_detected(ctx, &params));
        }
    }
    checks
}

/// A gluing map with the left exponent off by one must visibly break chart
/// well-definedness of the quotient.
fn wrong_gluing_detected(ctx: &mut SuiteCtx, params: &BundleParams) -> CheckResult {
    let mut rng = ctx.rng();
    let mut statistic: f64 = 0.0;
    for i in 0..ctx.samples {
        let p = random_equator_point_with(
            params,
            &mut rng,
            alternating_chart(i),
            ctx.config.radius_range,
        )
        .expect("valid radius range");
        let moved = transition_with_exponents(params, p.chart_point(), 1)
            .expect("radius bounded away from zero");
        statistic = statistic.max(q_k(&p).dist(&q_k_unchecked(&moved)));
    }
    CheckResult {
        name: format!("{}-k{}-wrong-gluing-detected", params.tag(), params.k()),
        max_residual: statistic,
        tolerance: DETECTION_THRESHOLD,
        pass: statistic > DETECTION_THRESHOLD,
        counterexample: None,
    }
}

/// A non-multiplicative isometry (an automorphism matrix with one column
/// negated) must visibly break equivariance of the gluing map.
fn fake_equivariance_detected(ctx: &mut SuiteCtx, params: &BundleParams) -> CheckResult {
    let mut rng = ctx.rng();
    let tag = params.tag();
    let fake = {
        let g = random_automorphism_with(tag, &mut rng);
        let mut m = *g.matrix();
        let column = rng.random_range(1..tag.dim());
        for row in m.iter_mut().take(tag.dim()) {
            row[column] = -row[column];
        }
        Automorphism::from_matrix_unchecked(tag, m)
    };
    let mut statistic: f64 = 0.0;
    for i in 0..ctx.samples {
        let p = overlap_point(&mut rng, tag, alternating_chart(i), ctx.config.radius_range);
        let lhs = transition(params, &davis_action(&fake, &p)).expect("overlap point");
        let rhs = davis_action(&fake, &transition(params, &p).expect("overlap point"));
        statistic = statistic.max(lhs.dist(&rhs));
    }
    CheckResult {
        name: format!("{tag}-k{}-fake-equivariance-detected", params.k()),
        max_residual: statistic,
        tolerance: DETECTION_THRESHOLD,
        pass: statistic > DETECTION_THRESHOLD,
        counterexample: None,
    }
}
