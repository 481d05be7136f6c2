//! Charts of the Milnor/Shimada sphere bundles, the gluing map, the height
//! function, the equator sphere, the free involution, and the Davis action.
//!
//! The total space Σ_k^{2b−1} is glued from two copies of Λ × S^{b−1} via
//!
//! ```text
//! Φ_{h,j}: (u, q) ↦ (u/|u|², (u/|u|)^h q (u/|u|)^j),    h + j = 1,
//! ```
//!
//! parameterized by the odd integer k = h − j = 2h − 1.  The equator sphere
//! S_k^{2b−2} is the zero set of f(u,q) = Re(q)/√(1+|u|²); it carries the
//! free involution T: (u,q) ↦ (u,−q) (Hirsch–Milnor) and the diagonal Davis
//! action of the automorphism group.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, AlgebraTag};
use crate::error::{Error, Result};
use crate::sampling::{gaussian_element, stream_rng, unit_element, unit_imaginary};
use crate::symmetry::Automorphism;

/// Overlap sampling keeps |u| in this range by default so that 1/|u|² and
/// φ(u) stay well-conditioned; the bundle charts themselves allow any u.
pub const DEFAULT_RADIUS_RANGE: (f64, f64) = (0.1, 10.0);

/// The odd k values exercised by the default verification suites: h runs
/// over {−1, 0, 1, 2, 3, 4}, covering trivial gluings (k = ±1) and exotic
/// candidates.
pub const DEFAULT_K_LIST: [i32; 6] = [-3, -1, 1, 3, 5, 7];

/// Gluing exponents (h, j) with h + j = 1, together with k = h − j = 2h − 1
/// and the base algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BundleParams {
    tag: AlgebraTag,
    h: i32,
    j: i32,
    k: i32,
}

impl BundleParams {
    /// Parameters for a given odd k; even k does not arise from integer
    /// exponents with h + j = 1.
    pub fn from_k(tag: AlgebraTag, k: i32) -> Result<BundleParams> {
        if k.rem_euclid(2) == 0 {
            return Err(Error::EvenK(k));
        }
        let h = (k + 1) / 2;
        Ok(BundleParams {
            tag,
            h,
            j: 1 - h,
            k,
        })
    }

    pub fn from_h(tag: AlgebraTag, h: i32) -> BundleParams {
        BundleParams {
            tag,
            h,
            j: 1 - h,
            k: 2 * h - 1,
        }
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn h(&self) -> i32 {
        self.h
    }

    pub fn j(&self) -> i32 {
        self.j
    }

    pub fn k(&self) -> i32 {
        self.k
    }
}

/// Which copy of Λ × S^{b−1} a point lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    One,
    Two,
}

impl Chart {
    pub fn other(self) -> Chart {
        match self {
            Chart::One => Chart::Two,
            Chart::Two => Chart::One,
        }
    }
}

/// A point of the total space in one chart: (u, q) with |q| = 1 in chart
/// One, (v, r) with |r| = 1 in chart Two.
#[derive(Debug, Clone, Copy)]
pub struct ChartPoint {
    chart: Chart,
    first: AlgebraElement,
    second: AlgebraElement,
}

impl ChartPoint {
    pub const INPUT_TOL: f64 = 1e-8;

    pub fn new(chart: Chart, first: AlgebraElement, second: AlgebraElement) -> Result<ChartPoint> {
        assert_eq!(first.tag(), second.tag(), "algebra tag mismatch");
        if (second.norm() - 1.0).abs() > Self::INPUT_TOL {
            return Err(Error::InvalidPoint(format!(
                "sphere-factor component has norm {:.12}",
                second.norm()
            )));
        }
        Ok(ChartPoint {
            chart,
            first,
            second,
        })
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn first(&self) -> &AlgebraElement {
        &self.first
    }

    pub fn second(&self) -> &AlgebraElement {
        &self.second
    }

    pub fn tag(&self) -> AlgebraTag {
        self.first.tag()
    }

    /// Euclidean distance in chart coordinates; only meaningful for points
    /// in the same chart.
    pub fn dist(&self, other: &ChartPoint) -> f64 {
        assert_eq!(self.chart, other.chart, "chart mismatch");
        (self.first.dist(&other.first).powi(2) + self.second.dist(&other.second).powi(2)).sqrt()
    }
}

/// The defect of the equator condition: |Re q| in chart One, |Re(v̄ r)| in
/// chart Two.  Zero (numerically) exactly on the equator sphere.
pub fn equator_residual(p: &ChartPoint) -> f64 {
    match p.chart() {
        Chart::One => p.second().re().abs(),
        Chart::Two => (p.first().conjugate() * *p.second()).re().abs(),
    }
}

/// A point of the equator sphere S_k^{2b−2}: a chart point satisfying
/// Re q = 0 (chart One) or Re(v̄ r) = 0 (chart Two).
#[derive(Debug, Clone, Copy)]
pub struct EquatorPoint(ChartPoint);

impl EquatorPoint {
    pub fn new(p: ChartPoint) -> Result<EquatorPoint> {
        let res = equator_residual(&p);
        if res > ChartPoint::INPUT_TOL {
            return Err(Error::InvalidPoint(format!(
                "equator condition violated by {:.3e}",
                res
            )));
        }
        Ok(EquatorPoint(p))
    }

    pub fn chart_point(&self) -> &ChartPoint {
        &self.0
    }

    pub fn chart(&self) -> Chart {
        self.0.chart()
    }

    pub fn first(&self) -> &AlgebraElement {
        self.0.first()
    }

    pub fn second(&self) -> &AlgebraElement {
        self.0.second()
    }

    pub fn tag(&self) -> AlgebraTag {
        self.0.tag()
    }
}

/// φ(w) = 1/√(1 + |w|²), the conformal factor shared by the height function
/// and the quotient maps.
pub fn phi(w: &AlgebraElement) -> f64 {
    1.0 / (1.0 + w.norm_sq()).sqrt()
}

/// The gluing map between the charts, defined away from u = 0.
///
/// Chart One → Two applies Φ_{h,j}; chart Two → One applies its inverse
/// (v, r) ↦ (v/|v|², w⁻ʰ r w⁻ʲ) with w = v/|v|, so a round trip is the
/// identity.  Products are evaluated left-associated; association
/// independence is guaranteed by the two-generator (Artin) property of the
/// algebras and checked by the algebra suite.
pub fn transition(params: &BundleParams, p: &ChartPoint) -> Result<ChartPoint> {
    transition_with_exponents(params, p, 0)
}

/// Transition with the left exponent perturbed by `dh`; `dh = 0` is the
/// genuine gluing map.  Nonzero `dh` is used by negative-control suites to
/// confirm that the verification harness rejects a wrong gluing.
pub(crate) fn transition_with_exponents(
    params: &BundleParams,
    p: &ChartPoint,
    dh: i32,
) -> Result<ChartPoint> {
    assert_eq!(params.tag(), p.tag(), "algebra tag mismatch");
    let norm = p.first().norm();
    if norm <= 1e-12 {
        return Err(Error::NotInGluingRegion);
    }
    let w = *p.first() * (1.0 / norm);
    let new_first = *p.first() * (1.0 / norm.powi(2));
    let (left, right) = match p.chart() {
        Chart::One => (params.h() + dh, params.j()),
        Chart::Two => (-(params.h() + dh), -params.j()),
    };
    let pow = |n: i32| w.powi(n).expect("w is a unit");
    let new_second = pow(left) * *p.second() * pow(right);
    ChartPoint::new(p.chart().other(), new_first, new_second)
}

/// The height function f(u, q) = Re(q)/√(1+|u|²), written in chart Two as
/// Re(v r⁻¹)/√(1+|v|²).  Its zero set is the equator sphere.
pub fn f_value(p: &ChartPoint) -> f64 {
    match p.chart() {
        Chart::One => p.second().re() * phi(p.first()),
        Chart::Two => {
            let r_inv = p.second().inverse().expect("|r| = 1 on chart points");
            (*p.first() * r_inv).re() * phi(p.first())
        }
    }
}

/// Euclidean norm of the central-difference differential of f in chart
/// coordinates, with the sphere factor varied along an orthonormal tangent
/// frame (normalization as retraction).
pub fn f_gradient_norm(p: &ChartPoint, step: f64) -> f64 {
    assert!(step > 0.0, "step must be positive");
    let n = p.tag().dim();
    let mut sum_sq = 0.0;
    for idx in 0..n {
        let e = AlgebraElement::basis(p.tag(), idx);
        let plus = ChartPoint::new(p.chart(), *p.first() + e * step, *p.second())
            .expect("sphere factor unchanged");
        let minus = ChartPoint::new(p.chart(), *p.first() - e * step, *p.second())
            .expect("sphere factor unchanged");
        let d = (f_value(&plus) - f_value(&minus)) / (2.0 * step);
        sum_sq += d * d;
    }
    for t in tangent_frame(p.second()) {
        let displaced = |s: f64| {
            let moved = (*p.second() + t * s)
                .normalized()
                .expect("unit vector plus small tangent step");
            ChartPoint::new(p.chart(), *p.first(), moved).expect("renormalized")
        };
        let d = (f_value(&displaced(step)) - f_value(&displaced(-step))) / (2.0 * step);
        sum_sq += d * d;
    }
    sum_sq.sqrt()
}

/// Orthonormal basis of the tangent space of S^{b−1} at the unit vector q,
/// built by projecting coordinate directions and running Gram–Schmidt.
fn tangent_frame(q: &AlgebraElement) -> Vec<AlgebraElement> {
    let n = q.tag().dim();
    let mut frame: Vec<AlgebraElement> = Vec::with_capacity(n - 1);
    for idx in 0..n {
        if frame.len() == n - 1 {
            break;
        }
        let mut t = AlgebraElement::basis(q.tag(), idx);
        t = t - *q * q.dot(&t);
        for f in &frame {
            t = t - *f * f.dot(&t);
        }
        if t.norm() > 1e-8 {
            frame.push(t * (1.0 / t.norm()));
        }
    }
    frame
}

/// The free involution T: (u, q) ↦ (u, −q), acting identically in either
/// chart.  It preserves the equator sphere and anti-commutes with f.
pub fn involution_t(p: &ChartPoint) -> ChartPoint {
    ChartPoint {
        chart: p.chart(),
        first: p.first,
        second: -p.second,
    }
}

/// The Davis action: an automorphism g acts diagonally, (u, q) ↦ (g(u), g(q)).
pub fn davis_action(g: &Automorphism, p: &ChartPoint) -> ChartPoint {
    assert_eq!(g.tag(), p.tag(), "algebra tag mismatch");
    ChartPoint::new(p.chart(), g.apply(p.first()), g.apply(p.second()))
        .expect("automorphisms preserve the sphere factor")
}

/// Projection to the base copy of Λ: the chart flag plus the first
/// component.  Compatible with the base gluing u ↦ u/|u|².
pub fn base_projection(p: &ChartPoint) -> (Chart, AlgebraElement) {
    (p.chart(), *p.first())
}

/// Seeded random equator point with |first| in `radius_range`.
///
/// Chart One: u is a uniform direction with uniform radius and q is uniform
/// on the unit sphere of Im Λ, so Re q = 0 exactly.  Chart Two: r is uniform
/// on S^{b−1} and v is a Gaussian sample projected onto the hyperplane
/// ⟨v, r⟩ = 0 (equivalently Re(v̄r) = 0), then rescaled into the radius
/// range.
pub fn random_equator_point(
    params: &BundleParams,
    seed: u64,
    chart: Chart,
    radius_range: (f64, f64),
) -> Result<EquatorPoint> {
    random_equator_point_with(params, &mut stream_rng(seed, 0), chart, radius_range)
}

pub fn random_equator_point_with(
    params: &BundleParams,
    rng: &mut ChaCha8Rng,
    chart: Chart,
    radius_range: (f64, f64),
) -> Result<EquatorPoint> {
    let (lo, hi) = radius_range;
    if !(0.0 <= lo && lo <= hi) || !hi.is_finite() {
        return Err(Error::EmptyRadiusRange { lo, hi });
    }
    let tag = params.tag();
    let radius = if lo == hi {
        lo
    } else {
        rng.random_range(lo..hi)
    };
    let point = match chart {
        Chart::One => {
            let u = unit_element(rng, tag) * radius;
            let q = unit_imaginary(rng, tag);
            ChartPoint::new(Chart::One, u, q)?
        }
        Chart::Two => {
            let r = unit_element(rng, tag);
            let v = loop {
                let g = gaussian_element(rng, tag);
                let projected = g - r * r.dot(&g);
                if projected.norm() > 1e-6 {
                    break projected * (radius / projected.norm());
                }
            };
            ChartPoint::new(Chart::Two, v, r)?
        }
    };
    EquatorPoint::new(point)
}
