//! Quotient maps onto the three-dimensional orbit space, the comparison
//! embeddings, stratification data, orbit-equivalence witnesses, and the
//! induced ℤ₂ action.
//!
//! The round sphere S^{2b−2} ⊂ Λ ⊕ Im Λ maps to ℝ³ by
//!
//! ```text
//! Q_s(a, c) = (|a|, Re a, ⟨Im a, Im c⟩),
//! ```
//!
//! whose image is the region {x ∈ [0,1], y ∈ [−x,x], z² ≤ (x²−y²)(1−x²)}
//! and whose fibers are exactly the automorphism-group orbits.  The equator
//! sphere of each bundle maps to the same region by the chart-wise map Q_k,
//! and the two quotients are intertwined by the conformal embeddings
//! h₁(u,q) = (uq, q)·φ(u) and h₂(v,r) = (r, v̄r)·φ(v): Q_k = Q_s ∘ h.

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::bundle::{phi, Chart, ChartPoint, EquatorPoint};
use crate::error::{Error, Result};
use crate::symmetry::{automorphism_from_frames, Automorphism, Frame, SpherePoint};

/// A point (x, y, z) of the orbit space, the common image of Q_s and Q_k.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl OrbitPoint {
    pub fn new(x: f64, y: f64, z: f64) -> OrbitPoint {
        OrbitPoint { x, y, z }
    }

    pub fn dist(&self, other: &OrbitPoint) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2) + (self.z - other.z).powi(2))
            .sqrt()
    }
}

/// The round quotient map Q_s(a, c) = (|a|, Re a, ⟨Im a, Im c⟩).
pub fn q_s(p: &SpherePoint) -> OrbitPoint {
    OrbitPoint {
        x: p.a().norm(),
        y: p.a().re(),
        z: p.a().im().dot(p.c()),
    }
}

/// The equator quotient map, chart by chart:
///
/// ```text
/// chart One: (u, q) ↦ φ(u)·(|u|,  Re uq,  φ(u)⟨Im uq, Im q⟩)
/// chart Two: (v, r) ↦ φ(v)·(|r|,  Re r,   φ(v)⟨Im r, Im v̄r⟩)
/// ```
///
/// The two chart formulas agree on the gluing overlap (verified by the
/// quotient suite), so the map is well defined on the equator sphere.
pub fn q_k(p: &EquatorPoint) -> OrbitPoint {
    q_k_unchecked(p.chart_point())
}

/// The chart formula for the equator quotient evaluated on an arbitrary
/// chart point, without requiring the equator condition.  Negative-control
/// suites use this to evaluate the formula on deliberately wrong gluings.
pub(crate) fn q_k_unchecked(p: &ChartPoint) -> OrbitPoint {
    match p.chart() {
        Chart::One => {
            let u = p.first();
            let q = p.second();
            let uq = *u * *q;
            let s = phi(u);
            OrbitPoint {
                x: s * u.norm(),
                y: s * uq.re(),
                z: s * s * uq.im().dot(&q.im()),
            }
        }
        Chart::Two => {
            let v = p.first();
            let r = p.second();
            let vbar_r = v.conjugate() * *r;
            let s = phi(v);
            OrbitPoint {
                x: s * r.norm(),
                y: s * r.re(),
                z: s * s * r.im().dot(&vbar_r.im()),
            }
        }
    }
}

const H_INPUT_TOL: f64 = 1e-8;

/// The chart-One comparison embedding h₁(u, q) = (uq, q)·φ(u) into the round
/// sphere; requires q to be an imaginary unit.
pub fn h1(u: &AlgebraElement, q: &AlgebraElement) -> Result<SpherePoint> {
    if (q.norm() - 1.0).abs() > H_INPUT_TOL {
        return Err(Error::InvalidPoint(format!("|q| = {:.12}", q.norm())));
    }
    if q.re().abs() > H_INPUT_TOL {
        return Err(Error::InvalidPoint(format!("Re q = {:.3e}", q.re())));
    }
    let s = phi(u);
    SpherePoint::new(*u * *q * s, *q * s)
}

/// The chart-Two comparison embedding h₂(v, r) = (r, v̄r)·φ(v); requires r
/// to be a unit with Re(v̄r) = 0.
pub fn h2(v: &AlgebraElement, r: &AlgebraElement) -> Result<SpherePoint> {
    if (r.norm() - 1.0).abs() > H_INPUT_TOL {
        return Err(Error::InvalidPoint(format!("|r| = {:.12}", r.norm())));
    }
    let vbar_r = v.conjugate() * *r;
    if vbar_r.re().abs() > H_INPUT_TOL {
        return Err(Error::InvalidPoint(format!(
            "Re(conj(v)·r) = {:.3e}",
            vbar_r.re()
        )));
    }
    let s = phi(v);
    SpherePoint::new(*r * s, vbar_r * s)
}

/// The comparison embedding matching the chart of the given equator point.
pub fn h_embedding(p: &EquatorPoint) -> SpherePoint {
    match p.chart() {
        Chart::One => h1(p.first(), p.second()),
        Chart::Two => h2(p.first(), p.second()),
    }
    .expect("equator points satisfy the embedding preconditions")
}

/// |Q_k(p) − Q_s(h(p))| for the chart-appropriate embedding h.  The relation
/// Q_k = Q_s ∘ h is an algebraic identity, so this residual is expected at
/// machine precision.
pub fn key_lemma_residual(p: &EquatorPoint) -> f64 {
    q_k(p).dist(&q_s(&h_embedding(p)))
}

/// Membership in the orbit-space region
/// {x ∈ [0,1], y ∈ [−x, x], z² ≤ (x²−y²)(1−x²)}, with slack `tol` on every
/// constraint.
pub fn region_contains(pt: &OrbitPoint, tol: f64) -> bool {
    let OrbitPoint { x, y, z } = *pt;
    (-tol..=1.0 + tol).contains(&x)
        && y.abs() <= x + tol
        && z * z <= (x * x - y * y) * (1.0 - x * x) + tol
}

/// Stratum labels of the symmetry action on the round sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitType {
    /// The two fixed points (±1, 0).
    Fixed,
    /// Non-principal, non-fixed orbits; these map onto the region boundary.
    SingularBoundary,
    /// Generic orbits; these map onto the region interior.
    Principal,
}

/// Classifies the orbit through a sphere point.
///
/// The orbit is non-principal exactly when Cauchy–Schwarz is an equality for
/// (Im a, Im c), i.e. |⟨Im a, Im c⟩| = |Im a||Im c|, and fixed exactly when
/// Im a = c = 0.
pub fn orbit_type(p: &SpherePoint, tol: f64) -> OrbitType {
    let ima = p.a().im().norm();
    let c = p.c().norm();
    if ima <= tol && c <= tol {
        return OrbitType::Fixed;
    }
    let slack = ima * c - p.a().im().dot(p.c()).abs();
    if slack <= tol {
        OrbitType::SingularBoundary
    } else {
        OrbitType::Principal
    }
}

/// Classifies an orbit-space point by its position in the region: the two
/// corners (1, ±1, 0) are the fixed-point images, the boundary surface
/// z² = (x²−y²)(1−x²) carries the singular orbits, and the interior carries
/// the principal ones.
///
/// On the image of an actual sphere point this agrees with [`orbit_type`]
/// because √(x²−y²) = |Im a| and √(1−x²) = |Im c| there, making the
/// boundary equation the Cauchy–Schwarz equality and the corner condition
/// the vanishing of Im a and Im c.
pub fn region_classification(pt: &OrbitPoint, tol: f64) -> OrbitType {
    let OrbitPoint { x, y, z } = *pt;
    let im_a = (x * x - y * y).max(0.0).sqrt();
    let im_c = (1.0 - x * x).max(0.0).sqrt();
    if im_a <= tol && im_c <= tol {
        return OrbitType::Fixed;
    }
    if im_a * im_c - z.abs() <= tol {
        OrbitType::SingularBoundary
    } else {
        OrbitType::Principal
    }
}

/// Frame slots below this size are treated as absent when orthonormalizing
/// witness data; the corresponding constraint contributes at most this much
/// to the witness error.
const DEGENERATE_TOL: f64 = 1e-7;

/// Constructs an automorphism g with g·p1 = p2, given that the two points
/// lie on the same orbit (equal Q_s values within `tol`).
///
/// Both (Im a, Im c) pairs are orthonormalized; equal Q_s values force equal
/// Gram data, so mapping the resulting partial frames onto each other moves
/// p1 to p2.  Degenerate slots (vanishing Im a, or Im c collinear with
/// Im a) are skipped on both sides simultaneously and the frames completed
/// with deterministic basis-direction choices — any completion works because
/// the remaining data carries no constraint.
pub fn orbit_witness(p1: &SpherePoint, p2: &SpherePoint, tol: f64) -> Result<Automorphism> {
    assert_eq!(p1.tag(), p2.tag(), "algebra tag mismatch");
    let distance = q_s(p1).dist(&q_s(p2));
    if distance > tol {
        return Err(Error::NotSameOrbit { distance, tol });
    }
    let tag = p1.tag();

    let mut partial1: Vec<AlgebraElement> = Vec::new();
    let mut partial2: Vec<AlgebraElement> = Vec::new();

    // First slot: the direction of Im a.
    let ima1 = p1.a().im();
    let ima2 = p2.a().im();
    if ima1.norm().min(ima2.norm()) > DEGENERATE_TOL {
        partial1.push(ima1 * (1.0 / ima1.norm()));
        partial2.push(ima2 * (1.0 / ima2.norm()));
    }

    // Second slot: the part of Im c orthogonal to the first slot.
    let perp = |c: &AlgebraElement, partial: &[AlgebraElement]| {
        let mut w = *c;
        for v in partial {
            w = w - *v * v.dot(c);
        }
        w
    };
    let c1 = perp(p1.c(), &partial1);
    let c2 = perp(p2.c(), &partial2);
    if c1.norm().min(c2.norm()) > DEGENERATE_TOL {
        partial1.push(c1 * (1.0 / c1.norm()));
        partial2.push(c2 * (1.0 / c2.norm()));
    }

    let f1 = complete_frame(tag, &partial1);
    let f2 = complete_frame(tag, &partial2);
    Ok(automorphism_from_frames(&f1, &f2))
}

/// Completes a partial orthonormal list of imaginary vectors to a valid
/// frame, greedily appending coordinate directions projected orthogonal to
/// everything chosen so far (including the e₁e₂ product for the octonion
/// basic-triple constraint).
fn complete_frame(tag: crate::algebra::AlgebraTag, partial: &[AlgebraElement]) -> Frame {
    let needed = match tag {
        crate::algebra::AlgebraTag::Quaternion => 2,
        crate::algebra::AlgebraTag::Octonion => 3,
    };
    let mut vectors: Vec<AlgebraElement> = partial.to_vec();
    let mut idx = 1;
    while vectors.len() < needed {
        assert!(idx < tag.dim(), "frame completion exhausted the basis");
        let mut candidate = AlgebraElement::basis(tag, idx);
        let mut obstructions = vectors.clone();
        if vectors.len() == 2 && tag == crate::algebra::AlgebraTag::Octonion {
            obstructions.push((vectors[0] * vectors[1]).im());
        }
        for v in &obstructions {
            candidate = candidate - *v * v.dot(&candidate);
        }
        if candidate.norm() > 0.3 {
            vectors.push(candidate * (1.0 / candidate.norm()));
        }
        idx += 1;
    }
    Frame::new(tag, &vectors).expect("completed frame is orthonormal by construction")
}

/// The induced ℤ₂ action on the orbit space: (x, y, z) ↦ (x, −y, z).  Both
/// the antipodal map on the round sphere and the free involution on the
/// equator sphere descend to this map.
pub fn z2_orbit_action(pt: &OrbitPoint) -> OrbitPoint {
    OrbitPoint {
        x: pt.x,
        y: -pt.y,
        z: pt.z,
    }
}

/// Canonical representative (x, |y|, z) of a point of the full quotient by
/// the symmetry group times ℤ₂; two region points are ℤ₂-equivalent exactly
/// when their representatives coincide.
pub fn full_quotient_representative(pt: &OrbitPoint) -> Result<OrbitPoint> {
    if !region_contains(pt, 1e-8) {
        return Err(Error::OutsideRegion {
            x: pt.x,
            y: pt.y,
            z: pt.z,
        });
    }
    Ok(OrbitPoint {
        x: pt.x,
        y: pt.y.abs(),
        z: pt.z,
    })
}
