//! Automorphism groups of the division algebras and the signed linear action.
//!
//! For the quaternions the automorphism group is SO(3), realized by
//! conjugation x ↦ p x p⁻¹.  For the octonions it is the exceptional group
//! G₂, whose elements we realize extensionally: an automorphism is determined
//! by where it sends a *basic triple* (e₁, e₂, e₃) — orthonormal imaginary
//! units with e₃ ⊥ e₁e₂ — and the images of the derived basis
//! (1, e₁, e₂, e₁e₂, e₃, e₁e₃, e₂e₃, (e₁e₂)e₃) fill out an orthogonal
//! matrix.  Every constructed element is certified numerically by
//! [`verify_automorphism`] rather than trusted.

use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, AlgebraTag};
use crate::error::{Error, Result};
use crate::sampling::{gaussian_element, gaussian_imaginary, stream_rng};

/// Square matrix acting on coefficient vectors; for quaternions only the
/// leading 4×4 block is meaningful and the rest stays identity.
pub type Matrix = [[f64; 8]; 8];

fn identity_matrix() -> Matrix {
    let mut m = [[0.0; 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

/// An algebra automorphism, stored as its matrix over the coefficient basis.
///
/// Constructors guarantee (numerically) that the matrix fixes 1, is
/// orthogonal, and is multiplicative; use [`verify_automorphism`] to certify
/// an instance independently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Automorphism {
    tag: AlgebraTag,
    matrix: Matrix,
}

impl Automorphism {
    pub fn identity(tag: AlgebraTag) -> Self {
        Automorphism {
            tag,
            matrix: identity_matrix(),
        }
    }

    /// Wraps a raw matrix without certification.  Used internally to plant
    /// deliberate non-automorphisms for negative-control suites.
    pub(crate) fn from_matrix_unchecked(tag: AlgebraTag, matrix: Matrix) -> Self {
        Automorphism { tag, matrix }
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Applies the linear map to an element.
    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.tag, x.tag(), "algebra tag mismatch");
        let n = self.tag.dim();
        let xc = x.coeffs();
        let mut out = [0.0; 8];
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += self.matrix[i][j] * xc[j];
            }
            out[i] = acc;
        }
        AlgebraElement::from_coeffs(self.tag, &out[..n])
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        assert_eq!(self.tag, other.tag, "algebra tag mismatch");
        let n = self.tag.dim();
        let mut m = identity_matrix();
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for l in 0..n {
                    acc += self.matrix[i][l] * other.matrix[l][j];
                }
                m[i][j] = acc;
            }
        }
        Automorphism {
            tag: self.tag,
            matrix: m,
        }
    }

    /// Inverse automorphism; the matrix is orthogonal, so this is the
    /// transpose.
    pub fn inverse(&self) -> Automorphism {
        let n = self.tag.dim();
        let mut m = identity_matrix();
        for i in 0..n {
            for j in 0..n {
                m[i][j] = self.matrix[j][i];
            }
        }
        Automorphism {
            tag: self.tag,
            matrix: m,
        }
    }
}

/// Number of frame vectors: an orthonormal imaginary pair for ℍ, a basic
/// triple for 𝕆.
fn frame_len(tag: AlgebraTag) -> usize {
    match tag {
        AlgebraTag::Quaternion => 2,
        AlgebraTag::Octonion => 3,
    }
}

/// An ordered tuple of imaginary units determining an automorphism image:
/// (e₁, e₂) orthonormal for ℍ, a basic triple (e₁, e₂, e₃) with e₃ ⊥ e₁e₂
/// for 𝕆.
///
/// `new` validates the defining constraints to 1e−8 and then
/// re-orthonormalizes internally, so downstream matrices stay within
/// machine-precision of orthogonality.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    tag: AlgebraTag,
    vectors: [AlgebraElement; 3],
}

impl Frame {
    pub const INPUT_TOL: f64 = 1e-8;

    pub fn new(tag: AlgebraTag, vectors: &[AlgebraElement]) -> Result<Frame> {
        let n = frame_len(tag);
        if vectors.len() != n {
            return Err(Error::InvalidFrame(format!(
                "expected {} vectors for {}, got {}",
                n,
                tag,
                vectors.len()
            )));
        }
        for (idx, v) in vectors.iter().enumerate() {
            assert_eq!(v.tag(), tag, "algebra tag mismatch");
            if v.re().abs() > Self::INPUT_TOL {
                return Err(Error::InvalidFrame(format!(
                    "vector {} has real part {:.3e}",
                    idx + 1,
                    v.re()
                )));
            }
            if (v.norm() - 1.0).abs() > Self::INPUT_TOL {
                return Err(Error::InvalidFrame(format!(
                    "vector {} has norm {:.6}",
                    idx + 1,
                    v.norm()
                )));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let d = vectors[i].dot(&vectors[j]);
                if d.abs() > Self::INPUT_TOL {
                    return Err(Error::InvalidFrame(format!(
                        "vectors {} and {} have inner product {:.3e}",
                        i + 1,
                        j + 1,
                        d
                    )));
                }
            }
        }
        if tag == AlgebraTag::Octonion {
            let d = vectors[2].dot(&(vectors[0] * vectors[1]));
            if d.abs() > Self::INPUT_TOL {
                return Err(Error::InvalidFrame(format!(
                    "third vector has inner product {:.3e} with e1*e2",
                    d
                )));
            }
        }
        Ok(Self::orthonormalized(tag, vectors))
    }

    /// Builds the frame after projecting away all constraint violations.
    /// Inputs must already be close to a valid frame (callers gate on
    /// `INPUT_TOL`), so the projections cannot degenerate.
    fn orthonormalized(tag: AlgebraTag, vectors: &[AlgebraElement]) -> Frame {
        let e1 = renormalize(vectors[0].im());
        let mut e2 = vectors[1].im();
        for _ in 0..2 {
            e2 = e2 - e1 * e1.dot(&e2);
        }
        let e2 = renormalize(e2);
        let mut out = [e1, e2, AlgebraElement::zero(tag)];
        if tag == AlgebraTag::Octonion {
            let e12 = renormalize((e1 * e2).im());
            let mut e3 = vectors[2].im();
            for _ in 0..2 {
                e3 = e3 - e1 * e1.dot(&e3) - e2 * e2.dot(&e3) - e12 * e12.dot(&e3);
            }
            out[2] = renormalize(e3);
        }
        Frame { tag, vectors: out }
    }

    /// The standard frame: (i, j) for ℍ, (i, j, ℓ) for 𝕆.
    pub fn standard(tag: AlgebraTag) -> Frame {
        let i = AlgebraElement::basis(tag, 1);
        let j = AlgebraElement::basis(tag, 2);
        match tag {
            AlgebraTag::Quaternion => Frame {
                tag,
                vectors: [i, j, AlgebraElement::zero(tag)],
            },
            AlgebraTag::Octonion => Frame {
                tag,
                vectors: [i, j, AlgebraElement::basis(tag, 4)],
            },
        }
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn vectors(&self) -> &[AlgebraElement] {
        &self.vectors[..frame_len(self.tag)]
    }

    /// The orthonormal algebra basis generated by the frame:
    /// (1, e₁, e₂, e₁e₂) for ℍ and
    /// (1, e₁, e₂, e₁e₂, e₃, e₁e₃, e₂e₃, (e₁e₂)e₃) for 𝕆.
    ///
    /// Products of distinct orthonormal imaginary units are again imaginary
    /// units; the imaginary projection here only strips rounding noise, so
    /// the matrix assembled from these columns fixes the real axis exactly.
    pub fn derived_basis(&self) -> Vec<AlgebraElement> {
        let [e1, e2, e3] = self.vectors;
        let e12 = renormalize((e1 * e2).im());
        let mut basis = vec![AlgebraElement::one(self.tag), e1, e2, e12];
        if self.tag == AlgebraTag::Octonion {
            basis.push(e3);
            basis.push(renormalize((e1 * e3).im()));
            basis.push(renormalize((e2 * e3).im()));
            basis.push(renormalize((e12 * e3).im()));
        }
        basis
    }
}

fn renormalize(x: AlgebraElement) -> AlgebraElement {
    x.normalized()
        .expect("frame vector degenerated; callers gate on INPUT_TOL")
}

/// The automorphism sending the `src` frame to the `dst` frame.
///
/// Both derived bases are orthonormal, so the matrix B_dst·B_srcᵀ (columns =
/// derived basis vectors) is orthogonal, fixes 1, and is multiplicative by
/// construction of the bases.
pub fn automorphism_from_frames(src: &Frame, dst: &Frame) -> Automorphism {
    assert_eq!(src.tag(), dst.tag(), "algebra tag mismatch");
    let tag = src.tag();
    let n = tag.dim();
    let bs = src.derived_basis();
    let bd = dst.derived_basis();
    let mut m = identity_matrix();
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for (s, d) in bs.iter().zip(&bd) {
                acc += d.coeffs()[i] * s.coeffs()[j];
            }
            m[i][j] = acc;
        }
    }
    // The derived bases start with 1 and continue with exactly-imaginary
    // units, so the first row and column are (1, 0, …) up to rounding; snap
    // them so automorphisms fix the real axis exactly.
    for l in 1..n {
        m[0][l] = 0.0;
        m[l][0] = 0.0;
    }
    m[0][0] = 1.0;
    Automorphism { tag, matrix: m }
}

/// The inner automorphism x ↦ p x p⁻¹ of the quaternions.
///
/// Conjugation is *not* an automorphism of the octonions (it fails
/// multiplicativity there), so the octonion tag is rejected.
pub fn conjugation_automorphism(p: &AlgebraElement) -> Result<Automorphism> {
    if p.tag() != AlgebraTag::Quaternion {
        return Err(Error::ConjugationNotAutomorphism);
    }
    if (p.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::NotUnit(format!("|p| = {:.12}", p.norm())));
    }
    let p_inv = p.inverse()?;
    let tag = p.tag();
    let n = tag.dim();
    let mut m = identity_matrix();
    for l in 1..n {
        let col = *p * AlgebraElement::basis(tag, l) * p_inv;
        for i in 1..n {
            m[i][l] = col.coeffs()[i];
        }
        m[0][l] = 0.0;
        m[l][0] = 0.0;
    }
    Ok(Automorphism { tag, matrix: m })
}

/// Deterministic random frame: Gaussian samples in Im Λ, orthonormalized
/// with the basic-triple constraint enforced by projection.
pub fn random_frame_with(tag: AlgebraTag, rng: &mut ChaCha8Rng) -> Frame {
    loop {
        let raw: Vec<AlgebraElement> = (0..frame_len(tag))
            .map(|_| gaussian_imaginary(rng, tag))
            .collect();
        if let Some(frame) = try_orthonormalize(tag, &raw) {
            return frame;
        }
    }
}

/// Gram–Schmidt with degeneracy detection; `None` requests a resample.
fn try_orthonormalize(tag: AlgebraTag, raw: &[AlgebraElement]) -> Option<Frame> {
    const MIN_NORM: f64 = 1e-6;
    let n1 = raw[0].norm();
    if n1 < MIN_NORM {
        return None;
    }
    let e1 = raw[0] * (1.0 / n1);
    let w2 = raw[1] - e1 * e1.dot(&raw[1]);
    if w2.norm() < MIN_NORM {
        return None;
    }
    let e2 = w2 * (1.0 / w2.norm());
    let mut vectors = vec![e1, e2];
    if tag == AlgebraTag::Octonion {
        let e12 = (e1 * e2).im();
        let w3 = raw[2] - e1 * e1.dot(&raw[2]) - e2 * e2.dot(&raw[2]) - e12 * e12.dot(&raw[2]);
        if w3.norm() < MIN_NORM {
            return None;
        }
        vectors.push(w3 * (1.0 / w3.norm()));
    }
    Frame::new(tag, &vectors).ok()
}

pub fn random_frame(tag: AlgebraTag, seed: u64) -> Frame {
    random_frame_with(tag, &mut stream_rng(seed, 0))
}

/// Random group element: the automorphism carrying the standard frame to a
/// random frame.
pub fn random_automorphism_with(tag: AlgebraTag, rng: &mut ChaCha8Rng) -> Automorphism {
    automorphism_from_frames(&Frame::standard(tag), &random_frame_with(tag, rng))
}

pub fn random_automorphism(tag: AlgebraTag, seed: u64) -> Automorphism {
    random_automorphism_with(tag, &mut stream_rng(seed, 0))
}

/// Max residual over seeded sample pairs of the automorphism axioms:
/// multiplicativity |g(xy) − g(x)g(y)|, conjugation compatibility
/// |g(x̄) − conj(g(x))|, and norm preservation ||g(x)| − |x||.
pub fn verify_automorphism(g: &Automorphism, samples: usize, seed: u64) -> f64 {
    let mut rng = stream_rng(seed, 0);
    let tag = g.tag();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let x = gaussian_element(&mut rng, tag);
        let y = gaussian_element(&mut rng, tag);
        let gx = g.apply(&x);
        worst = worst.max(g.apply(&(x * y)).dist(&(gx * g.apply(&y))));
        worst = worst.max(g.apply(&x.conjugate()).dist(&gx.conjugate()));
        worst = worst.max((gx.norm() - x.norm()).abs());
    }
    worst
}

/// A sign factor for the two-element factor of the full symmetry group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn compose(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// An element (g, ±1) of the product of the automorphism group with ℤ₂,
/// acting linearly on the unit sphere of Λ ⊕ Im Λ.
#[derive(Debug, Clone, Copy)]
pub struct SignedSymmetry {
    pub g: Automorphism,
    pub sign: Sign,
}

impl SignedSymmetry {
    pub fn new(g: Automorphism, sign: Sign) -> Self {
        SignedSymmetry { g, sign }
    }

    pub fn compose(&self, other: &SignedSymmetry) -> SignedSymmetry {
        SignedSymmetry {
            g: self.g.compose(&other.g),
            sign: self.sign.compose(other.sign),
        }
    }
}

/// A point (a, c) of the round unit sphere in Λ ⊕ Im Λ.
#[derive(Debug, Clone, Copy)]
pub struct SpherePoint {
    a: AlgebraElement,
    c: AlgebraElement,
}

impl SpherePoint {
    pub const INPUT_TOL: f64 = 1e-8;

    pub fn new(a: AlgebraElement, c: AlgebraElement) -> Result<SpherePoint> {
        assert_eq!(a.tag(), c.tag(), "algebra tag mismatch");
        if c.re().abs() > Self::INPUT_TOL {
            return Err(Error::InvalidPoint(format!(
                "second component has real part {:.3e}",
                c.re()
            )));
        }
        let norm_sq = a.norm_sq() + c.norm_sq();
        if (norm_sq - 1.0).abs() > Self::INPUT_TOL {
            return Err(Error::InvalidPoint(format!(
                "|a|^2 + |c|^2 = {:.12}, not a unit sphere point",
                norm_sq
            )));
        }
        Ok(SpherePoint { a, c: c.im() })
    }

    pub fn tag(&self) -> AlgebraTag {
        self.a.tag()
    }

    pub fn a(&self) -> &AlgebraElement {
        &self.a
    }

    pub fn c(&self) -> &AlgebraElement {
        &self.c
    }

    pub fn antipode(&self) -> SpherePoint {
        SpherePoint {
            a: -self.a,
            c: -self.c,
        }
    }

    pub fn dist(&self, other: &SpherePoint) -> f64 {
        (self.a.dist(&other.a).powi(2) + self.c.dist(&other.c).powi(2)).sqrt()
    }
}

/// The linear action (g, ±)·(a, c) = ±(g(a), g(c)).
pub fn signed_action(s: &SignedSymmetry, p: &SpherePoint) -> SpherePoint {
    let f = s.sign.factor();
    let a = s.g.apply(p.a()) * f;
    let c = s.g.apply(p.c()) * f;
    SpherePoint::new(a, c).expect("signed action preserves the sphere")
}

/// Uniform random point of the unit sphere in Λ ⊕ Im Λ.
pub fn random_sphere_point(tag: AlgebraTag, rng: &mut ChaCha8Rng) -> SpherePoint {
    loop {
        let a = gaussian_element(rng, tag);
        let c = gaussian_imaginary(rng, tag);
        let norm = (a.norm_sq() + c.norm_sq()).sqrt();
        if norm > 1e-6 {
            let inv = 1.0 / norm;
            return SpherePoint::new(a * inv, c * inv).expect("normalized above");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraTag::{Octonion, Quaternion};

    fn assert_close(x: &AlgebraElement, y: &AlgebraElement, tol: f64) {
        assert!(
            x.dist(y) <= tol,
            "expected {:?} ~ {:?} (dist {:.3e})",
            x.coeffs(),
            y.coeffs(),
            x.dist(y)
        );
    }

    fn basis(tag: AlgebraTag, idx: usize) -> AlgebraElement {
        AlgebraElement::basis(tag, idx)
    }

    #[test]
    fn conjugation_by_one_is_identity() {
        let g = conjugation_automorphism(&AlgebraElement::one(Quaternion)).unwrap();
        let id = Automorphism::identity(Quaternion);
        for i in 0..4 {
            for j in 0..4 {
                assert!((g.matrix()[i][j] - id.matrix()[i][j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn conjugation_by_i_flips_j_and_k() {
        let g = conjugation_automorphism(&basis(Quaternion, 1)).unwrap();
        assert_close(
            &g.apply(&basis(Quaternion, 1)),
            &basis(Quaternion, 1),
            1e-15,
        );
        assert_close(
            &g.apply(&basis(Quaternion, 2)),
            &-basis(Quaternion, 2),
            1e-15,
        );
        assert_close(
            &g.apply(&basis(Quaternion, 3)),
            &-basis(Quaternion, 3),
            1e-15,
        );
    }

    #[test]
    fn conjugation_by_unit_complex_rotates_j_to_k() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = AlgebraElement::from_coeffs(Quaternion, &[s, s, 0.0, 0.0]);
        let g = conjugation_automorphism(&p).unwrap();
        let j = basis(Quaternion, 2);
        assert_close(&g.apply(&j), &basis(Quaternion, 3), 1e-14);
        // Independent oracle: the raw product p j p⁻¹.
        let oracle = p * j * p.inverse().unwrap();
        assert_close(&g.apply(&j), &oracle, 1e-14);
    }

    #[test]
    fn conjugation_rejects_octonions_and_non_units() {
        assert!(matches!(
            conjugation_automorphism(&AlgebraElement::one(Octonion)),
            Err(Error::ConjugationNotAutomorphism)
        ));
        let p = AlgebraElement::real(Quaternion, 2.0);
        assert!(matches!(
            conjugation_automorphism(&p),
            Err(Error::NotUnit(_))
        ));
    }

    #[test]
    fn standard_frame_to_itself_is_identity() {
        for tag in [Quaternion, Octonion] {
            let std_frame = Frame::standard(tag);
            let g = automorphism_from_frames(&std_frame, &std_frame);
            let id = Automorphism::identity(tag);
            for i in 0..tag.dim() {
                for j in 0..tag.dim() {
                    assert!((g.matrix()[i][j] - id.matrix()[i][j]).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn quaternion_frame_map_is_the_cyclic_rotation() {
        let j = basis(Quaternion, 2);
        let k = basis(Quaternion, 3);
        let dst = Frame::new(Quaternion, &[j, k]).unwrap();
        let g = automorphism_from_frames(&Frame::standard(Quaternion), &dst);
        assert_close(&g.apply(&basis(Quaternion, 1)), &j, 1e-14);
        assert_close(&g.apply(&j), &k, 1e-14);
        assert_close(&g.apply(&k), &basis(Quaternion, 1), 1e-14);
    }

    #[test]
    fn frame_rejects_non_basic_triples() {
        let i = basis(Octonion, 1);
        let j = basis(Octonion, 2);
        // e3 with ⟨e3, e1·e2⟩ = 0.5: half k, rest ℓ.
        let e3 = basis(Octonion, 3) * 0.5 + basis(Octonion, 4) * 0.75f64.sqrt();
        assert!(matches!(
            Frame::new(Octonion, &[i, j, e3]),
            Err(Error::InvalidFrame(_))
        ));
        // Non-orthogonal pair.
        let tilted = (basis(Quaternion, 1) + basis(Quaternion, 2))
            .normalized()
            .unwrap();
        assert!(matches!(
            Frame::new(Quaternion, &[basis(Quaternion, 1), tilted]),
            Err(Error::InvalidFrame(_))
        ));
        // Non-imaginary vector.
        let real_mix = (AlgebraElement::one(Quaternion) + basis(Quaternion, 1))
            .normalized()
            .unwrap();
        assert!(matches!(
            Frame::new(Quaternion, &[real_mix, basis(Quaternion, 2)]),
            Err(Error::InvalidFrame(_))
        ));
    }

    #[test]
    fn frame_reorthonormalizes_slightly_perturbed_input() {
        let i = basis(Octonion, 1);
        let j = (basis(Octonion, 2) + i * 3e-9).normalized().unwrap();
        let l = basis(Octonion, 4);
        let frame = Frame::new(Octonion, &[i, j, l]).unwrap();
        let vs = frame.vectors();
        for v in vs {
            assert!((v.norm() - 1.0).abs() < 1e-14);
            assert!(v.re().abs() < 1e-14);
        }
        assert!(vs[0].dot(&vs[1]).abs() < 1e-14);
        assert!(vs[2].dot(&(vs[0] * vs[1])).abs() < 1e-14);
    }

    #[test]
    fn random_automorphisms_are_deterministic_and_multiplicative() {
        for tag in [Quaternion, Octonion] {
            let g1 = random_automorphism(tag, 99);
            let g2 = random_automorphism(tag, 99);
            assert_eq!(g1.matrix(), g2.matrix());
            let g3 = random_automorphism(tag, 100);
            assert_ne!(g1.matrix(), g3.matrix());
            assert!(verify_automorphism(&g1, 200, 5) < 1e-12);
        }
    }

    #[test]
    fn identity_verifies_exactly() {
        assert_eq!(
            verify_automorphism(&Automorphism::identity(Octonion), 100, 1),
            0.0
        );
    }

    #[test]
    fn flipped_sign_is_detected_as_non_automorphism() {
        let mut m = identity_matrix();
        m[7][7] = -1.0;
        let fake = Automorphism::from_matrix_unchecked(Octonion, m);
        assert!(verify_automorphism(&fake, 50, 3) > 0.1);
    }

    #[test]
    fn inverse_and_compose_are_group_operations() {
        let g = random_automorphism(Octonion, 17);
        let h = random_automorphism(Octonion, 18);
        let id = Automorphism::identity(Octonion);
        let gi = g.compose(&g.inverse());
        for i in 0..8 {
            for j in 0..8 {
                assert!((gi.matrix()[i][j] - id.matrix()[i][j]).abs() < 1e-10);
            }
        }
        let x = AlgebraElement::from_coeffs(Octonion, &[0.3, -1.2, 0.5, 2.0, -0.7, 0.1, 0.9, -0.4]);
        assert_close(&g.compose(&h).apply(&x), &g.apply(&h.apply(&x)), 1e-12);
    }

    #[test]
    fn automorphisms_preserve_real_part_and_imaginary_norm() {
        let mut rng = stream_rng(31, 0);
        for tag in [Quaternion, Octonion] {
            let g = random_automorphism_with(tag, &mut rng);
            for _ in 0..50 {
                let x = gaussian_element(&mut rng, tag);
                let gx = g.apply(&x);
                assert!((gx.re() - x.re()).abs() < 1e-10);
                assert!((gx.im().norm() - x.im().norm()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn conjugation_agrees_with_frame_construction() {
        let mut rng = stream_rng(77, 0);
        for _ in 0..20 {
            let p = crate::sampling::unit_element(&mut rng, Quaternion);
            let g = conjugation_automorphism(&p).unwrap();
            let p_inv = p.inverse().unwrap();
            let f1 = p * basis(Quaternion, 1) * p_inv;
            let f2 = p * basis(Quaternion, 2) * p_inv;
            let h = automorphism_from_frames(
                &Frame::standard(Quaternion),
                &Frame::new(Quaternion, &[f1, f2]).unwrap(),
            );
            for i in 0..4 {
                for j in 0..4 {
                    assert!((g.matrix()[i][j] - h.matrix()[i][j]).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn signed_action_examples_and_group_law() {
        let mut rng = stream_rng(13, 0);
        let p = random_sphere_point(Octonion, &mut rng);
        let id_plus = SignedSymmetry::new(Automorphism::identity(Octonion), Sign::Plus);
        let id_minus = SignedSymmetry::new(Automorphism::identity(Octonion), Sign::Minus);
        assert!(signed_action(&id_plus, &p).dist(&p) < 1e-15);
        assert!(signed_action(&id_minus, &p).dist(&p.antipode()) < 1e-15);

        // Automorphisms fix the real axis, so (1, 0) is fixed by any (g, +).
        let pole = SpherePoint::new(
            AlgebraElement::one(Octonion),
            AlgebraElement::zero(Octonion),
        )
        .unwrap();
        let g = random_automorphism_with(Octonion, &mut rng);
        let s = SignedSymmetry::new(g, Sign::Plus);
        assert!(signed_action(&s, &pole).dist(&pole) < 1e-14);

        // Group law: s1·(s2·p) = (s1 s2)·p.
        let s1 = SignedSymmetry::new(random_automorphism_with(Octonion, &mut rng), Sign::Minus);
        let s2 = SignedSymmetry::new(random_automorphism_with(Octonion, &mut rng), Sign::Minus);
        let lhs = signed_action(&s1, &signed_action(&s2, &p));
        let rhs = signed_action(&s1.compose(&s2), &p);
        assert!(lhs.dist(&rhs) < 1e-10);
    }

    #[test]
    fn sphere_point_constructor_validates() {
        let a = AlgebraElement::one(Quaternion);
        let c = basis(Quaternion, 1);
        // |a|² + |c|² = 2.
        assert!(matches!(
            SpherePoint::new(a, c),
            Err(Error::InvalidPoint(_))
        ));
        // Real part in the second slot.
        assert!(matches!(
            SpherePoint::new(basis(Quaternion, 1), AlgebraElement::one(Quaternion) * 0.1),
            Err(Error::InvalidPoint(_))
        ));
    }
}
