//! Arithmetic in the normed division algebras ℍ (quaternions) and 𝕆 (octonions).
//!
//! Elements are coefficient vectors over the Cayley-Dickson basis
//! `1, i, j, k` for ℍ and `1, i, j, k, l, il, jl, kl` for 𝕆, with the
//! doubling rule `(a,b)(c,d) = (ac - d̄b, da + bc̄)`. Both algebras have a
//! multiplicative norm; ℍ is associative, 𝕆 is only alternative, so
//! multi-factor products below are written out explicitly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which algebra an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraTag {
    Quaternion,
    Octonion,
}

impl AlgebraTag {
    /// Real dimension of the algebra: 4 for ℍ, 8 for 𝕆.
    pub const fn dim(self) -> usize {
        match self {
            AlgebraTag::Quaternion => 4,
            AlgebraTag::Octonion => 8,
        }
    }

    /// Dimension of the imaginary part.
    pub const fn im_dim(self) -> usize {
        self.dim() - 1
    }
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraTag::Quaternion => write!(f, "quaternion"),
            AlgebraTag::Octonion => write!(f, "octonion"),
        }
    }
}

/// An element of ℍ or 𝕆 as a real coefficient vector.
///
/// Quaternions keep the upper four coordinates at zero so both algebras share
/// one storage layout.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgebraElement {
    tag: AlgebraTag,
    c: [f64; 8],
}

#[inline]
fn quat_mul(a: &[f64], b: &[f64]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

#[inline]
fn quat_conj(a: &[f64]) -> [f64; 4] {
    [a[0], -a[1], -a[2], -a[3]]
}

impl AlgebraElement {
    pub fn zero(tag: AlgebraTag) -> Self {
        Self { tag, c: [0.0; 8] }
    }

    pub fn one(tag: AlgebraTag) -> Self {
        Self::real(tag, 1.0)
    }

    /// The real element `t·1`.
    pub fn real(tag: AlgebraTag, t: f64) -> Self {
        let mut c = [0.0; 8];
        c[0] = t;
        Self { tag, c }
    }

    /// The `idx`-th basis vector (`0` is the real unit).
    ///
    /// Panics if `idx` is out of range for the algebra.
    pub fn basis(tag: AlgebraTag, idx: usize) -> Self {
        assert!(idx < tag.dim(), "basis index {idx} out of range for {tag}");
        let mut c = [0.0; 8];
        c[idx] = 1.0;
        Self { tag, c }
    }

    /// Builds an element from its coefficients; `coeffs.len()` must equal the
    /// algebra dimension.
    pub fn from_coeffs(tag: AlgebraTag, coeffs: &[f64]) -> Self {
        assert_eq!(coeffs.len(), tag.dim(), "coefficient count for {tag}");
        let mut c = [0.0; 8];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Self { tag, c }
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    /// Coefficients over the basis, length = algebra dimension.
    pub fn coeffs(&self) -> &[f64] {
        &self.c[..self.tag.dim()]
    }

    /// Real part as a scalar.
    pub fn re(&self) -> f64 {
        self.c[0]
    }

    /// Imaginary part as an element (real coordinate zeroed).
    pub fn im(&self) -> Self {
        let mut out = *self;
        out.c[0] = 0.0;
        out
    }

    pub fn conjugate(&self) -> Self {
        let mut out = *self;
        for v in &mut out.c[1..] {
            *v = -*v;
        }
        out
    }

    pub fn norm_sq(&self) -> f64 {
        self.c.iter().map(|v| v * v).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Real dot product of coefficient vectors.
    pub fn dot(&self, other: &Self) -> f64 {
        assert_eq!(self.tag, other.tag, "algebra tag mismatch in dot product");
        self.c.iter().zip(&other.c).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, t: f64) -> Self {
        let mut out = *self;
        for v in &mut out.c {
            *v *= t;
        }
        out
    }

    /// Euclidean distance to another element.
    pub fn dist(&self, other: &Self) -> f64 {
        assert_eq!(self.tag, other.tag, "algebra tag mismatch in distance");
        self.c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// `x / |x|`; errors on the zero element.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::NotInvertible);
        }
        Ok(self.scale(1.0 / n))
    }

    /// Multiplicative inverse `x̄ / |x|²`; errors on the zero element.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sq();
        if n2 == 0.0 {
            return Err(Error::NotInvertible);
        }
        Ok(self.conjugate().scale(1.0 / n2))
    }

    /// Integer power, evaluated as a left-associated repeated product.
    ///
    /// `powi(x, 0) = 1`; negative exponents invert first and need `|x| > 0`.
    pub fn powi(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.inverse()? } else { *self };
        let mut acc = Self::one(self.tag);
        for _ in 0..n.unsigned_abs() {
            acc = acc * base;
        }
        Ok(acc)
    }
}

impl Mul for AlgebraElement {
    type Output = AlgebraElement;

    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.tag, rhs.tag, "algebra tag mismatch in product");
        let mut c = [0.0; 8];
        match self.tag {
            AlgebraTag::Quaternion => {
                c[..4].copy_from_slice(&quat_mul(&self.c[..4], &rhs.c[..4]));
            }
            AlgebraTag::Octonion => {
                // One Cayley-Dickson step over quaternion halves.
                let (a, b) = (&self.c[..4], &self.c[4..]);
                let (d_of_rhs, cc) = (&rhs.c[4..], &rhs.c[..4]);
                let first_l = quat_mul(a, cc);
                let first_r = quat_mul(&quat_conj(d_of_rhs), b);
                let second_l = quat_mul(d_of_rhs, a);
                let second_r = quat_mul(b, &quat_conj(cc));
                for t in 0..4 {
                    c[t] = first_l[t] - first_r[t];
                    c[4 + t] = second_l[t] + second_r[t];
                }
            }
        }
        Self { tag: self.tag, c }
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.tag, rhs.tag, "algebra tag mismatch in sum");
        let mut out = self;
        for (v, w) in out.c.iter_mut().zip(&rhs.c) {
            *v += w;
        }
        out
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.tag, rhs.tag, "algebra tag mismatch in difference");
        let mut out = self;
        for (v, w) in out.c.iter_mut().zip(&rhs.c) {
            *v -= w;
        }
        out
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul<f64> for AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, t: f64) -> Self {
        self.scale(t)
    }
}

/// The associator `(xy)z - x(yz)`.
///
/// Identically zero on ℍ; on 𝕆 it vanishes whenever two arguments coincide
/// (alternativity) but not in general.
pub fn associator(x: &AlgebraElement, y: &AlgebraElement, z: &AlgebraElement) -> AlgebraElement {
    ((*x * *y) * *z) - (*x * (*y * *z))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: AlgebraTag = AlgebraTag::Quaternion;
    const O: AlgebraTag = AlgebraTag::Octonion;

    fn e(tag: AlgebraTag, idx: usize) -> AlgebraElement {
        AlgebraElement::basis(tag, idx)
    }

    /// Octonion structure constants, derived independently from the doubling
    /// rule applied to pairs of quaternions and frozen here:
    /// `e_m * e_n = sign * e_idx`.
    const OCT_TABLE: [[(i32, usize); 8]; 8] = [
        [
            (1, 0),
            (1, 1),
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (1, 6),
            (1, 7),
        ],
        [
            (1, 1),
            (-1, 0),
            (1, 3),
            (-1, 2),
            (1, 5),
            (-1, 4),
            (-1, 7),
            (1, 6),
        ],
        [
            (1, 2),
            (-1, 3),
            (-1, 0),
            (1, 1),
            (1, 6),
            (1, 7),
            (-1, 4),
            (-1, 5),
        ],
        [
            (1, 3),
            (1, 2),
            (-1, 1),
            (-1, 0),
            (1, 7),
            (-1, 6),
            (1, 5),
            (-1, 4),
        ],
        [
            (1, 4),
            (-1, 5),
            (-1, 6),
            (-1, 7),
            (-1, 0),
            (1, 1),
            (1, 2),
            (1, 3),
        ],
        [
            (1, 5),
            (1, 4),
            (-1, 7),
            (1, 6),
            (-1, 1),
            (-1, 0),
            (-1, 3),
            (1, 2),
        ],
        [
            (1, 6),
            (1, 7),
            (1, 4),
            (-1, 5),
            (-1, 2),
            (1, 3),
            (-1, 0),
            (-1, 1),
        ],
        [
            (1, 7),
            (-1, 6),
            (1, 5),
            (1, 4),
            (-1, 3),
            (-1, 2),
            (1, 1),
            (-1, 0),
        ],
    ];

    /// Table-driven octonion product, the oracle for `Mul`.
    fn table_mul(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut c = [0.0; 8];
        for m in 0..8 {
            for n in 0..8 {
                let (sign, idx) = OCT_TABLE[m][n];
                c[idx] += f64::from(sign) * x.coeffs()[m] * y.coeffs()[n];
            }
        }
        AlgebraElement::from_coeffs(O, &c)
    }

    #[test]
    fn quaternion_table() {
        let (i, j, k) = (e(Q, 1), e(Q, 2), e(Q, 3));
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(j * i, -k);
        assert_eq!(i * i, -AlgebraElement::one(Q));
    }

    #[test]
    fn octonion_doubling_rule() {
        // i * l = il
        assert_eq!(e(O, 1) * e(O, 4), e(O, 5));
        // l anti-commutes with i
        assert_eq!(e(O, 4) * e(O, 1), -e(O, 5));
    }

    #[test]
    fn complex_subalgebra() {
        let one = AlgebraElement::one(Q);
        let i = e(Q, 1);
        let prod = (one + i) * (one - i);
        assert!(prod.dist(&AlgebraElement::real(Q, 2.0)) < 1e-15);
    }

    #[test]
    fn mul_matches_structure_constant_table() {
        for m in 0..8 {
            for n in 0..8 {
                let prod = e(O, m) * e(O, n);
                let (sign, idx) = OCT_TABLE[m][n];
                assert!(
                    prod.dist(&(e(O, idx) * f64::from(sign))) < 1e-15,
                    "e{m} * e{n}"
                );
            }
        }
        // and on a dense element pair
        let x = AlgebraElement::from_coeffs(O, &[0.3, -1.2, 0.5, 2.0, -0.7, 0.1, 1.4, -0.4]);
        let y = AlgebraElement::from_coeffs(O, &[-0.8, 0.9, 1.1, -0.2, 0.6, -1.5, 0.25, 0.75]);
        assert!((x * y).dist(&table_mul(&x, &y)) < 1e-12);
    }

    #[test]
    fn conjugation_and_parts() {
        let x = AlgebraElement::from_coeffs(Q, &[2.0, 3.0, 0.0, 0.0]);
        assert_eq!(
            x.conjugate(),
            AlgebraElement::from_coeffs(Q, &[2.0, -3.0, 0.0, 0.0])
        );
        assert_eq!(e(Q, 1).re(), 0.0);
        assert_eq!(e(Q, 1).im(), e(Q, 1));
        assert_eq!(AlgebraElement::one(O).conjugate(), AlgebraElement::one(O));
    }

    #[test]
    fn inverses() {
        let i = e(Q, 1);
        assert!(i.inverse().unwrap().dist(&-i) < 1e-15);
        let two = AlgebraElement::real(O, 2.0);
        assert!(two.inverse().unwrap().dist(&AlgebraElement::real(O, 0.5)) < 1e-15);
        assert!(AlgebraElement::zero(Q).inverse().is_err());
    }

    #[test]
    fn integer_powers() {
        let i = e(Q, 1);
        assert!(i.powi(2).unwrap().dist(&AlgebraElement::real(Q, -1.0)) < 1e-15);
        let x = AlgebraElement::from_coeffs(O, &[0.5, 1.0, -0.25, 0.0, 2.0, 0.0, -1.0, 0.5]);
        assert_eq!(x.powi(0).unwrap(), AlgebraElement::one(O));
        assert!(i.powi(-1).unwrap().dist(&-i) < 1e-15);
        assert!(AlgebraElement::zero(O).powi(-3).is_err());
    }

    #[test]
    fn quaternions_associate() {
        let x = AlgebraElement::from_coeffs(Q, &[0.2, -1.0, 0.7, 0.4]);
        let y = AlgebraElement::from_coeffs(Q, &[1.3, 0.5, -0.6, 2.0]);
        let z = AlgebraElement::from_coeffs(Q, &[-0.4, 0.9, 1.5, -0.3]);
        assert!(associator(&x, &y, &z).norm() < 1e-12);
    }

    #[test]
    fn octonion_associator_of_i_j_l() {
        // (ij)l - i(jl) = kl - (-kl) = 2 kl, per the frozen table
        let a = associator(&e(O, 1), &e(O, 2), &e(O, 4));
        assert!(a.dist(&(e(O, 7) * 2.0)) < 1e-15);
    }

    #[test]
    fn octonions_alternate() {
        let x = AlgebraElement::from_coeffs(O, &[0.3, -1.2, 0.5, 2.0, -0.7, 0.1, 1.4, -0.4]);
        let y = AlgebraElement::from_coeffs(O, &[-0.8, 0.9, 1.1, -0.2, 0.6, -1.5, 0.25, 0.75]);
        assert!(associator(&x, &x, &y).norm() < 1e-12);
        assert!(associator(&x, &y, &y).norm() < 1e-12);
    }

    #[test]
    fn norm_is_multiplicative() {
        let x = AlgebraElement::from_coeffs(O, &[0.3, -1.2, 0.5, 2.0, -0.7, 0.1, 1.4, -0.4]);
        let y = AlgebraElement::from_coeffs(O, &[-0.8, 0.9, 1.1, -0.2, 0.6, -1.5, 0.25, 0.75]);
        let lhs = (x * y).norm();
        let rhs = x.norm() * y.norm();
        assert!((lhs - rhs).abs() < 1e-12 * (1.0 + rhs));
    }

    #[test]
    #[should_panic(expected = "algebra tag mismatch")]
    fn mixed_tags_panic() {
        let _ = e(Q, 1) * e(O, 1);
    }
}
