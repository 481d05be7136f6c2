//! Parity bookkeeping for the 15-dimensional bundles: which odd k = 2h − 1
//! yield a total space representing an odd element of the group bP₁₆ of
//! boundary-parallelizable homotopy 15-spheres.
//!
//! The criterion has two published formulations — h ≡ 2, 3 (mod 4), and
//! h(h−1)/2 odd — which are provably equivalent; both are evaluated and
//! cross-asserted on every call.  (For b = 4 the analogous bookkeeping is a
//! cited count, not a formula, so no predicate is provided there.)

use serde::Serialize;

use crate::error::{Error, Result};

/// Whether the bundle with exponent h (k = 2h − 1) is an odd element of
/// bP₁₆.
pub fn is_odd_bp16(h: i64) -> bool {
    let via_mod4 = matches!(h.rem_euclid(4), 2 | 3);
    // h(h−1) is a product of consecutive integers, hence even; the triangle
    // number h(h−1)/2 is exact.
    let triangle = h
        .checked_mul(h - 1)
        .expect("triangle number overflows only near i64::MAX")
        / 2;
    let via_triangle = triangle.rem_euclid(2) == 1;
    assert_eq!(
        via_mod4, via_triangle,
        "parity formulations disagree at h = {h}"
    );
    via_mod4
}

/// One row of the classification table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassifyRow {
    pub h: i64,
    pub k: i64,
    pub odd_bp16: bool,
}

/// Classification table for h in the inclusive range [lo, hi].
pub fn classify_range(lo: i64, hi: i64) -> Result<Vec<ClassifyRow>> {
    if lo > hi {
        return Err(Error::InvertedRange { lo, hi });
    }
    Ok((lo..=hi)
        .map(|h| ClassifyRow {
            h,
            k: 2 * h - 1,
            odd_bp16: is_odd_bp16(h),
        })
        .collect())
}
