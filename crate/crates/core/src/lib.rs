//! Milnor/Shimada sphere bundles over the quaternions and octonions, their
//! Hirsch–Milnor equator spheres and free involution, the Davis symmetry
//! actions, and the quotient maps onto the three-dimensional orbit space —
//! together with seeded property-test suites that numerically certify every
//! algebraic identity the constructions rely on.
//!
//! Organization:
//! - [`algebra`]: ℍ and 𝕆 arithmetic over a fixed Cayley–Dickson basis.
//! - [`symmetry`]: automorphism groups (SO(3) and G₂), frames, and the
//!   signed linear action on the unit sphere of Λ ⊕ Im Λ.
//! - [`sampling`]: counter-based seeded random sampling (ChaCha8 streams).
//! - [`harness`]: the verification suites, orbit-cloud samplers, and the
//!   parity classifier, with deterministic machine-readable reports.
//! - [`error`]: shared error type.

// Matrix and multiplication-table code throughout indexes fixed-size arrays
// by row/column; the explicit indices mirror the subscripts in the algebra
// and read better than iterator chains.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bundle;
pub mod error;
pub mod harness;
pub mod orbit;
pub mod sampling;
pub mod symmetry;

pub use algebra::{associator, AlgebraElement, AlgebraTag};
pub use bundle::{
    base_projection, davis_action, equator_residual, f_gradient_norm, f_value, involution_t, phi,
    random_equator_point, transition, BundleParams, Chart, ChartPoint, EquatorPoint,
    DEFAULT_K_LIST, DEFAULT_RADIUS_RANGE,
};
pub use error::{Error, Result};
pub use harness::cloud::{coverage, sample_orbit_space, CloudSource, CoverageReport};
pub use harness::parity::{classify_range, is_odd_bp16, ClassifyRow};
pub use harness::{
    run_all, run_suite, CheckResult, SuiteConfig, SuiteId, VerificationReport, DEFAULT_SEED,
};
pub use orbit::{
    full_quotient_representative, h1, h2, h_embedding, key_lemma_residual, orbit_type,
    orbit_witness, q_k, q_s, region_classification, region_contains, z2_orbit_action, OrbitPoint,
    OrbitType,
};
pub use symmetry::{
    automorphism_from_frames, conjugation_automorphism, random_automorphism, random_frame,
    random_sphere_point, signed_action, verify_automorphism, Automorphism, Frame, Sign,
    SignedSymmetry, SpherePoint,
};
