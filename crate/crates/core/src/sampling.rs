//! Seeded, counter-based random sampling.
//!
//! All randomness flows through ChaCha8 streams: a check or shard derives its
//! generator from `(seed, stream)`, so results are reproducible and
//! independent of evaluation order.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{AlgebraElement, AlgebraTag};

/// Generator for stream `stream` of the master seed.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Element with independent standard Gaussian coefficients.
pub fn gaussian_element(rng: &mut ChaCha8Rng, tag: AlgebraTag) -> AlgebraElement {
    let coeffs: Vec<f64> = (0..tag.dim()).map(|_| gaussian(rng)).collect();
    AlgebraElement::from_coeffs(tag, &coeffs)
}

/// Gaussian element with zero real part.
pub fn gaussian_imaginary(rng: &mut ChaCha8Rng, tag: AlgebraTag) -> AlgebraElement {
    gaussian_element(rng, tag).im()
}

/// Uniform point on the unit sphere of the algebra.
pub fn unit_element(rng: &mut ChaCha8Rng, tag: AlgebraTag) -> AlgebraElement {
    loop {
        let x = gaussian_element(rng, tag);
        if x.norm() > 1e-6 {
            return x.normalized().expect("norm checked above");
        }
    }
}

/// Uniform point on the unit sphere of the imaginary part.
pub fn unit_imaginary(rng: &mut ChaCha8Rng, tag: AlgebraTag) -> AlgebraElement {
    loop {
        let x = gaussian_imaginary(rng, tag);
        if x.norm() > 1e-6 {
            return x.normalized().expect("norm checked above");
        }
    }
}
