use thiserror::Error;

/// Errors surfaced by fallible operations.
///
/// Mixing elements of different algebras in a binary operation is treated as a
/// programming error and panics instead; everything data-dependent comes
/// through here.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot invert an element of norm zero")]
    NotInvertible,

    #[error("{0}")]
    NotUnit(String),

    #[error("conjugation x -> p x p^-1 is only an automorphism for quaternions")]
    ConjugationNotAutomorphism,

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("first chart component is zero: point is outside the gluing region")]
    NotInGluingRegion,

    #[error("bundle parameter k = {0} must be odd")]
    EvenK(i32),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("points are not in the same orbit: invariant distance {distance:.3e} exceeds tolerance {tol:.3e}")]
    NotSameOrbit { distance: f64, tol: f64 },

    #[error("orbit point ({x}, {y}, {z}) lies outside the quotient region")]
    OutsideRegion { x: f64, y: f64, z: f64 },

    #[error("radius range [{lo}, {hi}] is empty or negative")]
    EmptyRadiusRange { lo: f64, hi: f64 },

    #[error("unknown suite id {0:?}")]
    UnknownSuite(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("inverted range: {lo} > {hi}")]
    InvertedRange { lo: i64, hi: i64 },
}

impl Error {
    /// True for errors caused by malformed requests (CLI exit code 2) rather
    /// than by data outside an operation's domain (exit code 1 paths).
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::UnknownSuite(_)
                | Error::InvalidConfig(_)
                | Error::InvertedRange { .. }
                | Error::EmptyRadiusRange { .. }
                | Error::EvenK(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
