use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("leading coefficient a_1 must equal 1, got {0}")]
    NotNormalized(f64),
    #[error("coefficient list is empty")]
    EmptyCoefficients,
    #[error("non-finite coefficient at index {0}")]
    NonFinite(usize),
    #[error("family polynomial of degree {0} has vanishing top coefficient")]
    DegenerateTop(usize),
    #[error("U'_N(c_N) underflowed for N = {0}")]
    DerivativeUnderflow(usize),
    #[error("Koebe function is singular at z = 1")]
    KoebePole,
    #[error("grid size {got} is below the minimum {min}")]
    GridTooSmall { got: usize, min: usize },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("sample count {got} is below the minimum {min}")]
    TooFewSamples { got: usize, min: usize },
    #[error("a_3 = 0: the quadratic Phi is affine and has no critical point")]
    AffinePhi,
    #[error("parameter {s} outside [{lo}, {hi}] for segment {seg}")]
    OutOfRange {
        seg: &'static str,
        s: f64,
        lo: f64,
        hi: f64,
    },
    #[error("radius {0} outside [0.9, 1)")]
    BadRadius(f64),
    #[error("radii must be nonempty and ascending")]
    BadRadii,
    #[error("scan resolution {0} is below 100")]
    ResolutionTooSmall(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
