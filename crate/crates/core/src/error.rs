use thiserror::Error;

/// Errors surfaced by the library.
///
/// Resource guards (`Budget`, `Gate`) are kept distinct from verification
/// failures and bad input so callers can tell "ran out of budget" apart from
/// "the claim is false".
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable `{0}` has no assigned image")]
    UnassignedVariable(String),

    #[error("axis {axis} out of range for a {ndim}-dimensional box")]
    AxisOutOfRange { axis: usize, ndim: usize },

    #[error("operation requires a 3-dimensional box, got {0} dimensions")]
    NotThreeDimensional(usize),

    #[error("budget exhausted: {what} exceeded limit {limit}")]
    Budget { what: &'static str, limit: usize },

    #[error("size gate exceeded: {what} is {actual}, gate is {gate}")]
    Gate {
        what: &'static str,
        actual: usize,
        gate: usize,
    },

    #[error("ideal is not flagged as a reduced Groebner basis")]
    NotAGroebnerBasis,

    #[error("ideal is not homogeneous")]
    NotHomogeneous,

    #[error("insufficient sample degrees for Hilbert fit: need at least {needed}")]
    InsufficientSamples { needed: usize },

    #[error("genericity failure: {0}")]
    Genericity(String),

    #[error("retry budget exhausted while generating points for seed {seed}")]
    PointRetries { seed: u64 },

    #[error("zero tensor has no decomposability verdict")]
    ZeroTensor,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
