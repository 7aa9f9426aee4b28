use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero argument has no logarithm")]
    ZeroArgument,
    #[error("angle {theta} is not principal: it sits on an eigenvalue or leading-symbol direction")]
    NotPrincipal { theta: f64 },
    #[error("angle {theta} is not an Agmon angle for the operator")]
    NotAgmon { theta: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("index {0} is not in the index set")]
    IndexOutOfSet(i64),
    #[error("operators do not share an index set or multiplicities")]
    IndexSetMismatch,
    #[error("infinitely many eigenvalues on the imaginary axis")]
    InfiniteOnAxis,
    #[error("both the angle and its complement contain infinitely many eigenvalues")]
    InfiniteBothSides,
    #[error("eigenvalue on a boundary ray of the solid angle (index {0})")]
    BoundaryEigenvalue(i64),

    #[error("direct summation does not converge at s = {0}")]
    NotConvergent(String),
    #[error("evaluation point is a pole of the continuation")]
    PoleHit,
    #[error("expansion depth {k} is insufficient at s = {s}")]
    ExpansionDepthInsufficient { k: usize, s: String },
    #[error("Hurwitz zeta has a pole at z = 1")]
    PoleAtOne,
    #[error("Laurent fit unstable: {0}")]
    FitUnstable(String),
    #[error("zeta function has a pole at s = 0 (residue {0})")]
    PoleAtZero(String),

    #[error("truncation depth insufficient: need {needed}, have {available}")]
    DepthInsufficient { needed: usize, available: usize },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("symbol is not elliptic")]
    NotElliptic,
    #[error("not supported for scalar symbols: {0}")]
    NotScalarSupported(String),

    #[error("odd order required")]
    OddOrderRequired,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("spectrum is not symmetric about the real axis")]
    NotSymmetric,

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
