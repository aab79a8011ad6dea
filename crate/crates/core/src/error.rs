use alloc::string::String;

/// Errors raised by the library.
///
/// [`Error::Invariant`] is special: it signals that a computation reached a
/// state that the underlying mathematics rules out, i.e. a bug or a
/// falsified theorem. Callers should never recover from it silently.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("point {0} is not in [0, 1)")]
    PointOutOfRange(String),
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("empty set has no covering radius")]
    EmptyConfiguration,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invalid cyclic graph: {0}")]
    InvalidGraph(String),
    #[error("l undefined: r = {0} is a singular value")]
    SingularRadius(String),
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error("not finitely computable: continuum wedge")]
    Continuum,
    #[error("oracle is desk-scale only: {size} vertices exceeds cap {cap}")]
    OverCap { size: usize, cap: usize },
    #[error("empty sigma")]
    EmptySimplex,
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}
