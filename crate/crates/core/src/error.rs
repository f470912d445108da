use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no orthogonal direction exists in the weighted support of y")]
    InsufficientDimension,

    #[error("degenerate disk: a == A")]
    DegenerateDisk,

    #[error("no finite bounds: component {index} has positive weight, y = 0 and x != 0")]
    NoFiniteBounds { index: usize },

    #[error("no component has positive weight")]
    EmptySupport,

    #[error("family {0} requires unit weights")]
    UnsupportedWeights(&'static str),

    #[error("degenerate weight: A(h) = {0} is not positive")]
    DegenerateWeight(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
