use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division is not exact: {num} / {den}")]
    DivisionFailure { num: String, den: String },

    #[error("negative power of {var} meets non-monomial image {image}")]
    NonInvertibleSubstitution { var: String, image: String },

    #[error("empty window: {0}")]
    EmptyWindow(String),

    #[error("unsupported variable {0}")]
    UnsupportedVariable(String),

    #[error("vertex {0} is frozen")]
    FrozenVertex(String),

    #[error("vertex {0} is not in the quiver")]
    UnknownVertex(String),

    #[error("not multihomogeneous: {0}")]
    NotHomogeneous(String),

    #[error("not a negative l-weight: {0}")]
    NotNegative(String),

    #[error("not a positive l-weight: {0}")]
    NotPositive(String),

    #[error("only sl2 is supported here, got {0}")]
    NotSl2(String),

    #[error("certificate would need A-shifts outside the window [{lo}, {hi}]")]
    NotComparableWindow { lo: i64, hi: i64 },

    #[error("no unique highest term in {0}")]
    NoUniqueTop(String),

    #[error("truncation depths differ: {0:?} vs {1:?}")]
    DepthMismatch(Option<u32>, Option<u32>),

    #[error("{name}: identity fails\n  lhs = {lhs}\n  rhs = {rhs}")]
    Mismatch { name: String, lhs: String, rhs: String },

    #[error("unsupported case: missing {0}")]
    UnsupportedCase(String),

    #[error("counterexample: {0}")]
    Counterexample(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("unknown Cartan type {0:?}")]
    UnknownCartanType(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
