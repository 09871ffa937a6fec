use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed scalar `{0}`")]
    ScalarSyntax(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("rewrite needs an ascending pair, got ({0}, {1})")]
    NotAscending(usize, usize),
    #[error("triple ({0}, {1}, {2}) is not strictly increasing")]
    NotIncreasingTriple(usize, usize, usize),
    #[error("g({0},{1}) vanishes, so D{0}D{1} cannot be rewritten")]
    DegenerateRelation(usize, usize),
    #[error("exploration exceeded {0} states")]
    StateCapExceeded(usize),
    #[error("presentation does not have the PBW property")]
    NotPbw,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("component {0:?} is not connected by its intra-component coefficients")]
    Disconnected(Vec<usize>),
    #[error("incompatible blocks: {0}")]
    IncompatibleBlocks(String),
    #[error("interleaving is not compatible with the blocks: {0}")]
    IncompatibleInterleaving(String),
    #[error("rescaling factor for generator {0} is zero")]
    ZeroRescale(usize),
    #[error("not a permutation of 1..={0}")]
    NotPermutation(usize),
    #[error("permutation breaks the ordering requirement: new g({0},{1}) is zero")]
    OrderViolation(usize, usize),
    #[error("shift not applicable: {0}")]
    NotApplicable(String),
}
