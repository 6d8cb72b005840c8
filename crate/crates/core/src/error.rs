use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("coset index out of range: need 1 <= k <= n, got n = {n}, k = {k}")]
    InvalidCoset { n: u64, k: u64 },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("{what} = {got} exceeds the enumeration limit {limit}")]
    LimitExceeded {
        what: &'static str,
        got: u64,
        limit: u64,
    },
    #[error("sandwich bounds need q >= 2, got q = {0}")]
    ModulusTooSmall(u64),
    #[error("cycle-length list must be nonempty")]
    EmptyLengths,
    #[error("cycle lengths must be positive and distinct")]
    InvalidLengths,
    #[error("order sample is empty")]
    EmptySample,
    #[error("element orders must be positive")]
    ZeroOrder,
    #[error("line {line}: {text:?} is not a positive decimal integer")]
    InvalidOrderLine { line: usize, text: String },
    #[error("fraction must lie in [0, 1]")]
    FractionOutOfRange,
    #[error("n_max = {0} is too small to contain a candidate degree block")]
    NoCandidateBlock(u64),
    #[error("invalid degree block ({0}, {1}): need an even m >= 2 followed by m + 1")]
    InvalidBlock(u64, u64),
    #[error("unknown statistic {0:?}")]
    UnknownStat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
