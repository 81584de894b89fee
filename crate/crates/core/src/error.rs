use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: n = {0} vs n = {1}")]
    RingMismatch(usize, usize),

    #[error("invalid variable: {0}")]
    InvalidVariable(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("not a Groebner basis: S-pair ({0}, {1}) leaves a nonzero remainder")]
    NotGroebner(usize, usize),

    #[error("pair budget of {0} exhausted during completion")]
    PairBudget(usize),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
