use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot evaluate a Laurent polynomial at 0")]
    EvalAtZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("gluing matrix has determinant {0}, expected 1")]
    NotUnimodular(i64),

    #[error("invalid slope parameters: {0}")]
    InvalidParams(String),

    #[error(
        "slope {p}/{q} is outside the supported range |p| > 1: slopes with p = 0 or p = 1 \
         are already known to be non-characterising by other methods, and negative slopes \
         reduce to positive ones by mirroring"
    )]
    SlopeOutOfRange { p: i64, q: i64 },

    #[error("invalid braid word: {0}")]
    InvalidBraid(String),

    #[error("braid word is not positive")]
    NonPositiveBraid,

    #[error("oracle budget exceeded: word has {crossings} crossings, budget is {budget}")]
    OracleBudget { crossings: usize, budget: usize },

    #[error("no square found for {word} within {nodes} search nodes and the oracle fallback failed: {fallback}")]
    SquareSearch {
        word: String,
        nodes: usize,
        fallback: String,
    },

    #[error("expected a knot but the closure has {0} components")]
    NotAKnot(usize),

    #[error("odd power of v in the zeroth coefficient: {0}")]
    OddPower(String),

    #[error("internal identity check failed: {0}")]
    IdentityMismatch(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}
