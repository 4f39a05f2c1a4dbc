use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch")]
    FieldMismatch,

    #[error("zero inverse")]
    ZeroInverse,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("reducible modulus {0:?}")]
    ReducibleModulus(Vec<u32>),

    #[error("empty window: h = {h} exceeds j = {j}")]
    EmptyWindow { h: usize, j: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("rank deficient: generator rows are dependent over F_q[x]")]
    RankDeficient,

    #[error("order out of range: r = {r}, expected 1..={max}")]
    OrderOutOfRange { r: usize, max: usize },

    #[error("predicate requires noncatastrophic code")]
    RequiresNoncatastrophic,

    #[error("primed-window formula requires a noncatastrophic code")]
    PrimedRequiresNoncatastrophic,

    /// A search was refused because its size exceeds the configured budget.
    /// `needed` is the decimal size of the search so callers can pick another mode.
    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        budget: u64,
    },

    #[error("no rank-{r} tuple of codewords with degree at most {bound}")]
    NoFeasibleTuple { r: usize, bound: usize },

    #[error("invalid code map: {0}")]
    InvalidMap(String),

    #[error("map is not an isometry")]
    NotIsometry,

    #[error("incompatible shapes: {0}")]
    Shape(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, needed: impl ToString, budget: u64) -> Self {
        Error::BudgetExceeded {
            what,
            needed: needed.to_string(),
            budget,
        }
    }
}
