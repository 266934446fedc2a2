use thiserror::Error;

/// Errors for table construction, predicates, reductions and enumeration.
///
/// Elements mentioned in messages are reported 1-based, matching the text
/// formats, even though the library API is 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid carrier size or arity: k = {k}, n = {n} (need 1 <= k <= 255, 1 <= n <= 16, k^n <= 2^28)")]
    ArityOrSizeInvalid { k: usize, n: usize },

    #[error("table has {got} entries, expected k^n = {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("entry {value} outside the carrier 1..={k}")]
    ValueOutOfRange { value: usize, k: usize },

    #[error("argument tuple has {got} entries, expected arity {expected}")]
    TupleArityMismatch { expected: usize, got: usize },

    #[error("associativity is undefined for arity {n} (need n >= 2)")]
    ArityTooSmall { n: usize },

    #[error("the supplied order is not a permutation of 1..=k")]
    NotAPermutation,

    #[error("operation has arity {got}, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("ternary compositions only produce odd arities, got target {n}")]
    EvenTargetArity { n: usize },

    #[error("{element} is not a neutral element of the operation")]
    NotANeutralElement { element: usize },

    #[error("composition check failed: the input is not reducible this way (not associative and quasitrivial)")]
    NotReducible,

    #[error("operation is not associative and quasitrivial")]
    NotAssociativeQuasitrivial,

    #[error("operation is not quasitrivial")]
    NotQuasitrivial,

    #[error("maximum is undefined on tuple ({tuple}): two distinct maximal elements")]
    PartialOperation { tuple: String },

    #[error("cost limit exceeded: {required} units needed, budget is {budget}")]
    CostLimitExceeded { required: String, budget: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("internal contradiction (please report): {0}")]
    InternalContradiction(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn partial_operation(tuple: &[u8]) -> Self {
        let printed: Vec<String> = tuple.iter().map(|x| (*x as usize + 1).to_string()).collect();
        Error::PartialOperation { tuple: printed.join(",") }
    }
}
