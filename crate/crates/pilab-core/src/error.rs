use thiserror::Error;

/// Errors surfaced by the engine.
///
/// Failures of mathematical checks (validators, hook constraints, bound
/// comparisons) are ordinary return values, not errors; this type covers
/// contract violations, malformed input and internal consistency gates.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid hook: k = 0 and l = 0 with d > 0")]
    InvalidHook,

    #[error("parity mismatch: {0}")]
    ParityMismatch(String),

    #[error("parity-typed input required: {0}")]
    ParityRequired(String),

    #[error("tableau mismatch: {0}")]
    TableauMismatch(String),

    #[error("grading required: {0}")]
    GradingRequired(String),

    #[error("unknown builtin algebra `{0}`")]
    UnknownBuiltin(String),

    #[error("algebra fails its declared class: {0}")]
    ClassValidation(String),

    #[error("basis rows are linearly dependent (row {0})")]
    DependentBasis(usize),

    #[error("prime {0} divides a denominator of the input")]
    BadPrime(u64),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("modular/exact verification mismatch: exact rank {exact}, rank mod {prime} = {modular}")]
    VerificationMismatch {
        exact: usize,
        modular: usize,
        prime: u64,
    },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
