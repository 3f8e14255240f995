use num_bigint::BigUint;
use thiserror::Error;

/// Errors reported by the library.
///
/// Validation failures name the offending symbol or transition so callers can
/// produce useful diagnostics; certificate failures indicate an internal
/// inconsistency (they contradict a property that holds for validated inputs)
/// and should be treated as bugs rather than recoverable states.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SftError {
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("matrix entry at row {row}, column {col} is {value}, expected 0 or 1")]
    NonBinaryEntry { row: usize, col: usize, value: i64 },
    #[error("symbol `{0}` has an all-zero row or column")]
    ZeroRowOrColumn(String),
    #[error("matrix is {rows}x{cols}, expected a square matrix matching the alphabet size {alphabet}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        alphabet: usize,
    },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("word or point violates a transition: `{from}` -> `{to}` is not allowed")]
    BadTransition { from: String, to: String },
    #[error("empty word where a nonempty one is required")]
    EmptyWord,
    #[error("forbidding the symbol leaves an empty shift")]
    EmptyShift,
    #[error("shift is not irreducible")]
    NotIrreducible,
    #[error("shift is not mixing")]
    NotMixing,
    #[error("enumeration of {count} items exceeds the configured cap {cap}")]
    EnumerationLimit { count: BigUint, cap: u64 },
    #[error("alphabet size {size} exceeds the configured cap {cap}")]
    AlphabetLimit { size: usize, cap: usize },
    #[error("symbol map does not respect transition `{from}` -> `{to}`")]
    TransitionNotRespected { from: String, to: String },
    #[error("code is not a factor onto its codomain; missing word: {missing:?}")]
    NotFactor { missing: Vec<String> },
    #[error("code is not left-closing or right-closing; fibers may be infinite")]
    NotClosing,
    #[error("code is not left-closing")]
    NotLeftClosing,
    #[error("code is not almost invertible: d* = {d_star}")]
    NotAlmostInvertible { d_star: usize },
    #[error("no magic symbol found after {rounds} recoding rounds")]
    MagicSymbolNotFound { rounds: usize },
    #[error("minimal polynomial could not be certified irreducible at degree {degree}")]
    FactorizationIncomplete { degree: usize },
    #[error("sign of an algebraic number could not be decided within the refinement cap")]
    SignUndecided,
    #[error("ideal representations live over different rings")]
    RingMismatch,
    #[error("entropy gap could not be certified positive")]
    GapNotCertified,
    #[error("certificate verification failed: {0}")]
    CertificateFailure(String),
    #[error("preimage is not unique; the setup contradicts its own validation")]
    UniquenessViolated,
    #[error("point is outside X': {explanation}")]
    NotInXPrime { explanation: String },
    #[error("point does not belong to the expected shift: {0}")]
    PointMismatch(String),
    #[error("codes do not share the expected domain or codomain")]
    DomainMismatch,
}
