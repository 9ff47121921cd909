use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alpha must lie strictly between 0 and 1, got {0}")]
    AlphaOutOfRange(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("infeasible seed: {required} words requested but only {available} admissible words of length {length} exist")]
    InfeasibleSeed {
        required: BigUint,
        available: BigUint,
        length: u64,
    },

    #[error("degenerate permuted set at level {level}: {detail}")]
    DegeneratePermutedSet { level: usize, detail: String },

    #[error("level {level} is too large to materialize ({detail})")]
    MaterializationTooLarge { level: usize, detail: String },

    #[error("position {position} out of range for a word of length {length}")]
    PositionOutOfRange { position: BigUint, length: BigUint },

    #[error("word index {index} out of range 1..={count} at level {level}")]
    IndexOutOfRange {
        level: usize,
        index: BigUint,
        count: BigUint,
    },

    #[error("level {level} has not been built (max level {max_level})")]
    LevelNotBuilt { level: usize, max_level: usize },

    #[error("ordering table for level {0} is not materialized")]
    OrderingNotMaterialized(usize),

    #[error("prefix of length {requested} exceeds l_J = {available} for the configured max level")]
    PrefixBeyondMaxLevel { requested: u64, available: BigUint },

    #[error("input too large for direct window hashing: {0}")]
    InputTooLarge(String),

    #[error("factor index too large: {0}")]
    IndexTooLarge(String),

    #[error("tuple budget exceeded: {0}")]
    TupleBudgetExceeded(String),

    #[error("complexity bound violated at l = {l} (level {level}, k = {k}): {lower} <= {count} <= {upper} fails")]
    BoundViolated {
        l: u64,
        level: usize,
        k: u64,
        lower: BigUint,
        count: BigUint,
        upper: BigUint,
    },

    #[error("growth lemma bound violated at level {level}: {detail}")]
    LemmaBoundViolated { level: usize, detail: String },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("window of length {length} is too short; at least {required} symbols are needed")]
    WindowTooShort { length: usize, required: usize },

    #[error("window is not in the language at level {level}: {detail}")]
    NotInLanguage { level: usize, detail: String },

    #[error("window admits more than one block phase at level {level}: {phases:?}")]
    AmbiguousPhase { level: usize, phases: Vec<usize> },

    #[error("operation requires the {required} variant")]
    VariantUnsupported { required: &'static str },

    #[error("not an unpermuted chain: {0}")]
    NotUnpermutedChain(String),

    #[error("scan budget of {budget} exhausted; return time exceeds it")]
    BudgetExceeded { budget: u64 },

    #[error("level {level} too small: {detail}")]
    LevelTooSmall { level: usize, detail: String },

    #[error("cannot place D-words at the permuted slots of level {level}: {detail}")]
    InfeasiblePlacement { level: usize, detail: String },

    #[error("set too large: {0}")]
    SetTooLarge(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("selftest check {check} failed: {detail}")]
    SelftestFailed { check: String, detail: String },
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Process exit status: 1 for analysis findings, 2 for bad input,
    /// 3 when a size or time cap was hit.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BoundViolated { .. }
            | Error::LemmaBoundViolated { .. }
            | Error::InsufficientData(_)
            | Error::SelftestFailed { .. } => 1,
            Error::MaterializationTooLarge { .. }
            | Error::InputTooLarge(_)
            | Error::IndexTooLarge(_)
            | Error::TupleBudgetExceeded(_)
            | Error::BudgetExceeded { .. }
            | Error::SetTooLarge(_)
            | Error::PrefixBeyondMaxLevel { .. } => 3,
            _ => 2,
        }
    }
}
