use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Cartesian forest: {0}")]
    InvalidForest(String),

    #[error("invalid Schröder tree: {0}")]
    InvalidSchroder(String),

    #[error("malformed parentheses word at offset {offset}: {reason}")]
    MalformedWord { offset: usize, reason: String },

    #[error("pattern must not be empty")]
    EmptyPattern,

    #[error("deletion matching needs a pattern of length at least 2")]
    PatternTooShort,

    #[error("window length {m} is out of range for a text of length {n}")]
    WindowLength { m: usize, n: usize },

    #[error("window cannot slide past the end of the text")]
    SlidePastEnd,

    #[error("window length {got} does not fit {kind} against a pattern of length {pattern}")]
    WindowMismatch {
        kind: &'static str,
        got: usize,
        pattern: usize,
    },

    #[error("filter width must be in 1..=128, got {0}")]
    FilterWidth(u32),

    #[error("enumeration size {0} exceeds the supported maximum of 12")]
    EnumerationBudget(usize),

    #[error("counting routes disagree at n = {0}")]
    CountMismatch(usize),

    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,

    #[error("collision entropy {h2} is infeasible for an alphabet of size {k}")]
    InfeasibleEntropy { h2: f64, k: u64 },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("methods disagree on match positions in trial {0}")]
    BenchDisagreement(usize),
}
