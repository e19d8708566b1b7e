use thiserror::Error;

/// Errors raised by the workbench.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("alphabet size {0} is not a prime below 256")]
    NotPrime(u32),
    #[error("symbol {symbol} out of range for q = {q}")]
    SymbolOutOfRange { symbol: u32, q: u32 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("alphabet mismatch: q = {left} vs q = {right}")]
    AlphabetMismatch { left: u32, right: u32 },
    #[error("coordinate index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("relations contain a cycle through {0} and {1}; not a partial order")]
    NotAPoset(usize, usize),
    #[error("index set {0} is not a filter (up-set) of the poset")]
    NotAFilter(String),
    #[error("(I, J) = ({i}, {j}) is not decomposable")]
    NotDecomposable { i: String, j: String },
    #[error("generator matrix has rank {rank} < {rows} rows")]
    DegenerateGenerator { rank: usize, rows: usize },
    #[error("{what} of size {size} exceeds the configured cap {cap}")]
    TooLarge { what: &'static str, size: usize, cap: usize },
    #[error("tie-break override maps {word} to a codeword outside its nearest set")]
    InvalidTieBreak { word: String },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("support constraint violated: {0}")]
    Support(String),
    #[error("crossover probability {p} outside {range}")]
    ProbabilityOutOfRange { p: f64, range: String },
    #[error("operands refer to different codes")]
    CodeMismatch,
    #[error("degenerate value function: {0}")]
    DegenerateValue(String),
    #[error("invalid region: {0}")]
    Region(String),
    #[error("difference vector is not uniquely achieved ({0} pairs)")]
    NotUnique(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed raster: {0}")]
    Format(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// Short machine-readable tag for error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::SymbolOutOfRange { .. } => "symbol_out_of_range",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::AlphabetMismatch { .. } => "alphabet_mismatch",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::NotAPoset(..) => "not_a_poset",
            Error::NotAFilter(_) => "not_a_filter",
            Error::NotDecomposable { .. } => "not_decomposable",
            Error::DegenerateGenerator { .. } => "degenerate_generator",
            Error::TooLarge { .. } => "too_large",
            Error::InvalidTieBreak { .. } => "invalid_tie_break",
            Error::HypothesisViolated(_) => "hypothesis_violated",
            Error::Support(_) => "support",
            Error::ProbabilityOutOfRange { .. } => "probability_out_of_range",
            Error::CodeMismatch => "code_mismatch",
            Error::DegenerateValue(_) => "degenerate_value",
            Error::Region(_) => "region",
            Error::NotUnique(_) => "not_unique",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Format(_) => "format",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
