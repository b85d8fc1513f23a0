use thiserror::Error;

use crate::linalg::PovmReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension cap exceeded: {requested} > {cap}")]
    DimensionCap { requested: usize, cap: usize },

    #[error("answer-count cap exceeded: {requested} answers > {cap}")]
    AnswerCap { requested: u128, cap: usize },

    #[error("enumeration cap exceeded: {requested} strings > {cap}")]
    EnumerationCap { requested: u128, cap: usize },

    #[error(
        "search budget exceeded: {requested} evaluations > {budget}; truncate the game further"
    )]
    Budget { requested: u128, budget: u128 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid POVM: {0}")]
    InvalidPovm(Box<PovmReport>),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("symbol {symbol} outside alphabet of size {size}")]
    Alphabet { symbol: u8, size: usize },

    #[error("invalid strategy: {0}")]
    Strategy(String),

    #[error("schema mismatch: {0}")]
    Schema(String),

    #[error("invalid game spec: {0}")]
    GameSpec(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag used in CLI error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionCap { .. } => "dimension_cap",
            Error::AnswerCap { .. } => "answer_cap",
            Error::EnumerationCap { .. } => "enumeration_cap",
            Error::Budget { .. } => "budget",
            Error::Shape(_) => "shape",
            Error::InvalidPovm(_) => "invalid_povm",
            Error::Parameter(_) => "parameter",
            Error::Alphabet { .. } => "alphabet",
            Error::Strategy(_) => "strategy",
            Error::Schema(_) => "schema",
            Error::GameSpec(_) => "game_spec",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }

    /// True for the cap and budget family of errors.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::DimensionCap { .. }
                | Error::AnswerCap { .. }
                | Error::EnumerationCap { .. }
                | Error::Budget { .. }
        )
    }
}
