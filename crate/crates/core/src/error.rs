use thiserror::Error;

/// Errors raised by the temporal layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed temporal value `{0}`")]
    MalformedValue(String),
    #[error("value `{0}` has no absolute year and cannot be placed on the calendar")]
    Unanchored(String),
    #[error("interval start {start} is after its end {end}")]
    InvertedInterval { start: String, end: String },
    #[error("SPAN relation requires a third bound")]
    MissingSpanBound,
    #[error("relative expression falls outside the calendar (before year 1 or after 9999)")]
    OutOfCalendar,
    #[error("question cannot be split: nothing follows the signal `{0}`")]
    Unsplittable(String),
    #[error("answer `{0}` carries no date")]
    UndatedAnswer(String),
    #[error("no restriction answer survived filtering")]
    NoRestrictionAnswer,
    #[error("schema violation in question {id}: {reason}")]
    SchemaViolation { id: String, reason: String },
    #[error("invalid language pack: {0}")]
    PackInvalid(String),
    #[error("invalid fixture file: {0}")]
    FixtureInvalid(String),
    #[error("metrics need at least one item (POS = 0)")]
    EmptyPopulation,
    #[error("xml error: {0}")]
    Xml(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<quick_xml::Error> for Error {
    fn from(e: quick_xml::Error) -> Self {
        Error::Xml(e.to_string())
    }
}

impl From<quick_xml::events::attributes::AttrError> for Error {
    fn from(e: quick_xml::events::attributes::AttrError) -> Self {
        Error::Xml(e.to_string())
    }
}

impl From<quick_xml::encoding::EncodingError> for Error {
    fn from(e: quick_xml::encoding::EncodingError) -> Self {
        Error::Xml(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
