use thiserror::Error;

/// Errors raised anywhere in the certification pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivByZero,
    #[error("field mismatch: sqrt({0}) and sqrt({1}) do not share a quadratic field")]
    FieldMismatch(u64, u64),
    #[error("invalid radicand {0}: expected a positive integer")]
    InvalidRadicand(String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("alpha = {0} is outside the elliptic range (0, 4)")]
    NotElliptic(String),
    #[error("target t = 0 is degenerate: the preimage polynomial drops degree")]
    DegenerateTarget,
    #[error("the zero polynomial has no Sturm chain")]
    ZeroPoly,
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("alpha = 0 is degenerate: G_0 is not free of rank two")]
    DegenerateAlpha,
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("{0}/2 is not a half-odd integer")]
    NotHalfOdd(i64),
    #[error("no standard family for numerator {0}: expected 1, 2 or 3")]
    UnknownFamily(i64),
    #[error("precision exhausted while separating roots: {0}")]
    PrecisionExhausted(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(what: &'static str, input: &str) -> Self {
        Error::Parse {
            what,
            input: input.to_string(),
        }
    }
}
