use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed polynomial text: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("zero polynomial is not a valid solver input")]
    ZeroPolynomial,

    #[error("constant term is zero; deflate roots at the origin first")]
    ZeroConstantTerm,

    #[error("region contains the origin")]
    OriginInRegion,

    #[error("empty point set: no finite ordinate")]
    EmptyHull,

    #[error("precision cap of {cap} bits reached: {context}")]
    PrecisionCap { cap: u32, context: String },

    #[error("value out of double-precision range: {0}")]
    Range(String),
}

pub type Result<T> = std::result::Result<T, Error>;
