use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("invalid rational {0:?}: expected \"p\" or \"p/q\" with integers p, q and q != 0")]
    BadRational(String),

    #[error("invalid GKM data: {0}")]
    Invalid(#[from] crate::gkm::ValidationIssue),

    #[error("rank mismatch: expected a vector of length {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error(
        "circle selection is not generic: edge {v} -- {w} has weight {weight:?} pairing to zero"
    )]
    NonGeneric {
        v: String,
        w: String,
        weight: Vec<i64>,
    },

    #[error("moment map is not constant on the index-{index} level")]
    HypothesisNotMet { index: usize },

    #[error("no canonical class at vertex {vertex}: the fixed-point data is not realizable")]
    NoCanonicalClass { vertex: String },

    #[error(
        "canonical class at vertex {vertex} is not unique ({dimension}-dimensional ambiguity)"
    )]
    AmbiguousCanonicalClass { vertex: String, dimension: usize },

    #[error("localization sum is not a polynomial (coefficient {coefficient} at u^{power})")]
    NonPolynomialIntegral { power: i64, coefficient: String },

    #[error("class is not in the span of the canonical basis (residual at vertex {vertex})")]
    ExpansionFailed { vertex: String },

    #[error("malformed class: {0}")]
    MalformedClass(String),

    #[error("ordinary ring has no distinguished degree-two class")]
    MissingOmega,

    #[error("cannot render: {0}")]
    Render(String),
}
