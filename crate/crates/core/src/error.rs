use thiserror::Error;

/// Errors raised by the category operations and the decomposition procedures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot compose: codomain {cod} of the first morphism does not match domain {dom} of the second")]
    CompositionDomain { cod: String, dom: String },

    #[error("instance mismatch: {0}")]
    Instance(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("matrix is numerically singular (smallest singular value {sigma_min:e})")]
    Singular { sigma_min: f64 },

    #[error("invalid witness: {0}")]
    Witness(String),

    #[error("size limit exceeded: {0}")]
    Size(String),

    #[error("vector is not normalized (norm {norm})")]
    Normalization { norm: f64 },

    #[error("coupling measure is undefined for the zero operator")]
    UndefinedMeasure,

    #[error("invalid sample spec: {0}")]
    Spec(String),

    #[error("invalid object: {0}")]
    Object(String),
}

pub type Result<T> = std::result::Result<T, Error>;
