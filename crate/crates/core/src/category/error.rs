use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CategoryError {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("no factorization: {0}")]
    NoFactorization(String),
    #[error("component mismatch: {0}")]
    ComponentMismatch(String),
}
