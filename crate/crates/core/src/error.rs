use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("presentation error: {0}")]
    Presentation(String),
    #[error("fiber basis error: {0}")]
    Basis(String),
    #[error("arity error: partition {partition} has more than {vars} parts")]
    Arity { partition: String, vars: usize },
    #[error("symmetry error: {0}")]
    Symmetry(String),
    #[error("evaluation model error: {0}")]
    EvaluationModel(String),
    #[error("trivial action: all weights equal {0}")]
    TrivialAction(String),
    #[error("degeneracy: {0}")]
    Degeneracy(String),
    #[error("invalid input: {0}")]
    Spec(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
