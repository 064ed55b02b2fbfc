//! Error types shared across the engine.

use crate::ontology::ConceptId;
use crate::space::MetaModel;
use thiserror::Error;

/// Errors raised while parsing relation files or building a concept index.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OntologyError {
    #[error("malformed line {line}")]
    MalformedLine { line: usize },
    #[error("invalid concept uri {text:?}: must be non-empty and contain no whitespace")]
    InvalidConcept { text: String },
    #[error("concept {0} declared as its own superconcept")]
    SelfPair(ConceptId),
    #[error("unknown concept {0}")]
    UnknownConcept(ConceptId),
    #[error("cycle detected in superconcept relation at {0}")]
    CycleDetected(ConceptId),
    #[error("hash collision: {first} and {second} both hash to {code}")]
    HashCollision {
        first: ConceptId,
        second: ConceptId,
        code: u32,
    },
    #[error("unknown ontology format {0:?}")]
    UnknownFormat(String),
}

/// Errors raised by similarity queries.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimilarityError {
    #[error("unknown concept {0}")]
    UnknownConcept(ConceptId),
    #[error("similarity floor {0} outside [0, 1]")]
    FloorOutOfRange(f64),
}

/// Errors raised by space operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpaceError {
    #[error("no ontology loaded for model {0}")]
    ModelNotLoaded(MetaModel),
    #[error("unknown concept {0}")]
    UnknownConcept(ConceptId),
    #[error("similarity floor {0} outside [0, 1]")]
    FloorOutOfRange(f64),
    #[error("invalid lease: {0} ms (must be positive)")]
    InvalidLease(i64),
}

impl From<SimilarityError> for SpaceError {
    fn from(err: SimilarityError) -> Self {
        match err {
            SimilarityError::UnknownConcept(c) => SpaceError::UnknownConcept(c),
            SimilarityError::FloorOutOfRange(f) => SpaceError::FloorOutOfRange(f),
        }
    }
}
