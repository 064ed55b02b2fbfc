//! An in-memory semantic tuple space.
//!
//! Payloads are opaque byte sequences annotated with a concept from a
//! loaded taxonomy and bounded by a lease. Consumers retrieve them by
//! semantic closeness instead of by address: a read returns every live
//! entry whose concept scores above a similarity floor against the query
//! concept, where similarity is the Dice coefficient over root-to-concept
//! ancestor paths. A take removes and returns the entries of one exact
//! concept.
//!
//! The crate is organized around three layers:
//!
//! - [`ontology`]: taxonomy ingestion (plain pairs or an `rdfs:subClassOf`
//!   N-Triples subset) and the immutable per-model path index.
//! - [`similarity`]: exact-rational Dice degrees and floor matching.
//! - [`space`]: the concurrent store with write / read / take / expire.
//!
//! [`bench`] adds a latency harness for the space operations, and
//! [`sample`] bundles a small taxonomy fixture.

pub mod bench;
pub mod error;
pub mod ontology;
pub mod sample;
pub mod similarity;
pub mod space;

pub use error::{OntologyError, SimilarityError, SpaceError};
pub use ontology::{
    build_concept_index, ConceptId, ConceptIndex, ConceptPath, ConceptPathList, FormatRegistry,
    PairList,
};
pub use similarity::{brute_force_s_dice, matching_concepts, s_dice, MatchSet, SimilarityDegree};
pub use space::{
    Lease, MetaInformation, MetaModel, ResultItem, ResultsList, SemanticQuery, Space, SpaceConfig,
    SpaceStats, SyntacticQuery, WriteReceipt,
};
