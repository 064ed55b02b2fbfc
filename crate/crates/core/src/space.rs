//! The concurrent in-memory space.
//!
//! Entries are opaque payloads annotated with a meta model, a concept and a
//! lease. A semantic read returns every live entry whose concept clears the
//! query's similarity floor; a take atomically removes and returns every
//! live entry of the exact concept. Expired entries are invisible from the
//! moment their lease runs out and are physically removed by [`Space::expire`].
//!
//! Every operation is atomic and the operation history is linearizable: all
//! shared state sits behind one reader-writer lock, reads run concurrently,
//! writes and takes are exclusive. No operation blocks waiting for data.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use bytes::Bytes;
use parking_lot::RwLock;

use crate::error::SpaceError;
use crate::ontology::{ConceptId, ConceptIndex, PathKey};
use crate::similarity::{matching_concepts, s_dice, SimilarityDegree};

/// The ontology language family a concept belongs to. Each loaded model
/// carries its own concept index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MetaModel {
    Rdfs,
    Wsml,
}

impl MetaModel {
    pub const ALL: [MetaModel; 2] = [MetaModel::Rdfs, MetaModel::Wsml];

    pub fn as_str(&self) -> &'static str {
        match self {
            MetaModel::Rdfs => "RDFS",
            MetaModel::Wsml => "WSML",
        }
    }
}

impl fmt::Display for MetaModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MetaModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "RDFS" => Ok(MetaModel::Rdfs),
            "WSML" => Ok(MetaModel::Wsml),
            other => Err(format!(
                "unknown meta model {other:?} (expected RDFS or WSML)"
            )),
        }
    }
}

/// Granted validity period of an entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lease {
    pub requested_ms: u64,
    /// Never exceeds the requested duration or the configured maximum.
    pub granted_ms: u64,
    /// Absolute expiry, milliseconds since the Unix epoch.
    pub expires_at_ms: u64,
}

/// Semantic annotation of a stored entry.
#[derive(Debug, Clone, PartialEq)]
pub struct MetaInformation {
    pub model: MetaModel,
    pub concept: ConceptId,
    /// Packed path keys copied from the concept index at write time.
    pub path_keys: Arc<Vec<PathKey>>,
    /// Space-wide unique identifier, addressable via [`Space::read_by_id`].
    pub identifier: String,
}

/// A semantic read request.
#[derive(Debug, Clone)]
pub struct SemanticQuery {
    pub model: MetaModel,
    pub concept: ConceptId,
    /// Similarity floor in [0, 1]; see [`matching_concepts`] for semantics.
    pub floor: f64,
}

/// A syntactic read request: exact identifier match.
#[derive(Debug, Clone)]
pub struct SyntacticQuery {
    pub identifier: String,
}

/// One match returned by read or take.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultItem {
    pub id: u64,
    pub concept: ConceptId,
    pub degree: SimilarityDegree,
    pub payload: Bytes,
    pub identifier: String,
}

/// Matches ordered by degree descending, then write order ascending.
pub type ResultsList = Vec<ResultItem>;

/// Receipt of a successful write.
#[derive(Debug, Clone, PartialEq)]
pub struct WriteReceipt {
    pub id: u64,
    pub identifier: String,
    pub lease: Lease,
}

/// Counters and a consistent liveness snapshot.
///
/// `total_writes` and `total_reads` count operations; `total_takes` and
/// `expired_total` count entries removed, so that
/// `total_writes - total_takes - expired_total == live_entries` holds on a
/// quiescent space.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpaceStats {
    pub live_entries: u64,
    pub entries_per_model: HashMap<MetaModel, u64>,
    pub total_writes: u64,
    pub total_reads: u64,
    pub total_takes: u64,
    pub expired_total: u64,
}

/// Space construction parameters.
#[derive(Debug, Clone)]
pub struct SpaceConfig {
    /// Upper bound on granted leases, milliseconds.
    pub max_lease_ms: u64,
}

pub const DEFAULT_MAX_LEASE_MS: u64 = 3_600_000;

impl Default for SpaceConfig {
    fn default() -> Self {
        SpaceConfig {
            max_lease_ms: DEFAULT_MAX_LEASE_MS,
        }
    }
}

struct StoredEntry {
    id: u64,
    payload: Bytes,
    meta: MetaInformation,
    lease: Lease,
}

impl StoredEntry {
    fn live_at(&self, now_ms: u64) -> bool {
        self.lease.expires_at_ms > now_ms
    }

    fn to_result(&self, degree: SimilarityDegree) -> ResultItem {
        ResultItem {
            id: self.id,
            concept: self.meta.concept.clone(),
            degree,
            payload: self.payload.clone(),
            identifier: self.meta.identifier.clone(),
        }
    }
}

#[derive(Default)]
struct SpaceInner {
    indexes: HashMap<MetaModel, Arc<ConceptIndex>>,
    /// id-ordered so per-concept scans yield write order.
    entries: BTreeMap<u64, StoredEntry>,
    by_concept: HashMap<(MetaModel, ConceptId), Vec<u64>>,
    by_identifier: HashMap<String, u64>,
    next_id: u64,
}

/// The shared space service object, safe for unrestricted concurrent use.
pub struct Space {
    inner: RwLock<SpaceInner>,
    config: SpaceConfig,
    total_writes: AtomicU64,
    total_reads: AtomicU64,
    total_takes: AtomicU64,
    expired_reaped: AtomicU64,
}

impl Default for Space {
    fn default() -> Self {
        Space::new(SpaceConfig::default())
    }
}

impl Space {
    pub fn new(config: SpaceConfig) -> Self {
        Space {
            inner: RwLock::new(SpaceInner {
                next_id: 1,
                ..SpaceInner::default()
            }),
            config,
            total_writes: AtomicU64::new(0),
            total_reads: AtomicU64::new(0),
            total_takes: AtomicU64::new(0),
            expired_reaped: AtomicU64::new(0),
        }
    }

    pub fn config(&self) -> &SpaceConfig {
        &self.config
    }

    /// Milliseconds since the Unix epoch.
    pub fn now_ms() -> u64 {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .unwrap_or_default()
            .as_millis() as u64
    }

    /// Atomically installs or replaces the concept index of `model`.
    /// Existing entries of the model remain stored; subsequent matching
    /// uses the new index.
    pub fn load_model(&self, model: MetaModel, index: ConceptIndex) {
        self.inner.write().indexes.insert(model, Arc::new(index));
    }

    /// Shared handle to the currently loaded index of `model`.
    pub fn index(&self, model: MetaModel) -> Option<Arc<ConceptIndex>> {
        self.inner.read().indexes.get(&model).cloned()
    }

    /// Stores a payload under `concept` with a fresh id and a lease no
    /// longer than requested or than the configured maximum.
    pub fn write(
        &self,
        payload: Bytes,
        model: MetaModel,
        concept: &ConceptId,
        requested_lease_ms: u64,
    ) -> Result<WriteReceipt, SpaceError> {
        if requested_lease_ms == 0 {
            return Err(SpaceError::InvalidLease(0));
        }
        let mut inner = self.inner.write();
        let index = inner
            .indexes
            .get(&model)
            .ok_or(SpaceError::ModelNotLoaded(model))?;
        let record = index
            .record(concept)
            .ok_or_else(|| SpaceError::UnknownConcept(concept.clone()))?;
        let path_keys = Arc::clone(record.path_keys());

        let granted_ms = requested_lease_ms.min(self.config.max_lease_ms);
        let now = Self::now_ms();
        let lease = Lease {
            requested_ms: requested_lease_ms,
            granted_ms,
            expires_at_ms: now.saturating_add(granted_ms),
        };
        let id = inner.next_id;
        inner.next_id += 1;
        let identifier = format!("ent-{id}");
        let entry = StoredEntry {
            id,
            payload,
            meta: MetaInformation {
                model,
                concept: concept.clone(),
                path_keys,
                identifier: identifier.clone(),
            },
            lease,
        };
        inner.entries.insert(id, entry);
        inner
            .by_concept
            .entry((model, concept.clone()))
            .or_default()
            .push(id);
        inner.by_identifier.insert(identifier.clone(), id);
        self.total_writes.fetch_add(1, Ordering::Relaxed);
        Ok(WriteReceipt {
            id,
            identifier,
            lease,
        })
    }

    /// Non-destructive semantic read: every live entry of the model whose
    /// concept clears the floor, tagged with its degree. Never blocks;
    /// returns an empty list when nothing matches.
    pub fn read(&self, query: &SemanticQuery) -> Result<ResultsList, SpaceError> {
        let inner = self.inner.read();
        let index = inner
            .indexes
            .get(&query.model)
            .ok_or(SpaceError::ModelNotLoaded(query.model))?;
        let matches = matching_concepts(index, &query.concept, query.floor)?;
        let now = Self::now_ms();
        let mut results = Vec::new();
        for (concept, degree) in matches.matches() {
            let Some(ids) = inner.by_concept.get(&(query.model, concept.clone())) else {
                continue;
            };
            for id in ids {
                let entry = &inner.entries[id];
                if entry.live_at(now) {
                    results.push(entry.to_result(*degree));
                }
            }
        }
        results.sort_by(|a, b| b.degree.cmp(&a.degree).then_with(|| a.id.cmp(&b.id)));
        self.total_reads.fetch_add(1, Ordering::Relaxed);
        Ok(results)
    }

    /// Syntactic read: the live entry with exactly this identifier, or an
    /// empty list.
    pub fn read_by_id(&self, query: &SyntacticQuery) -> ResultsList {
        let inner = self.inner.read();
        let now = Self::now_ms();
        let results = inner
            .by_identifier
            .get(&query.identifier)
            .map(|id| &inner.entries[id])
            .filter(|entry| entry.live_at(now))
            .map(|entry| vec![entry.to_result(SimilarityDegree::ONE)])
            .unwrap_or_default();
        self.total_reads.fetch_add(1, Ordering::Relaxed);
        results
    }

    /// Atomically removes and returns every live entry whose meta matches
    /// `(model, concept)` exactly. Concurrent takes never return the same
    /// entry twice.
    pub fn take(&self, model: MetaModel, concept: &ConceptId) -> Result<ResultsList, SpaceError> {
        let mut inner = self.inner.write();
        let index = inner
            .indexes
            .get(&model)
            .ok_or(SpaceError::ModelNotLoaded(model))?;
        if !index.contains(concept) {
            return Err(SpaceError::UnknownConcept(concept.clone()));
        }
        let ids = inner
            .by_concept
            .remove(&(model, concept.clone()))
            .unwrap_or_default();
        let now = Self::now_ms();
        let mut results = Vec::with_capacity(ids.len());
        let mut expired = 0u64;
        for id in ids {
            let entry = inner.entries.remove(&id).expect("indexed entry exists");
            inner.by_identifier.remove(&entry.meta.identifier);
            if entry.live_at(now) {
                results.push(entry.to_result(SimilarityDegree::ONE));
            } else {
                expired += 1;
            }
        }
        self.total_takes
            .fetch_add(results.len() as u64, Ordering::Relaxed);
        self.expired_reaped.fetch_add(expired, Ordering::Relaxed);
        Ok(results)
    }

    /// Removes every entry whose lease has run out at `now_ms`; returns the
    /// number removed. Safe to call at any time; matching already treats
    /// expired entries as invisible, so correctness never depends on when
    /// this runs.
    pub fn expire(&self, now_ms: u64) -> usize {
        let mut inner = self.inner.write();
        let dead: Vec<u64> = inner
            .entries
            .values()
            .filter(|e| !e.live_at(now_ms))
            .map(|e| e.id)
            .collect();
        for id in &dead {
            let entry = inner.entries.remove(id).expect("listed entry exists");
            inner.by_identifier.remove(&entry.meta.identifier);
            let key = (entry.meta.model, entry.meta.concept.clone());
            if let Some(ids) = inner.by_concept.get_mut(&key) {
                ids.retain(|i| i != id);
                if ids.is_empty() {
                    inner.by_concept.remove(&key);
                }
            }
        }
        self.expired_reaped
            .fetch_add(dead.len() as u64, Ordering::Relaxed);
        dead.len()
    }

    /// Reaps everything expired as of the current clock.
    pub fn expire_now(&self) -> usize {
        self.expire(Self::now_ms())
    }

    /// Dice similarity of two concepts under the loaded index of `model`.
    pub fn s_dice(
        &self,
        model: MetaModel,
        c1: &ConceptId,
        c2: &ConceptId,
    ) -> Result<SimilarityDegree, SpaceError> {
        let inner = self.inner.read();
        let index = inner
            .indexes
            .get(&model)
            .ok_or(SpaceError::ModelNotLoaded(model))?;
        Ok(s_dice(index, c1, c2)?)
    }

    /// A consistent snapshot of counters and live-entry counts. Entries
    /// whose lease ran out but which have not been reaped yet count as
    /// expired, not live.
    pub fn stats(&self) -> SpaceStats {
        let inner = self.inner.read();
        let now = Self::now_ms();
        let mut live = 0u64;
        let mut pending_expiry = 0u64;
        let mut per_model: HashMap<MetaModel, u64> = HashMap::new();
        for entry in inner.entries.values() {
            if entry.live_at(now) {
                live += 1;
                *per_model.entry(entry.meta.model).or_default() += 1;
            } else {
                pending_expiry += 1;
            }
        }
        SpaceStats {
            live_entries: live,
            entries_per_model: per_model,
            total_writes: self.total_writes.load(Ordering::Relaxed),
            total_reads: self.total_reads.load(Ordering::Relaxed),
            total_takes: self.total_takes.load(Ordering::Relaxed),
            expired_total: self.expired_reaped.load(Ordering::Relaxed) + pending_expiry,
        }
    }
}
