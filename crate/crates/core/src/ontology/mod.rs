//! Taxonomy ingestion and the per-model concept path index.
//!
//! The index is built in three sequential steps per concept: collect the
//! upward closure of child/superconcept pairs ([`create_child_parents_list`]),
//! expand it into every distinct root-to-concept path
//! ([`create_concept_path_list`]), and reduce each path to hash codes and a
//! packed big-integer key. [`build_concept_index`] runs all three for every
//! known concept and returns the immutable structure the space matches
//! against at write/read/take time.

mod format;
mod hash;

pub use format::{
    parse_ntriples_subclass, parse_pairs, FormatRegistry, NTriplesFormat, PairSource, PairsFormat,
};
pub use hash::{abs_hash31, encode_path_key, string_hash31, HashPath, PathKey};

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use indexmap::{IndexMap, IndexSet};

use crate::error::OntologyError;

/// Identifier of an ontology concept, typically an IRI.
///
/// Non-empty, free of whitespace, compared by exact byte equality. Cheap to
/// clone; paths and indexes share the underlying string.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConceptId(Arc<str>);

impl ConceptId {
    pub fn new(uri: impl AsRef<str>) -> Result<Self, OntologyError> {
        let uri = uri.as_ref();
        if uri.is_empty() || uri.chars().any(char::is_whitespace) {
            return Err(OntologyError::InvalidConcept {
                text: uri.to_string(),
            });
        }
        Ok(ConceptId(Arc::from(uri)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ConceptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for ConceptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for ConceptId {
    type Err = OntologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConceptId::new(s)
    }
}

/// Ordered child/superconcept pairs, deduplicated keeping first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PairList {
    pairs: Vec<(ConceptId, ConceptId)>,
}

impl PairList {
    /// Normalizes a pair sequence: duplicates are dropped (first occurrence
    /// wins) and a pair whose child equals its parent is rejected.
    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (ConceptId, ConceptId)>,
    ) -> Result<Self, OntologyError> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (child, parent) in pairs {
            if child == parent {
                return Err(OntologyError::SelfPair(child));
            }
            if seen.insert((child.clone(), parent.clone())) {
                out.push((child, parent));
            }
        }
        Ok(PairList { pairs: out })
    }

    pub fn pairs(&self) -> &[(ConceptId, ConceptId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Every concept mentioned as child or parent, in first-mention order.
    pub fn mentioned_concepts(&self) -> IndexSet<ConceptId> {
        let mut set = IndexSet::new();
        for (child, parent) in &self.pairs {
            set.insert(child.clone());
            set.insert(parent.clone());
        }
        set
    }

    /// Direct superconcepts of every mentioned concept, in pair order.
    fn parent_map(&self) -> HashMap<ConceptId, Vec<ConceptId>> {
        let mut map: HashMap<ConceptId, Vec<ConceptId>> = HashMap::new();
        for (child, parent) in &self.pairs {
            map.entry(child.clone()).or_default().push(parent.clone());
            map.entry(parent.clone()).or_default();
        }
        map
    }
}

/// The upward closure of one concept: `(concept, superconcepts)` entries in
/// breadth-first discovery order, starting with the queried concept. A
/// parentless concept carries an empty superconcept list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChildParentsList {
    entries: Vec<(ConceptId, Vec<ConceptId>)>,
}

impl ChildParentsList {
    pub fn entries(&self) -> &[(ConceptId, Vec<ConceptId>)] {
        &self.entries
    }
}

/// One root-to-concept path; the first node has no superconcepts, the last
/// node is the concept the path belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConceptPath {
    nodes: Vec<ConceptId>,
}

impl ConceptPath {
    pub fn nodes(&self) -> &[ConceptId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The set of nodes on the path, including the concept itself.
    pub fn node_set(&self) -> HashSet<ConceptId> {
        self.nodes.iter().cloned().collect()
    }
}

impl fmt::Display for ConceptPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for node in &self.nodes {
            if !first {
                f.write_str(" -> ")?;
            }
            first = false;
            f.write_str(node.as_str())?;
        }
        Ok(())
    }
}

/// All distinct root-to-concept paths of one concept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptPathList {
    paths: Vec<ConceptPath>,
}

impl ConceptPathList {
    pub fn paths(&self) -> &[ConceptPath] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// Per-concept record inside a [`ConceptIndex`]. The hash paths, path keys
/// and node sets are index-aligned with the path list.
#[derive(Debug, Clone)]
pub struct ConceptRecord {
    paths: ConceptPathList,
    hash_paths: Vec<HashPath>,
    path_keys: Arc<Vec<PathKey>>,
    node_sets: Vec<HashSet<ConceptId>>,
}

impl ConceptRecord {
    pub fn paths(&self) -> &ConceptPathList {
        &self.paths
    }

    pub fn hash_paths(&self) -> &[HashPath] {
        &self.hash_paths
    }

    /// Shared handle to the packed path keys; cloned into the meta
    /// information of every entry written under this concept.
    pub fn path_keys(&self) -> &Arc<Vec<PathKey>> {
        &self.path_keys
    }

    pub fn node_sets(&self) -> &[HashSet<ConceptId>] {
        &self.node_sets
    }
}

/// Immutable per-model path index: every known concept mapped to its path
/// list and derived encodings, in deterministic (first-mention) order.
///
/// Building is a single-threaded batch job; a finished index is safely
/// shareable among any number of concurrent readers.
#[derive(Debug, Clone)]
pub struct ConceptIndex {
    concepts: IndexMap<ConceptId, ConceptRecord>,
    pair_source: PairList,
}

impl ConceptIndex {
    pub fn contains(&self, concept: &ConceptId) -> bool {
        self.concepts.contains_key(concept)
    }

    pub fn record(&self, concept: &ConceptId) -> Option<&ConceptRecord> {
        self.concepts.get(concept)
    }

    /// Stored path list of `concept`.
    pub fn paths_of(&self, concept: &ConceptId) -> Result<&ConceptPathList, OntologyError> {
        self.concepts
            .get(concept)
            .map(ConceptRecord::paths)
            .ok_or_else(|| OntologyError::UnknownConcept(concept.clone()))
    }

    /// Known concepts in deterministic index order.
    pub fn concepts(&self) -> impl Iterator<Item = &ConceptId> {
        self.concepts.keys()
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn pair_source(&self) -> &PairList {
        &self.pair_source
    }
}

/// Breadth-first upward closure of `concept` over `pairs`.
///
/// The first entry pairs the concept with its direct superconcepts in pair
/// order; discovered superconcepts are then expanded once each, in
/// discovery order. Errors on concepts absent from `pairs` and on cycles
/// reachable from `concept`.
pub fn create_child_parents_list(
    concept: &ConceptId,
    pairs: &PairList,
) -> Result<ChildParentsList, OntologyError> {
    let parent_map = pairs.parent_map();
    if !parent_map.contains_key(concept) {
        return Err(OntologyError::UnknownConcept(concept.clone()));
    }
    check_acyclic_from(concept, &parent_map)?;
    Ok(child_parents_list_unchecked(concept, &parent_map))
}

fn child_parents_list_unchecked(
    concept: &ConceptId,
    parent_map: &HashMap<ConceptId, Vec<ConceptId>>,
) -> ChildParentsList {
    let empty: Vec<ConceptId> = Vec::new();
    let parents_of = |c: &ConceptId| parent_map.get(c).unwrap_or(&empty);

    let mut listed: HashSet<ConceptId> = HashSet::new();
    let mut entries = Vec::new();
    let mut queue = VecDeque::new();
    listed.insert(concept.clone());
    queue.push_back(concept.clone());
    while let Some(current) = queue.pop_front() {
        let parents = parents_of(&current).clone();
        for parent in &parents {
            if listed.insert(parent.clone()) {
                queue.push_back(parent.clone());
            }
        }
        entries.push((current, parents));
    }
    ChildParentsList { entries }
}

/// Depth-first walk along the superconcept relation; a node revisited on
/// the current chain witnesses a cycle.
fn check_acyclic_from(
    start: &ConceptId,
    parent_map: &HashMap<ConceptId, Vec<ConceptId>>,
) -> Result<(), OntologyError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        OnChain,
        Done,
    }
    let empty: Vec<ConceptId> = Vec::new();
    let mut marks: HashMap<ConceptId, Mark> = HashMap::new();
    // Explicit stack: (node, next-parent cursor).
    let mut stack: Vec<(ConceptId, usize)> = vec![(start.clone(), 0)];
    marks.insert(start.clone(), Mark::OnChain);
    while let Some((node, cursor)) = stack.last().cloned() {
        let parents = parent_map.get(&node).unwrap_or(&empty);
        if cursor >= parents.len() {
            marks.insert(node, Mark::Done);
            stack.pop();
            continue;
        }
        stack.last_mut().expect("nonempty stack").1 += 1;
        let parent = &parents[cursor];
        match marks.get(parent) {
            Some(Mark::OnChain) => {
                return Err(OntologyError::CycleDetected(parent.clone()));
            }
            Some(Mark::Done) => {}
            None => {
                marks.insert(parent.clone(), Mark::OnChain);
                stack.push((parent.clone(), 0));
            }
        }
    }
    Ok(())
}

/// Expands a child-parents list into every distinct root-to-concept path.
///
/// Paths start as `(superconcept, concept)` seeds and grow by prefix
/// extension: whenever a path's first node matches a closure entry, its
/// first superconcept is prepended in place and one copy per additional
/// superconcept is appended at the end of the list. Passes repeat until no
/// path head can be extended, so heads matching already-visited entries
/// are still completed. The result order is deterministic given the
/// closure order.
pub fn create_concept_path_list(concept: &ConceptId, cpl: &ChildParentsList) -> ConceptPathList {
    let entries = cpl.entries();
    let direct: &[ConceptId] = entries
        .first()
        .filter(|(c, _)| c == concept)
        .map(|(_, parents)| parents.as_slice())
        .unwrap_or(&[]);

    let mut paths: Vec<Vec<ConceptId>> = if direct.is_empty() {
        vec![vec![concept.clone()]]
    } else {
        direct
            .iter()
            .map(|parent| vec![parent.clone(), concept.clone()])
            .collect()
    };

    loop {
        let mut changed = false;
        for (node, superconcepts) in entries.iter().skip(1) {
            if superconcepts.is_empty() {
                continue;
            }
            let mut extended = Vec::new();
            for path in paths.iter_mut() {
                if path.first() == Some(node) {
                    for extra in &superconcepts[1..] {
                        let mut copy = Vec::with_capacity(path.len() + 1);
                        copy.push(extra.clone());
                        copy.extend_from_slice(path);
                        extended.push(copy);
                    }
                    path.insert(0, superconcepts[0].clone());
                    changed = true;
                }
            }
            paths.extend(extended);
        }
        if !changed {
            break;
        }
    }

    debug_assert_eq!(
        paths.iter().collect::<HashSet<_>>().len(),
        paths.len(),
        "path expansion produced duplicates"
    );
    ConceptPathList {
        paths: paths
            .into_iter()
            .map(|nodes| ConceptPath { nodes })
            .collect(),
    }
}

/// Runs the three construction steps for every concept mentioned in
/// `pairs` or listed in `declared`, in first-mention order (declared-only
/// concepts follow, in the order given).
///
/// Fails on cyclic relations and on two distinct concepts sharing a hash
/// magnitude, rather than silently mis-indexing.
pub fn build_concept_index(
    pairs: PairList,
    declared: &[ConceptId],
) -> Result<ConceptIndex, OntologyError> {
    let mut known = pairs.mentioned_concepts();
    for concept in declared {
        known.insert(concept.clone());
    }
    let parent_map = pairs.parent_map();

    check_acyclic_all(&known, &parent_map)?;

    let mut seen_codes: HashMap<u32, ConceptId> = HashMap::new();
    for concept in &known {
        let code = abs_hash31(concept.as_str());
        if let Some(first) = seen_codes.insert(code, concept.clone()) {
            return Err(OntologyError::HashCollision {
                first,
                second: concept.clone(),
                code,
            });
        }
    }

    let mut concepts = IndexMap::with_capacity(known.len());
    for concept in &known {
        let cpl = child_parents_list_unchecked(concept, &parent_map);
        let paths = create_concept_path_list(concept, &cpl);
        let hash_paths: Vec<HashPath> = paths
            .paths()
            .iter()
            .map(|p| HashPath::new(p.nodes().iter().map(|n| abs_hash31(n.as_str())).collect()))
            .collect();
        let path_keys: Vec<PathKey> = hash_paths.iter().map(encode_path_key).collect();
        let node_sets: Vec<HashSet<ConceptId>> =
            paths.paths().iter().map(ConceptPath::node_set).collect();
        concepts.insert(
            concept.clone(),
            ConceptRecord {
                paths,
                hash_paths,
                path_keys: Arc::new(path_keys),
                node_sets,
            },
        );
    }

    Ok(ConceptIndex {
        concepts,
        pair_source: pairs,
    })
}

/// Kahn-style completeness check over the whole superconcept relation.
fn check_acyclic_all(
    known: &IndexSet<ConceptId>,
    parent_map: &HashMap<ConceptId, Vec<ConceptId>>,
) -> Result<(), OntologyError> {
    let empty: Vec<ConceptId> = Vec::new();
    // out-degree = number of superconcept edges still unresolved
    let mut pending: IndexMap<&ConceptId, usize> = known
        .iter()
        .map(|c| (c, parent_map.get(c).unwrap_or(&empty).len()))
        .collect();
    let mut children_of: HashMap<&ConceptId, Vec<&ConceptId>> = HashMap::new();
    for (child, parents) in parent_map {
        for parent in parents {
            children_of.entry(parent).or_default().push(child);
        }
    }
    let mut ready: VecDeque<&ConceptId> = pending
        .iter()
        .filter(|(_, &deg)| deg == 0)
        .map(|(&c, _)| c)
        .collect();
    let mut resolved = 0usize;
    while let Some(node) = ready.pop_front() {
        resolved += 1;
        if let Some(children) = children_of.get(node) {
            for &child in children {
                let deg = pending.get_mut(child).expect("child is known");
                *deg -= 1;
                if *deg == 0 {
                    ready.push_back(child);
                }
            }
        }
    }
    if resolved == known.len() {
        Ok(())
    } else {
        let witness = pending
            .iter()
            .find(|(_, &deg)| deg > 0)
            .map(|(&c, _)| c.clone())
            .expect("unresolved node exists");
        Err(OntologyError::CycleDetected(witness))
    }
}
