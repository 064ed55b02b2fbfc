//! Ancestor-path Dice similarity and threshold matching.
//!
//! For two concepts, let X and Y be the node sets of one root path of each
//! (each set includes the concept itself). The per-pair degree is
//! `2·|X∩Y| / (|X| + |Y|)`; concepts with several root paths score the
//! maximum over all path pairs. Degrees are exact rationals internally and
//! only rendered as doubles at the boundary, so threshold comparisons never
//! suffer float drift.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

use crate::error::SimilarityError;
use crate::ontology::{ConceptId, ConceptIndex, PairList};

/// A similarity degree in [0, 1], stored as a reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimilarityDegree {
    num: u64,
    den: u64,
}

impl SimilarityDegree {
    pub const ZERO: SimilarityDegree = SimilarityDegree { num: 0, den: 1 };
    pub const ONE: SimilarityDegree = SimilarityDegree { num: 1, den: 1 };

    fn new(num: u64, den: u64) -> Self {
        debug_assert!(den > 0 && num <= den);
        if num == 0 {
            return SimilarityDegree::ZERO;
        }
        let g = gcd(num, den);
        SimilarityDegree {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// The degree as a double-precision real.
    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Exact comparison against a floating-point threshold: true iff the
    /// degree is strictly greater than `floor`.
    pub fn exceeds(&self, floor: f64) -> bool {
        let Some(floor) = BigRational::from_float(floor) else {
            return false;
        };
        Ratio::new(BigInt::from(self.num), BigInt::from(self.den)) > floor
    }
}

impl PartialOrd for SimilarityDegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SimilarityDegree {
    fn cmp(&self, other: &Self) -> Ordering {
        // cross-multiplication avoids overflow for any u64 fractions
        (u128::from(self.num) * u128::from(other.den))
            .cmp(&(u128::from(other.num) * u128::from(self.den)))
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn dice(x: &HashSet<ConceptId>, y: &HashSet<ConceptId>) -> SimilarityDegree {
    let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let intersection = small.iter().filter(|n| large.contains(*n)).count() as u64;
    SimilarityDegree::new(2 * intersection, (x.len() + y.len()) as u64)
}

/// Dice similarity between two indexed concepts: the maximum per-pair
/// degree over all root paths of each. Symmetric; 1 for identical
/// concepts; 0 when no path pair shares a node.
pub fn s_dice(
    index: &ConceptIndex,
    c1: &ConceptId,
    c2: &ConceptId,
) -> Result<SimilarityDegree, SimilarityError> {
    let r1 = index
        .record(c1)
        .ok_or_else(|| SimilarityError::UnknownConcept(c1.clone()))?;
    let r2 = index
        .record(c2)
        .ok_or_else(|| SimilarityError::UnknownConcept(c2.clone()))?;
    let mut best = SimilarityDegree::ZERO;
    for x in r1.node_sets() {
        for y in r2.node_sets() {
            best = best.max(dice(x, y));
        }
    }
    Ok(best)
}

/// Concepts matching a query concept at a floor, sorted by degree
/// descending with ties broken by URI ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchSet {
    matches: Vec<(ConceptId, SimilarityDegree)>,
}

impl MatchSet {
    pub fn matches(&self) -> &[(ConceptId, SimilarityDegree)] {
        &self.matches
    }

    pub fn len(&self) -> usize {
        self.matches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matches.is_empty()
    }

    pub fn contains(&self, concept: &ConceptId) -> bool {
        self.matches.iter().any(|(c, _)| c == concept)
    }

    pub fn degree_of(&self, concept: &ConceptId) -> Option<SimilarityDegree> {
        self.matches
            .iter()
            .find(|(c, _)| c == concept)
            .map(|(_, d)| *d)
    }
}

/// Resolves a query concept and floor into the set of matching concepts.
///
/// Floor semantics: 0 returns every indexed concept, 1 returns exactly the
/// concepts with degree 1, and an interior floor keeps concepts whose
/// degree is strictly greater than it.
pub fn matching_concepts(
    index: &ConceptIndex,
    concept: &ConceptId,
    floor: f64,
) -> Result<MatchSet, SimilarityError> {
    if !(0.0..=1.0).contains(&floor) {
        return Err(SimilarityError::FloorOutOfRange(floor));
    }
    if !index.contains(concept) {
        return Err(SimilarityError::UnknownConcept(concept.clone()));
    }
    let mut matches = Vec::new();
    for candidate in index.concepts() {
        let degree = s_dice(index, concept, candidate)?;
        let keep = if floor == 0.0 {
            true
        } else if floor == 1.0 {
            degree.is_one()
        } else {
            degree.exceeds(floor)
        };
        if keep {
            matches.push((candidate.clone(), degree));
        }
    }
    matches.sort_by(|(ca, da), (cb, db)| db.cmp(da).then_with(|| ca.cmp(cb)));
    Ok(MatchSet { matches })
}

/// Test oracle: the same similarity computed with nothing but the raw pair
/// list. Root paths are enumerated by naive recursion and the maximum
/// per-pair degree is taken directly; no index structures are involved.
pub fn brute_force_s_dice(
    pairs: &PairList,
    c1: &ConceptId,
    c2: &ConceptId,
) -> Result<SimilarityDegree, SimilarityError> {
    let mut parents: HashMap<&ConceptId, Vec<&ConceptId>> = HashMap::new();
    for (child, parent) in pairs.pairs() {
        parents.entry(child).or_default().push(parent);
        parents.entry(parent).or_default();
    }
    for c in [c1, c2] {
        if !parents.contains_key(c) {
            return Err(SimilarityError::UnknownConcept(c.clone()));
        }
    }

    fn enumerate<'a>(
        concept: &'a ConceptId,
        parents: &HashMap<&'a ConceptId, Vec<&'a ConceptId>>,
    ) -> Vec<Vec<&'a ConceptId>> {
        let direct = parents.get(concept).map(Vec::as_slice).unwrap_or(&[]);
        if direct.is_empty() {
            return vec![vec![concept]];
        }
        let mut out = Vec::new();
        for parent in direct {
            for mut path in enumerate(parent, parents) {
                path.push(concept);
                out.push(path);
            }
        }
        out
    }

    let paths1 = enumerate(c1, &parents);
    let paths2 = enumerate(c2, &parents);
    let sets1: Vec<HashSet<&ConceptId>> =
        paths1.iter().map(|p| p.iter().copied().collect()).collect();
    let sets2: Vec<HashSet<&ConceptId>> =
        paths2.iter().map(|p| p.iter().copied().collect()).collect();
    let mut best = SimilarityDegree::ZERO;
    for x in &sets1 {
        for y in &sets2 {
            let intersection = x.intersection(y).count() as u64;
            best = best.max(SimilarityDegree::new(
                2 * intersection,
                (x.len() + y.len()) as u64,
            ));
        }
    }
    Ok(best)
}
